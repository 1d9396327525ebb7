#pragma once
// shared test fixtures: the small algebras most tests run against
#include "relaus/algebra.hpp"
#include "relaus/module.hpp"

namespace relaus::fixtures {

// k[x]/(x^n), one vertex, one loop
inline AlgebraPresentation truncated_poly_pres(int n, FieldSpec f = rational_field()) {
  AlgebraPresentation p;
  p.field = f;
  p.vertices = {"v"};
  p.arrows = {{"x", 0, 0}};
  Relation r;
  r.push_back({Scalar(1), std::vector<int>(n, 0)});
  p.relations = {r};
  p.nilpotency_bound = n;
  return p;
}

// path algebra of 1 --a--> 2, no relations
inline AlgebraPresentation a2_pres(FieldSpec f = rational_field()) {
  AlgebraPresentation p;
  p.field = f;
  p.vertices = {"1", "2"};
  p.arrows = {{"a", 0, 1}};
  p.nilpotency_bound = 2;
  return p;
}

// k x k, two vertices, no arrows
inline AlgebraPresentation two_points_pres(FieldSpec f = rational_field()) {
  AlgebraPresentation p;
  p.field = f;
  p.vertices = {"1", "2"};
  p.nilpotency_bound = 1;
  return p;
}

inline AlgPtr truncated_poly(int n, FieldSpec f = rational_field()) {
  return build_algebra(truncated_poly_pres(n, f));
}
inline AlgPtr a2(FieldSpec f = rational_field()) { return build_algebra(a2_pres(f)); }
inline AlgPtr two_points(FieldSpec f = rational_field()) {
  return build_algebra(two_points_pres(f));
}

}  // namespace relaus::fixtures
