#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"

using namespace relaus;
using fixtures::a2;
using fixtures::truncated_poly;
using fixtures::two_points;

TEST_CASE("truncated polynomial algebras") {
  for (int n = 2; n <= 4; ++n) {
    auto a = truncated_poly(n);
    CHECK(a->dim == n);
    CHECK(a->n_idempotents() == 1);
    CHECK(a->basis_labels[0] == "e_v");
    CHECK(a->basis_labels[1] == "x");
    // x^(n-1) * x = 0
    auto p = a->mul_elems(std::vector<Scalar>(a->unit), a->unit);
    CHECK(p == a->unit);
    std::vector<Scalar> xtop(n, Scalar(0));
    xtop[n - 1] = 1;
    std::vector<Scalar> xv(n, Scalar(0));
    xv[1] = 1;
    auto z = a->mul_elems(xtop, xv);
    for (auto& c : z) CHECK(Field::is_zero(c));
    CHECK(radical_of(*a).rows == n - 1);
  }
  // x * x = x^2 inside k[x]/(x^3)
  auto a3 = truncated_poly(3);
  std::vector<Scalar> xv = {Scalar(0), Scalar(1), Scalar(0)};
  auto sq = a3->mul_elems(xv, xv);
  CHECK(Field::is_zero(sq[0]));
  CHECK(Field::is_zero(sq[1]));
  CHECK(sq[2] == Scalar(1));
}

TEST_CASE("path algebra of the arrow") {
  auto a = a2();
  CHECK(a->dim == 3);
  CHECK(a->n_idempotents() == 2);
  CHECK(a->basis_labels == std::vector<std::string>{"e_1", "e_2", "a"});
  // e_1 * a = a, a * e_2 = a, a * e_1 = 0
  auto e1 = a->idempotent_element(0);
  auto e2 = a->idempotent_element(1);
  std::vector<Scalar> av = {Scalar(0), Scalar(0), Scalar(1)};
  CHECK(a->mul_elems(e1, av) == av);
  CHECK(a->mul_elems(av, e2) == av);
  for (auto& c : a->mul_elems(av, e1)) CHECK(Field::is_zero(c));
  CHECK(a->block_left[2] == 0);
  CHECK(a->block_right[2] == 1);
  CHECK(radical_of(*a).rows == 1);
}

TEST_CASE("product of two fields") {
  auto a = two_points();
  CHECK(a->dim == 2);
  CHECK(a->n_idempotents() == 2);
  CHECK(radical_of(*a).rows == 0);
}

TEST_CASE("non-admissible presentations are rejected") {
  // x^3 = 0 declared with bound 2: the path x*x survives
  AlgebraPresentation p = fixtures::truncated_poly_pres(3);
  p.nilpotency_bound = 2;
  CHECK_THROWS_WITH_AS(build_algebra(p), doctest::Contains("x*x"), Error);

  // no relations at all on a quiver with a loop
  AlgebraPresentation q;
  q.field = rational_field();
  q.vertices = {"v"};
  q.arrows = {{"x", 0, 0}};
  q.nilpotency_bound = 2;
  CHECK_THROWS_AS(build_algebra(q), Error);
}

TEST_CASE("presentation validation") {
  AlgebraPresentation p;
  p.field = rational_field();
  p.vertices = {"v", "v"};
  p.nilpotency_bound = 1;
  CHECK_THROWS_AS(build_algebra(p), Error);  // duplicate vertex names

  AlgebraPresentation q = fixtures::a2_pres();
  q.arrows[0].target = 5;
  CHECK_THROWS_AS(build_algebra(q), Error);  // arrow endpoint out of range

  // a relation term shorter than a 2-path is refused
  AlgebraPresentation r = fixtures::a2_pres();
  r.relations = {{{Scalar(1), {0}}}};
  CHECK_THROWS_AS(build_algebra(r), Error);

  // terms with different endpoints cannot share a relation
  AlgebraPresentation s;
  s.field = rational_field();
  s.vertices = {"1", "2", "3", "4"};
  s.arrows = {{"a", 0, 1}, {"b", 1, 2}, {"c", 1, 3}};
  Relation mixed;
  mixed.push_back({Scalar(1), {0, 1}});  // a*b : 1 -> 3
  mixed.push_back({Scalar(1), {0, 2}});  // a*c : 1 -> 4
  s.relations = {mixed};
  s.nilpotency_bound = 3;
  CHECK_THROWS_WITH_AS(build_algebra(s), doctest::Contains("endpoints"), Error);
}

TEST_CASE("relation with several terms") {
  // commuting square: vertices 1,2,3,4, arrows a:1->2 b:2->4 c:1->3 d:3->4,
  // relation ab - cd
  AlgebraPresentation p;
  p.field = rational_field();
  p.vertices = {"1", "2", "3", "4"};
  p.arrows = {{"a", 0, 1}, {"b", 1, 3}, {"c", 0, 2}, {"d", 2, 3}};
  Relation r;
  r.push_back({Scalar(1), {0, 1}});
  r.push_back({Scalar(-1), {2, 3}});
  p.relations = {r};
  p.nilpotency_bound = 3;
  auto a = build_algebra(p);
  // 4 trivial paths + 4 arrows + one surviving length-2 path
  CHECK(a->dim == 9);
  CHECK(radical_of(*a).rows == 5);
  // a*b and c*d act identically
  std::vector<Scalar> ab(a->dim, Scalar(0)), cd(a->dim, Scalar(0));
  for (int i = 0; i < a->dim; ++i) {
    if (a->basis_labels[i] == "a*b") ab[i] = 1;
    if (a->basis_labels[i] == "c*d") cd[i] = 1;
  }
  bool found_ab = false, found_cd = false;
  for (int i = 0; i < a->dim; ++i) {
    found_ab |= !Field::is_zero(ab[i]);
    found_cd |= !Field::is_zero(cd[i]);
  }
  // exactly one of the two length-2 labels survives; the other reduces to it
  CHECK(found_ab != found_cd);
}

TEST_CASE("opposite algebra") {
  auto a = a2();
  auto op = opposite(a);
  CHECK(op->dim == 3);
  CHECK(op->block_left[2] == 1);   // swapped
  CHECK(op->block_right[2] == 0);
  // in the opposite, a * e_1 = a
  std::vector<Scalar> av = {Scalar(0), Scalar(0), Scalar(1)};
  CHECK(op->mul_elems(av, op->idempotent_element(0)) == av);
  // double opposite gives the same structure constants
  auto opop = opposite(op);
  CHECK(opop->digest == a->digest);

  // opposite of the arrow algebra = algebra of the reversed arrow
  AlgebraPresentation rev;
  rev.field = rational_field();
  rev.vertices = {"1", "2"};
  rev.arrows = {{"a", 1, 0}};
  rev.nilpotency_bound = 2;
  CHECK(opposite(a)->digest == build_algebra(rev)->digest);

  // commutative case: opposite is the identity on structure constants
  auto l3 = truncated_poly(3);
  CHECK(opposite(l3)->digest == l3->digest);
}

TEST_CASE("prime field coefficients") {
  auto a = truncated_poly(2, prime_field(2));
  CHECK(a->dim == 2);
  Field fl(a->field);
  // (e + x)^2 = e over F_2
  std::vector<Scalar> s = {Scalar(1), Scalar(1)};
  CHECK(a->mul_elems(s, s) == a->unit);
  CHECK(radical_of(*a).rows == 1);
}

TEST_CASE("structure constant constructor and trace form radical") {
  // rebuild k[x]/(x^2) by hand and let the trace form find the radical
  FieldSpec f = rational_field();
  std::vector<std::vector<std::vector<Scalar>>> mult(2);
  auto vec = [](Scalar a, Scalar b) { return std::vector<Scalar>{a, b}; };
  mult[0] = {vec(1, 0), vec(0, 1)};
  mult[1] = {vec(0, 1), vec(0, 0)};
  auto a = make_algebra(f, {"e", "x"}, mult, vec(1, 0), {0}, "byhand");
  Matrix r = radical_of(*a);
  CHECK(r.rows == 1);
  CHECK(Field::is_zero(r.at(0, 0)));
  CHECK(!Field::is_zero(r.at(0, 1)));

  // a broken unit is refused
  CHECK_THROWS_AS(make_algebra(f, {"e", "x"}, mult, vec(0, 1), {0}, "byhand"),
                  Error);
}

TEST_CASE("regular mult matrices match structure constants") {
  auto a = truncated_poly(3);
  for (int j = 0; j < a->dim; ++j) {
    Matrix rj = a->right_mult_matrix(j);
    for (int i = 0; i < a->dim; ++i)
      for (int c = 0; c < a->dim; ++c) CHECK(rj.at(i, c) == a->mult[i][j][c]);
    Matrix lj = a->left_mult_matrix(j);
    for (int i = 0; i < a->dim; ++i)
      for (int c = 0; c < a->dim; ++c) CHECK(lj.at(i, c) == a->mult[j][i][c]);
  }
}
