#pragma once
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relaus/matrix.hpp"

namespace relaus {

struct ArrowSpec {
  std::string name;
  int source = 0;
  int target = 0;
};

// one summand of a relation: coeff * (arrows traversed in list order)
struct RelationTerm {
  Scalar coeff;
  std::vector<int> arrows;
};
using Relation = std::vector<RelationTerm>;

struct AlgebraPresentation {
  FieldSpec field;
  std::vector<std::string> vertices;
  std::vector<ArrowSpec> arrows;
  std::vector<Relation> relations;
  int nilpotency_bound = 0;
};

struct BasisPath {
  int source = 0;
  int target = 0;
  std::vector<int> arrows;  // empty = trivial path at source
};

struct Algebra;
using AlgPtr = std::shared_ptr<const Algebra>;

// Finite-dimensional basic algebra in structure-constant form.  Basis vectors
// carry Peirce block labels (b = e_left * b * e_right) and each primitive
// idempotent is itself a basis vector.
struct Algebra {
  FieldSpec field;
  int dim = 0;
  std::vector<std::string> basis_labels;
  std::vector<std::vector<std::vector<Scalar>>> mult;  // mult[i][j] = b_i * b_j
  std::vector<Scalar> unit;
  std::vector<int> idempotents;   // basis index per primitive idempotent
  std::vector<int> block_left;    // per basis vector
  std::vector<int> block_right;
  Matrix radical_rows;            // rows = basis of rad(A) in algebra coordinates
  bool radical_known = false;
  std::string provenance;         // "quiver", "opposite", "endomorphism"
  std::optional<AlgebraPresentation> quiver;  // set when path structure is available
  std::vector<BasisPath> basis_paths;         // parallel to basis, quiver case
  std::string digest;

  int n_idempotents() const { return static_cast<int>(idempotents.size()); }

  std::vector<Scalar> mul_elems(const std::vector<Scalar>& x,
                                const std::vector<Scalar>& y) const;
  // matrix of v -> v * b_j on algebra coordinates (right regular action)
  Matrix right_mult_matrix(int j) const;
  // matrix of v -> b_i * v
  Matrix left_mult_matrix(int i) const;
  // right/left multiplication by an arbitrary element
  Matrix right_mult_matrix_elem(const std::vector<Scalar>& x) const;
  Matrix left_mult_matrix_elem(const std::vector<Scalar>& x) const;

  std::vector<Scalar> idempotent_element(int k) const;  // coefficient vector of e_k
};

// Builds the admissible quotient kQ/I with basis the surviving paths of
// length < nilpotency_bound.  Verifies admissibility and algebra axioms.
AlgPtr build_algebra(const AlgebraPresentation& pres);

AlgPtr opposite(const AlgPtr& a);

// Construct an algebra directly from structure constants (used for
// endomorphism rings).  Runs the same axiom checks as build_algebra.
AlgPtr make_algebra(FieldSpec field, std::vector<std::string> labels,
                    std::vector<std::vector<std::vector<Scalar>>> mult,
                    std::vector<Scalar> unit, std::vector<int> idempotents,
                    std::string provenance);

// Jacobson radical rows; computed by the regular trace form when not already
// known from a quiver presentation (rational field only).
Matrix radical_of(const Algebra& a);

}  // namespace relaus
