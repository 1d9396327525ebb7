#pragma once
#include "relaus/homology.hpp"

namespace relaus {

// End(x) of a direct sum, as a concrete algebra.  Basis elements are grouped
// by Peirce block: the (i,j) block is Hom(parts[j], parts[i]) embedded as
// endomorphisms of x; diagonal blocks start with the identity of the part,
// which realizes the primitive idempotent.  Products compose classically:
// (f g)(v) = f(g(v)).
struct EndData {
  AlgPtr gamma;
  ModPtr x;
  std::vector<ModPtr> parts;
  SumWitness embed;                        // parts into x
  std::vector<Matrix> gamma_basis;         // endomorphism matrix per basis elt
  std::vector<std::pair<int, int>> blocks; // (left, right) per basis elt
};
EndData auslander_algebra(const AlgPtr& a, const std::vector<ModPtr>& parts);

// Full decomposition into indecomposables over the rationals, by splitting
// idempotents of the endomorphism ring.  Every piece carries a locality
// certificate (endomorphism ring modulo radical is one-dimensional) and an
// embedding back into m; the stacked embeddings are checked invertible.
struct Decomposition {
  std::vector<ModPtr> pieces;  // pairwise non-isomorphic
  std::vector<int> multiplicity;
  std::vector<std::pair<int, Matrix>> leaves;  // (piece index, rows into m)
};
Decomposition decompose(const ModPtr& m);

// Isomorphism test for a pair already known indecomposable: a witness from
// find_isomorphism, or a decisive miss.
bool indec_pair_isomorphic(const ModPtr& m, const ModPtr& n);

// Full isomorphism test over the rationals (decompose and match pieces).
bool is_isomorphic(const ModPtr& m, const ModPtr& n);

// D Tr on a minimal projective presentation, and its inverse Tr D.
ModPtr ar_translate(const ModPtr& m);
ModPtr ar_translate_inverse(const ModPtr& m);

struct EnumBudget {
  int max_dim = 64;
  long max_steps = 10000;
};

struct Catalog {
  std::vector<ModPtr> members;
  std::string method;       // "knitting" or "bounded"
  bool exhaustive = false;  // bounded mode proves completeness under its cap
};

// Transitive closure from the projectives and injectives under radicals,
// socle quotients, and both translates; rational field.
Catalog knit_indecomposables(const AlgPtr& a, const EnumBudget& b);

// Exhaustive search over a prime field: every dimension vector with total
// dimension <= cap, every arrow matrix, indecomposability by exhaustive
// idempotent scan of the endomorphism ring.
Catalog bounded_indecomposables(const AlgPtr& a, int total_dim_cap,
                                const EnumBudget& b);

// Multiplicities of catalog members inside m read off hom counts: solve
// x * G = v with G[i][j] = dim Hom(c_i, c_j), v[j] = dim Hom(m, c_j).
// in_additive_closure reports whether a nonnegative integral solution exists
// that also matches total dimension and the transposed hom counts.
struct HomMultiplicities {
  bool in_additive_closure = false;
  std::vector<int> multiplicity;
};
HomMultiplicities multiplicity_by_hom(const ModPtr& m,
                                      const std::vector<ModPtr>& catalog);

// Random member of add(catalog): direct sum with random multiplicities under
// the dimension cap, conjugated by a random basis change.  For sampling in
// cross-oracle checks.
struct RandomSum {
  ModPtr module;
  std::vector<int> multiplicity;
};
RandomSum conjugated_random_sum(const std::vector<ModPtr>& catalog,
                                int total_dim_cap, unsigned seed);

}  // namespace relaus
