#pragma once
#include "relaus/algebra.hpp"

namespace relaus {

// Right module given by one action matrix per algebra basis vector; elements
// are row vectors, m * a acts by vector-matrix product.
struct Module {
  AlgPtr alg;
  int dim = 0;
  std::vector<Matrix> action;

  Matrix act_elem(const std::vector<Scalar>& coeffs) const;
  Matrix act_idempotent(int k) const;
};
using ModPtr = std::shared_ptr<const Module>;

struct ModuleMap {
  ModPtr src, tgt;
  Matrix mat;  // src.dim x tgt.dim
};

ModPtr make_module(AlgPtr alg, int dim, std::vector<Matrix> action,
                   bool validate = true);
void validate_module(const Module& m);  // throws naming the violated product
ModPtr zero_module(AlgPtr alg);

ModuleMap make_map(ModPtr src, ModPtr tgt, Matrix mat, bool check = true);
ModuleMap identity_map(ModPtr m);
ModuleMap zero_map(ModPtr src, ModPtr tgt);
ModuleMap compose(const ModuleMap& f, const ModuleMap& g);  // f then g
bool is_intertwiner(const Module& src, const Module& tgt, const Matrix& mat);

// quiver-shaped input: one space per vertex, one matrix per arrow
ModPtr module_from_arrow_matrices(AlgPtr alg, const std::vector<int>& vertex_dims,
                                  const std::vector<Matrix>& arrow_mats);

ModPtr regular_module(AlgPtr alg);
std::vector<ModPtr> regular_projectives(AlgPtr alg);

struct SubQuot {
  ModPtr module;
  ModuleMap map;  // inclusion (into the ambient) or projection (from it)
};

SubQuot kernel(const ModuleMap& f);
SubQuot image(const ModuleMap& f);     // map = inclusion into f.tgt
SubQuot cokernel(const ModuleMap& f);  // map = projection from f.tgt
// corestriction src -> im(f) with im embedded by image(f).map
ModuleMap image_corestriction(const ModuleMap& f, const SubQuot& im);

// submodule of m spanned by the rows (closed under the action first)
SubQuot submodule_from_rows(const ModPtr& m, const Matrix& rows);
SubQuot quotient_by_rows(const ModPtr& m, const Matrix& rows);

struct SumWitness {
  ModPtr sum;
  std::vector<ModuleMap> inj;
  std::vector<ModuleMap> proj;
};
SumWitness direct_sum(AlgPtr alg, const std::vector<ModPtr>& parts);

SubQuot radical_sub(const ModPtr& m);   // m * rad(A), inclusion
SubQuot top_quotient(const ModPtr& m);  // m / m rad(A), projection
SubQuot socle_sub(const ModPtr& m);     // annihilator of rad(A), inclusion

// dual over the opposite algebra; pass op = opposite(m->alg) to avoid a rebuild
ModPtr dual_module(const ModPtr& m, AlgPtr op = nullptr);
ModuleMap dual_map(const ModuleMap& f, ModPtr dual_tgt, ModPtr dual_src);

// basis of Hom(m, n) as matrices, deterministic order
std::vector<Matrix> hom_basis(const ModPtr& m, const ModPtr& n);
int hom_dim(const ModPtr& m, const ModPtr& n);

// m generates n: the evaluation map m^(dim Hom(m,n)) -> n built from a hom
// basis is onto.  cogen: the coevaluation n -> m^(dim Hom(n,m)) is injective.
bool gen_membership(const ModPtr& m, const ModPtr& n);
bool cogen_membership(const ModPtr& m, const ModPtr& n);

// invertible intertwiner if one turns up: scans the hom basis, then seeded
// random combinations.  A returned witness is proof.  When both modules are
// indecomposable the basis scan alone is decisive: there the non-invertible
// homs form a subspace, so if it contains every basis element it contains
// everything and no isomorphism exists.
std::optional<Matrix> find_isomorphism(const ModPtr& m, const ModPtr& n,
                                       int attempts = 64);

// adapted basis grouping each Peirce block m*e_k
struct PeirceDecomp {
  Matrix u;      // rows = adapted basis (old coordinates)
  Matrix u_inv;
  std::vector<int> offset;  // per idempotent, plus final total
};
PeirceDecomp peirce(const Module& m);

}  // namespace relaus
