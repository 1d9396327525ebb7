#pragma once
#include "relaus/module.hpp"

namespace relaus {

// Finite direct sum of the indecomposable projectives e_i A, recorded by the
// idempotent index of each summand.
struct FormalProj {
  std::vector<int> summands;
  int count() const { return static_cast<int>(summands.size()); }
};

// Map between formal projectives.  The component from source summand t into
// target summand u is left multiplication by elems[t][u], an element of
// e_{tgt} A e_{src} in algebra coordinates.
struct FormalElemMap {
  std::vector<std::vector<std::vector<Scalar>>> elems;
};

// ascending algebra basis indices b with e_i b = b
std::vector<int> block_basis(const Algebra& a, int i);

// e_i A as a module; coordinates follow block_basis(a, i)
ModPtr realize_indec_projective(const AlgPtr& a, int i);
// direct sum in summand order; offsets[t] = start of summand t
ModPtr realize_formal(const AlgPtr& a, const FormalProj& p,
                      std::vector<int>* offsets = nullptr);
// matrix of a formal map on the realized modules; offsets as produced by
// realize_formal (one extra trailing total)
Matrix realize_elem_map(const Algebra& a, const FormalProj& src,
                        const FormalProj& tgt, const FormalElemMap& em,
                        const std::vector<int>& src_off,
                        const std::vector<int>& tgt_off);

struct CoverResult {
  FormalProj proj;
  ModPtr realized;
  ModuleMap aug;            // realized -> covered module, onto, kernel in rad
  std::vector<Matrix> gens; // one row per summand: image of its idempotent
};

// Minimal projective cover.  Multiplicities are read off the top; refuses
// algebras where some top(e_i A) is not one-dimensional, since then a basis
// of top(M) e_i no longer counts summands.
CoverResult projective_cover(const ModPtr& m);

// Minimal resolution P_len -> ... -> P_1 -> P_0 -> M, stopping early when a
// kernel vanishes.  diffs[s] : terms[s+1] -> terms[s] in element form;
// syzygies[s] is the kernel after covering syzygies[s-1] (syzygies[0] = ker
// of the augmentation).
struct Resolution {
  AlgPtr alg;
  ModPtr target;
  std::vector<FormalProj> terms;
  std::vector<FormalElemMap> diffs;
  std::vector<ModPtr> syzygies;
  // maps_realized[0]: P_0 -> M, maps_realized[s]: P_s -> P_{s-1}
  std::vector<ModuleMap> maps_realized;
  bool complete = false;  // a syzygy vanished; the resolution is the whole story
};

Resolution resolve(const ModPtr& m, int length);

// dim_k Ext^s(M, N) read off the complex Hom(P_*, N) with
// Hom(e_i A, N) = N e_i.  The resolution must reach level s+1 or be complete.
int ext_dim(const Resolution& r, int s, const ModPtr& n);
int ext_dim(const ModPtr& m, int s, const ModPtr& n);

struct DimBound {
  enum class Kind { finite, at_least, infinite } kind;
  int value = 0;  // the dimension, or the proven lower bound; 0 for infinite
  bool is_finite() const { return kind == Kind::finite; }
  bool le(int b) const { return kind == Kind::finite && value <= b; }
};
std::string to_string(const DimBound& d);

// Largest s with P_s nonzero in the minimal resolution.  Repeating syzygies
// prove infinity; otherwise stopping at the budget yields a lower bound.
DimBound proj_dim(const ModPtr& m, int bound);

// via the dual over the opposite algebra
DimBound inj_dim(const ModPtr& m, int bound, AlgPtr op = nullptr);

struct GorensteinResult {
  DimBound right_id;  // of the regular right module
  DimBound left_id;
  bool gorenstein = false;  // both finite (then they agree)
  int value = 0;
};
GorensteinResult gorenstein_dimension(const AlgPtr& a, int bound);

// Over a Gorenstein algebra: no self-extensions against the regular module in
// degrees 1..checked, which decides Gorenstein projectivity there.  Returns
// the first degree with Ext^i(M, A) nonzero, or 0 if none up to `checked`.
int first_ext_against_regular(const ModPtr& m, int checked);

// Ext^i(m, regular) = 0 for 1 <= i <= bound
bool left_perp_test(const ModPtr& m, int bound);

// Ext-vanishing criterion, sound once the algebra is Gorenstein of dimension
// gdim: checks degrees up to gdim + dim(m) + 1.
bool is_gorenstein_projective(const ModPtr& m, int gdim);

// top of each indecomposable projective, in idempotent order
std::vector<ModPtr> simple_modules(const AlgPtr& a);

}  // namespace relaus
