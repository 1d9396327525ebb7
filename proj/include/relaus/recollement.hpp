#pragma once
#include "relaus/decompose.hpp"

namespace relaus {

enum class Flag { verified, assumed, failed };
std::string to_string(Flag f);

struct Hypothesis {
  Flag flag = Flag::assumed;
  std::string method;
};

// A finite subcategory add(catalog) together with its endomorphism algebra.
// The catalog must contain every indecomposable projective; anything claimed
// about the setup downstream cites the hypothesis flags.
struct SubcategorySetup {
  AlgPtr lambda;
  std::vector<ModPtr> catalog;
  EndData end;                      // end.gamma, idempotent i <-> catalog[i]
  std::vector<char> member_is_projective;
  Hypothesis contains_projectives;  // always verified (build fails otherwise)
  Hypothesis syzygy_closed;
  Hypothesis submodule_closed;
  Hypothesis left_perp;
  int left_perp_bound = 0;
};
using SetupPtr = std::shared_ptr<const SubcategorySetup>;

struct SetupOptions {
  int ext_bound = 6;                  // depth of the perpendicularity test
  std::vector<long> closure_primes = {2, 3};
  long closure_steps = 200000;        // budget per prime for closure checking
  bool check_submodule_closure = true;
};

SetupPtr build_setup(const AlgPtr& lambda, const std::vector<ModPtr>& catalog,
                     const SetupOptions& opt = {});

// Hom(X, m) as a right module over end.gamma, acting by precomposition.
// basis[r] is the hom matrix realizing coordinate r.
struct HomModule {
  ModPtr module;
  std::vector<Matrix> basis;
};
HomModule hom_functor(const SetupPtr& s, const ModPtr& m);
ModPtr v_rho(const SetupPtr& s, const ModPtr& m);

ModPtr v_lambda(const SetupPtr& s, const ModPtr& m);

// the natural map v_lambda(m) -> v_rho(m), with both ends
struct GammaMap {
  ModPtr source, target;
  ModuleMap map;
};
GammaMap gamma_map(const SetupPtr& s, const ModPtr& m);

// cokernel of the evaluated minimal presentation; lands back over lambda
ModPtr v_theta(const SetupPtr& s, const ModPtr& f);

// kernel, image, cokernel of gamma_map with the exactness certificate
struct ZetaPackage {
  ModPtr m;                                   // over lambda
  ModPtr k_m, theta_lambda, zeta_m, theta_rho, l_m;  // over gamma
  ModuleMap gamma;      // theta_lambda -> theta_rho
  ModuleMap k_incl;     // k_m -> theta_lambda
  ModuleMap zeta_epi;   // theta_lambda ->> zeta_m
  ModuleMap zeta_incl;  // zeta_m -> theta_rho
  ModuleMap l_proj;     // theta_rho ->> l_m
  bool exact = false;
  bool ends_mod0 = false;
  std::vector<int> dims() const;  // (K, theta_lambda, zeta, theta_rho, L)
};
ZetaPackage zeta(const SetupPtr& s, const ModPtr& m);

// f vanishes on every projective catalog slot: f * e_i = 0 whenever
// catalog[i] is projective
bool is_mod0(const SetupPtr& s, const ModPtr& f);

}  // namespace relaus
