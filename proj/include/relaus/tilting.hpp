#pragma once
#include "relaus/recollement.hpp"

#include <optional>

namespace relaus {

// a pd or id measurement plus the depth it was pushed to
struct DimWitness {
  DimBound bound{DimBound::Kind::at_least, 0};
  int checked_to = 0;
  bool ok = false;  // bound proved <= 1
};

struct TiltingReport {
  ModPtr t;
  DimWitness pd, id;
  int ext1 = -1;  // dim Ext^1(T, T)
  bool rigid = false;
  int summands = 0;  // pairwise non-isomorphic indecomposable summands
  int simples = 0;   // simples of the endomorphism algebra
  bool count_ok = false;
  bool tilting = false, cotilting = false;
  std::string verdict;  // "both", "tilting", "cotilting", "neither"
  // hypothesis provenance carried over from the setup
  Hypothesis contains_projectives, syzygy_closed, submodule_closed, left_perp;
};

// T lives over the setup's endomorphism algebra.  tilting: pd <= 1, rigid,
// as many distinct indecomposable summands as simples.  cotilting reads the
// same facts on the injective side.
TiltingReport check_tilting(const SetupPtr& s, const ModPtr& t, int bound = 8);
// same report, but recomputed through the dual over the opposite algebra and
// cross-checked against the direct route
TiltingReport check_cotilting(const SetupPtr& s, const ModPtr& t,
                              int bound = 8);

struct AuditSample {
  std::string label;
  ModPtr m;
};

struct AuditOptions {
  int min_samples = 20;
  int dim_bound = 8;    // random extensions are kept under this dimension
  int depth_bound = 8;  // resolution depth for pd and id
  unsigned seed = 0xA4D17u;
};

// indecomposable projectives and injectives of the endomorphism algebra, its
// simples, every zeta image with the nonzero kernels and cokernels alongside,
// then random extensions of pool pairs until min_samples is reached
std::vector<AuditSample> default_audit_samples(const SetupPtr& s,
                                               const AuditOptions& opt = {});

struct TTFSample {
  std::string label;
  ModPtr m;
  DimWitness pd, id;
  bool in_gen = false, in_cogen = false, in_mod0 = false;
  bool hom_into_p1_zero = false;  // no homs into any sampled module of pd <= 1
};

struct ImplicationTally {
  std::string name;
  int checked = 0;
  int violated = 0;
};

struct TTFReport {
  ModPtr t;
  bool self_injective = false;       // converse implications only bind then
  bool hypotheses_verified = false;  // projectives + syzygies + perpendicularity
  std::vector<TTFSample> samples;
  std::vector<ImplicationTally> tallies;
  std::vector<std::string> counterexamples;
};

// Audits, on the samples: membership in gen(T) forces id <= 1, membership in
// cogen(T) forces pd <= 1, the converses when the base algebra is
// self-injective, and that vanishing under every projective catalog slot
// forces zero homs into the sampled pd <= 1 modules.  A violation of an
// implication the hypotheses guarantee aborts with a critical error; with
// unverified hypotheses it is recorded and returned.
TTFReport theorem41_audit(const SetupPtr& s, const ModPtr& t,
                          std::vector<AuditSample> samples = {},
                          const AuditOptions& opt = {});

struct MoritaInvariants {
  int simples = 0;
  std::vector<int> projective_dims;      // sorted
  std::vector<std::vector<int>> cartan;  // rows sorted inside, then rows sorted
  int total_dim = 0;
  bool operator==(const MoritaInvariants&) const = default;
};

// invariant under vertex relabeling; equal records mean "not distinguished",
// never an equivalence claim
MoritaInvariants morita_invariants(const AlgPtr& a);

struct GprjReport {
  AlgPtr lambda;
  GorensteinResult gdim;
  bool corollary_applies = false;  // finite Gorenstein dimension <= 1
  bool complete = false;           // enumeration finished inside the budget
  std::string note;
  std::vector<ModPtr> indecs;
  std::vector<char> indec_is_gp;
  std::vector<ModPtr> gprj;
  bool cm_finite = false;
  bool cm_free = false;  // every Gorenstein projective is projective
  SetupPtr setup;        // built over the Gorenstein projective catalog
  std::optional<TiltingReport> tilting;  // of zeta of the sum, when applicable
  MoritaInvariants base;
  MoritaInvariants cm_auslander;
  bool has_cm_auslander = false;
};

// Gorenstein dimension, the Gorenstein projective catalog within budget, the
// CM-free verdict, and when the dimension is at most one the tilting check of
// the intermediate extension of the sum.  Budget exhaustion yields a partial
// report flagged incomplete.
GprjReport gprj_pipeline(const AlgPtr& a, const EnumBudget& budget = {},
                         const SetupOptions& sopt = {});

}  // namespace relaus
