// Acceptance gate: every criterion prints exactly one PASS/FAIL line.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "relaus/homology.hpp"
#include "relaus/io.hpp"

using namespace relaus;
using fixtures::a2;
using fixtures::a2_pres;
using fixtures::truncated_poly;
using fixtures::truncated_poly_pres;
using fixtures::two_points;
using fixtures::two_points_pres;

namespace {

int failures = 0;

void line(int idx, const std::string& what, bool ok,
          const std::string& detail) {
  std::string s = std::string(ok ? "PASS" : "FAIL") + "  criterion " +
                  std::to_string(idx) + ": " + what;
  if (!ok && !detail.empty()) s += "  [" + detail + "]";
  std::puts(s.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <typename F>
void criterion(int idx, const std::string& what, F&& f) {
  std::string detail;
  bool ok = false;
  try {
    ok = f(detail);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  line(idx, what, ok, detail);
}

std::vector<int> vdims(const ModPtr& m) {
  std::vector<int> out;
  for (int k = 0; k < m->alg->n_idempotents(); ++k)
    out.push_back(rank(m->act_idempotent(k)));
  return out;
}

std::vector<ModPtr> sorted_indecs(const AlgPtr& a) {
  Catalog cat = knit_indecomposables(a, EnumBudget{});
  std::sort(cat.members.begin(), cat.members.end(),
            [](const ModPtr& x, const ModPtr& y) {
              if (x->dim != y->dim) return x->dim < y->dim;
              return vdims(x) < vdims(y);
            });
  return cat.members;
}

std::vector<std::vector<int>> shape(const std::vector<ModPtr>& members) {
  std::vector<std::vector<int>> s;
  for (const ModPtr& m : members) s.push_back(vdims(m));
  std::sort(s.begin(), s.end());
  return s;
}

struct FleetEntry {
  std::string name;
  AlgPtr alg;
  AlgebraPresentation pres;  // rational presentation, refielded for oracles
};

std::vector<FleetEntry> fleet() {
  return {{"lambda2", truncated_poly(2), truncated_poly_pres(2)},
          {"lambda3", truncated_poly(3), truncated_poly_pres(3)},
          {"lambda4", truncated_poly(4), truncated_poly_pres(4)},
          {"kA2", a2(), a2_pres()},
          {"kxk", two_points(), two_points_pres()}};
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(RELAUS_BIN) + " " + args + " 2>/dev/null";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string data_path(const std::string& name) {
  return std::string(RELAUS_DATA) + "/" + name;
}

bool closures_verified(const SetupPtr& s, std::string& detail) {
  if (s->contains_projectives.flag != Flag::verified ||
      s->syzygy_closed.flag != Flag::verified ||
      s->submodule_closed.flag != Flag::verified) {
    detail = "closure hypothesis not verified";
    return false;
  }
  return true;
}

bool ac1(std::string& detail) {
  for (int n = 2; n <= 4; ++n) {
    auto t0 = std::chrono::steady_clock::now();
    AlgPtr lam = truncated_poly(n);
    std::vector<ModPtr> cat = sorted_indecs(lam);
    if (static_cast<int>(cat.size()) != n) {
      detail = "n=" + std::to_string(n) + ": found " +
               std::to_string(cat.size()) + " indecomposables";
      return false;
    }
    for (long p : {2L, 3L}) {
      Catalog b = bounded_indecomposables(
          truncated_poly(n, prime_field(p)), n, EnumBudget{64, 200000});
      if (!b.exhaustive || shape(b.members) != shape(cat)) {
        detail = "n=" + std::to_string(n) + ": F" + std::to_string(p) +
                 " oracle disagrees";
        return false;
      }
    }
    SetupPtr s = build_setup(lam, cat);
    TiltingReport r = check_cotilting(s, zeta(s, s->end.x).zeta_m);
    if (!(r.tilting && r.cotilting && r.summands == n && r.simples == n)) {
      detail = "n=" + std::to_string(n) + ": verdict " + r.verdict + ", " +
               std::to_string(r.summands) + " summands";
      return false;
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    if (secs >= 60.0) {
      detail = "n=" + std::to_string(n) + " took " + std::to_string(secs) + "s";
      return false;
    }
  }
  return true;
}

bool ac2(std::string& detail) {
  for (const FleetEntry& fe : fleet()) {
    std::vector<ModPtr> cat = sorted_indecs(fe.alg);
    SetupPtr s = build_setup(fe.alg, cat);
    for (const ModPtr& m : cat) {
      ZetaPackage z = zeta(s, m);
      std::vector<int> d = z.dims();
      bool alt = d[0] - d[1] + d[3] - d[4] == 0;
      if (!(z.exact && z.ends_mod0 && alt)) {
        detail = fe.name + ": module of dim " + std::to_string(m->dim) +
                 (z.exact ? "" : " not exact") +
                 (z.ends_mod0 ? "" : " ends not mod0") +
                 (alt ? "" : " alternating sum nonzero");
        return false;
      }
      if (fe.name == "lambda2" && m->dim == 1 &&
          d != std::vector<int>{1, 2, 1, 2, 1}) {
        detail = "lambda2 simple dims off";
        return false;
      }
    }
  }
  return true;
}

bool ac3(std::string& detail) {
  // pd needs syzygy closure; the rigidity and id bounds additionally need
  // the catalog inside the left perp of the regular module.
  int perp_algebras = 0;
  for (const FleetEntry& fe : fleet()) {
    std::vector<ModPtr> cat = sorted_indecs(fe.alg);
    SetupPtr s = build_setup(fe.alg, cat);
    if (!closures_verified(s, detail)) {
      detail = fe.name + ": " + detail;
      return false;
    }
    if (s->submodule_closed.method.find("F_2") == std::string::npos ||
        s->submodule_closed.method.find("F_3") == std::string::npos) {
      detail = fe.name + ": submodule closure lacks the two-prime run";
      return false;
    }
    if (s->left_perp.flag == Flag::assumed) {
      detail = fe.name + ": left perp hypothesis left undecided";
      return false;
    }
    bool perp = s->left_perp.flag == Flag::verified;
    if (perp) ++perp_algebras;
    AlgPtr op = opposite(s->end.gamma);
    std::vector<ModPtr> zetas;
    for (const ModPtr& m : cat) zetas.push_back(zeta(s, m).zeta_m);
    for (size_t i = 0; i < zetas.size(); ++i) {
      if (!proj_dim(zetas[i], 8).le(1)) {
        detail = fe.name + ": pd > 1 at slot " + std::to_string(i);
        return false;
      }
      if (!perp) continue;
      if (!inj_dim(zetas[i], 8, op).le(1)) {
        detail = fe.name + ": id > 1 at slot " + std::to_string(i);
        return false;
      }
      for (size_t j = 0; j < zetas.size(); ++j)
        if (ext_dim(zetas[i], 1, zetas[j]) != 0) {
          detail = fe.name + ": Ext^1 nonzero at " + std::to_string(i) + "," +
                   std::to_string(j);
          return false;
        }
    }
  }
  if (perp_algebras < 4) {
    detail = "only " + std::to_string(perp_algebras) +
             " algebras satisfy the perp hypothesis";
    return false;
  }
  return true;
}

bool ac4(std::string& detail) {
  for (const FleetEntry& fe : fleet()) {
    std::vector<ModPtr> cat = sorted_indecs(fe.alg);
    SetupPtr s = build_setup(fe.alg, cat);
    std::vector<ModPtr> zetas;
    for (const ModPtr& m : cat) zetas.push_back(zeta(s, m).zeta_m);
    for (size_t i = 0; i < cat.size(); ++i) {
      if (decompose(zetas[i]).pieces.size() != 1) {
        detail = fe.name + ": zeta of slot " + std::to_string(i) +
                 " decomposes";
        return false;
      }
      for (size_t j = 0; j < cat.size(); ++j)
        if (hom_dim(zetas[i], zetas[j]) != hom_dim(cat[i], cat[j])) {
          detail = fe.name + ": hom dims differ at " + std::to_string(i) +
                   "," + std::to_string(j);
          return false;
        }
    }
  }
  return true;
}

bool ac5(std::string& detail) {
  int rc = run_cli("ttf-audit --algebra " + data_path("lambda2.json") +
                   " --out acceptance_ttf.json");
  if (rc != 0) {
    detail = "exit code " + std::to_string(rc);
    return false;
  }
  Json cert = parse_json_text(read_file("acceptance_ttf.json"), "certificate");
  const Json& r = cert["reports"]["ttf"];
  if (r["samples"].size() < 20) {
    detail = "only " + std::to_string(r["samples"].size()) + " samples";
    return false;
  }
  if (!r["counterexamples"].empty()) {
    detail = "counterexamples reported";
    return false;
  }
  for (const Json& t : r["tallies"])
    if (t["violated"].get<int>() != 0 || t["checked"].get<int>() == 0) {
      detail = "tally " + t["name"].get<std::string>() + ": checked " +
               t["checked"].dump() + ", violated " + t["violated"].dump();
      return false;
    }
  return true;
}

bool ac6(std::string& detail) {
  GprjReport ka = gprj_pipeline(a2());
  if (!(ka.gdim.gorenstein && ka.gdim.value == 1 && ka.complete &&
        ka.cm_free && ka.gprj.size() == 2)) {
    detail = "kA2 pipeline off: Gdim " + std::to_string(ka.gdim.value) +
             ", cm_free " + std::to_string(ka.cm_free);
    return false;
  }
  GprjReport p2 = gprj_pipeline(truncated_poly(2));
  GprjReport p3 = gprj_pipeline(truncated_poly(3));
  if (!(p2.has_cm_auslander && p3.has_cm_auslander &&
        p2.cm_auslander.simples == 2 && p3.cm_auslander.simples == 3 &&
        !(p2.cm_auslander == p3.cm_auslander))) {
    detail = "CM Auslander invariants not separated (" +
             std::to_string(p2.cm_auslander.simples) + " vs " +
             std::to_string(p3.cm_auslander.simples) + ")";
    return false;
  }
  AlgPtr aus2 = build_setup(truncated_poly(2),
                            sorted_indecs(truncated_poly(2)))->end.gamma;
  GprjReport ra = gprj_pipeline(aus2);
  int projectives = aus2->n_idempotents();
  if (!(ra.complete && ra.gdim.gorenstein && ra.cm_free &&
        static_cast<int>(ra.gprj.size()) == projectives)) {
    detail = "Aus(lambda2): Gprj " + std::to_string(ra.gprj.size()) + " of " +
             std::to_string(projectives) + " projectives, complete " +
             std::to_string(ra.complete);
    return false;
  }
  return true;
}

bool ac7(std::string& detail) {
  for (const FleetEntry& fe : fleet()) {
    std::vector<ModPtr> cat = sorted_indecs(fe.alg);
    for (unsigned seed = 0; seed < 100; ++seed) {
      RandomSum rs = conjugated_random_sum(cat, 6, 1000 + seed);
      HomMultiplicities hm = multiplicity_by_hom(rs.module, cat);
      if (!hm.in_additive_closure || hm.multiplicity != rs.multiplicity) {
        detail = fe.name + ": hom multiplicities miss at seed " +
                 std::to_string(seed);
        return false;
      }
      Decomposition d = decompose(rs.module);
      std::vector<int> via(cat.size(), 0);
      for (size_t i = 0; i < d.pieces.size(); ++i) {
        bool placed = false;
        for (size_t c = 0; c < cat.size(); ++c)
          if (indec_pair_isomorphic(d.pieces[i], cat[c])) {
            via[c] += d.multiplicity[i];
            placed = true;
            break;
          }
        if (!placed) {
          detail = fe.name + ": stray piece at seed " + std::to_string(seed);
          return false;
        }
      }
      if (via != rs.multiplicity) {
        detail = fe.name + ": decompose multiplicities miss at seed " +
                 std::to_string(seed);
        return false;
      }
    }
    int cap = 0;
    for (const ModPtr& m : cat) cap = std::max(cap, m->dim);
    for (long p : {2L, 3L}) {
      AlgebraPresentation pp = fe.pres;
      pp.field = prime_field(p);
      Catalog b =
          bounded_indecomposables(build_algebra(pp), cap, EnumBudget{64, 200000});
      if (!b.exhaustive || shape(b.members) != shape(cat)) {
        detail = fe.name + ": F" + std::to_string(p) +
                 " enumeration misses the rational catalog";
        return false;
      }
    }
  }
  return true;
}

bool ac8(std::string& detail) {
  std::vector<std::string> runs = {
      "indecomposables --algebra " + data_path("lambda3.json"),
      "indecomposables --algebra " + data_path("lambda4_f2.json") +
          " --max-dim 4 --max-steps 200000",
      "auslander --algebra " + data_path("lambda2.json"),
      "zeta --algebra " + data_path("lambda2.json") + " --module " +
          data_path("S_lambda2.json"),
      "check-tilting --algebra " + data_path("lambda2.json"),
      "ttf-audit --algebra " + data_path("lambda2.json"),
      "gorenstein --algebra " + data_path("kA2.json"),
      "gprj-pipeline --algebra " + data_path("kA2.json"),
      "morita-compare --algebra " + data_path("lambda2.json") + " --other " +
          data_path("lambda3.json")};
  for (size_t i = 0; i < runs.size(); ++i) {
    int rc1 = run_cli(runs[i] + " --out acceptance_a.json");
    int rc2 = run_cli(runs[i] + " --out acceptance_b.json");
    if (rc1 != rc2) {
      detail = "run " + std::to_string(i) + ": exit codes differ";
      return false;
    }
    Json a = parse_json_text(read_file("acceptance_a.json"), "certificate");
    Json b = parse_json_text(read_file("acceptance_b.json"), "certificate");
    if (!a.contains("timing") || !b.contains("timing")) {
      detail = "run " + std::to_string(i) + ": timing block missing";
      return false;
    }
    a.erase("timing");
    b.erase("timing");
    if (a.dump() != b.dump()) {
      detail = "run " + std::to_string(i) + ": certificates differ";
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "truncated polynomial towers: catalog size, prime oracles, "
               "tilting and cotilting verdicts, under sixty seconds each",
            ac1);
  criterion(2, "four-term sequence exact with mod0 ends for every fleet "
               "indecomposable; the dual numbers simple gives (1,2,1,2,1)",
            ac2);
  criterion(3, "under verified closure hypotheses every zeta image has pd "
               "and id at most one and no self-extensions between images",
            ac3);
  criterion(4, "zeta preserves hom dimensions and indecomposability across "
               "the fleet", ac4);
  criterion(5, "torsion audit over the dual numbers: twenty-plus samples, "
               "zero counterexamples, exit code zero", ac5);
  criterion(6, "Gorenstein pipeline: kA2 dimension one and CM-free, CM "
               "Auslander invariants separate the truncations, Aus(lambda2) "
               "has no stray Gorenstein projectives", ac6);
  criterion(7, "decompose and hom-count multiplicities agree on a hundred "
               "random modules per algebra; prime enumerations reproduce "
               "every rational catalog", ac7);
  criterion(8, "every certificate byte-identical across two runs once the "
               "timing block is removed", ac8);
  if (failures) {
    std::printf("%d criterion(s) failing\n", failures);
    return 1;
  }
  std::puts("all acceptance criteria pass");
  return 0;
}
