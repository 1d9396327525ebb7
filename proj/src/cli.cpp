#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include "relaus/errors.hpp"
#include "relaus/homology.hpp"
#include "relaus/io.hpp"
#include "relaus/util.hpp"

using namespace relaus;

namespace {

struct Flags {
  std::string algebra_path;
  std::string catalog = "auto";
  std::string module_path;
  std::string other_path;
  std::string catalog_out;
  std::string out;
  std::string candidate = "zeta-sum";
  int samples = 20;
  bool markdown = false;
  int max_dim = 8;
  long max_steps = 10000;
  int ext_bound = 6;
};

std::vector<int> vdims(const ModPtr& m) {
  std::vector<int> out;
  for (int k = 0; k < m->alg->n_idempotents(); ++k)
    out.push_back(rank(m->act_idempotent(k)));
  return out;
}

Catalog auto_catalog(const AlgPtr& a, const Flags& f) {
  EnumBudget b{f.max_dim, f.max_steps};
  Catalog cat = a->field.kind == FieldKind::rational
                    ? knit_indecomposables(a, b)
                    : bounded_indecomposables(a, f.max_dim, b);
  std::stable_sort(cat.members.begin(), cat.members.end(),
                   [](const ModPtr& x, const ModPtr& y) {
                     if (x->dim != y->dim) return x->dim < y->dim;
                     return vdims(x) < vdims(y);
                   });
  return cat;
}

Catalog get_catalog(const AlgPtr& a, const Flags& f) {
  if (f.catalog == "auto") return auto_catalog(a, f);
  return catalog_from_json(parse_json_text(read_file(f.catalog), "catalog"), a);
}

SetupPtr make_setup(const AlgPtr& a, const Catalog& cat, const Flags& f) {
  SetupOptions so;
  so.ext_bound = f.ext_bound;
  return build_setup(a, cat.members, so);
}

ModPtr pick_candidate(const SetupPtr& s, const Flags& f) {
  if (f.candidate == "regular") return regular_module(s->end.gamma);
  if (f.candidate == "zeta-sum") return zeta(s, s->end.x).zeta_m;
  throw input_error("unknown candidate \"" + f.candidate +
                    "\"; expected zeta-sum or regular");
}

int dispatch(const std::string& cmd, const AlgPtr& a, const Flags& f,
             Json& reports) {
  if (cmd == "indecomposables") {
    Catalog cat = auto_catalog(a, f);
    Json cj = catalog_to_json(a, cat);
    if (!f.catalog_out.empty()) {
      std::ofstream os(f.catalog_out, std::ios::binary);
      if (!os) throw input_error("cannot write " + f.catalog_out);
      os << cj.dump(2) << "\n";
    }
    reports["catalog"] = std::move(cj);
    return 0;
  }
  if (cmd == "auslander") {
    SetupPtr s = make_setup(a, get_catalog(a, f), f);
    reports["setup"] = setup_to_json(*s);
    return 0;
  }
  if (cmd == "zeta") {
    SetupPtr s = make_setup(a, get_catalog(a, f), f);
    ModPtr m = load_module_file(f.module_path, a);
    ZetaPackage z = zeta(s, m);
    reports["setup"] = setup_to_json(*s);
    reports["zeta"] = zeta_to_json(z);
    return z.exact && z.ends_mod0 ? 0 : 2;
  }
  if (cmd == "check-tilting") {
    SetupPtr s = make_setup(a, get_catalog(a, f), f);
    TiltingReport r = check_cotilting(s, pick_candidate(s, f));
    reports["setup"] = setup_to_json(*s);
    reports["tilting"] = tilting_to_json(r);
    return r.tilting ? 0 : 2;
  }
  if (cmd == "ttf-audit") {
    SetupPtr s = make_setup(a, get_catalog(a, f), f);
    ModPtr t = zeta(s, s->end.x).zeta_m;
    AuditOptions opt;
    opt.min_samples = f.samples;
    TTFReport r = theorem41_audit(s, t, {}, opt);
    reports["setup"] = setup_to_json(*s);
    reports["ttf"] = ttf_to_json(r);
    return r.counterexamples.empty() ? 0 : 2;
  }
  if (cmd == "gorenstein") {
    GorensteinResult g = gorenstein_dimension(a, 8);
    reports["gorenstein"] = json_of(g);
    if (g.gorenstein) return 0;
    bool settled = g.right_id.kind == DimBound::Kind::infinite ||
                   g.left_id.kind == DimBound::Kind::infinite;
    return settled ? 2 : 3;
  }
  if (cmd == "gprj-pipeline") {
    SetupOptions so;
    so.ext_bound = f.ext_bound;
    GprjReport r = gprj_pipeline(a, EnumBudget{f.max_dim, f.max_steps}, so);
    reports["gprj"] = gprj_to_json(r);
    if (!r.complete) return 3;
    if (!r.gdim.gorenstein) return 2;
    if (r.tilting && !r.tilting->tilting) return 2;
    return 0;
  }
  if (cmd == "morita-compare") {
    AlgPtr b = load_algebra_file(f.other_path);
    MoritaInvariants left = morita_invariants(a);
    MoritaInvariants right = morita_invariants(b);
    reports["morita_left"] = json_of(left);
    reports["morita_right"] = json_of(right);
    Json cmp;
    cmp["distinguished"] = !(left == right);
    cmp["other_digest"] = b->digest;
    reports["morita_compare"] = std::move(cmp);
    return 0;
  }
  throw input_error("unknown command " + cmd);
}

Json flags_json(const std::string& cmd, const Flags& f) {
  Json j;
  j["algebra"] = f.algebra_path;
  if (cmd == "auslander" || cmd == "zeta" || cmd == "check-tilting" ||
      cmd == "ttf-audit")
    j["catalog"] = f.catalog;
  if (cmd == "zeta") j["module"] = f.module_path;
  if (cmd == "morita-compare") j["other"] = f.other_path;
  if (cmd == "check-tilting") j["candidate"] = f.candidate;
  if (cmd == "ttf-audit") j["samples"] = f.samples;
  j["max_dim"] = f.max_dim;
  j["max_steps"] = f.max_steps;
  j["ext_bound"] = f.ext_bound;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quiver algebra toolkit: relative Auslander algebras, "
               "recollement functors, tilting certificates"};
  app.require_subcommand(1);
  Flags f;

  auto add_common = [&f](CLI::App* c) {
    c->add_option("--algebra", f.algebra_path, "algebra spec file")
        ->required();
    c->add_option("--out", f.out, "write the certificate here");
    c->add_flag("--markdown", f.markdown, "render a human summary");
    c->add_option("--max-dim", f.max_dim, "dimension budget");
    c->add_option("--max-steps", f.max_steps, "enumeration step budget");
    c->add_option("--ext-bound", f.ext_bound, "ext vanishing depth");
  };
  auto add_catalog = [&f](CLI::App* c) {
    c->add_option("--catalog", f.catalog,
                  "catalog file, or auto to enumerate");
  };

  CLI::App* c;
  c = app.add_subcommand("indecomposables",
                         "enumerate the indecomposable modules");
  add_common(c);
  c->add_option("--catalog-out", f.catalog_out, "export the catalog here");
  c = app.add_subcommand("auslander",
                         "build the endomorphism algebra of the catalog sum");
  add_common(c);
  add_catalog(c);
  c = app.add_subcommand("zeta",
                         "intermediate extension of a module, with the "
                         "four-term exactness certificate");
  add_common(c);
  add_catalog(c);
  c->add_option("--module", f.module_path, "module spec file")->required();
  c = app.add_subcommand("check-tilting",
                         "tilting and cotilting verdict for the candidate");
  add_common(c);
  add_catalog(c);
  c->add_option("--candidate", f.candidate, "zeta-sum or regular");
  c = app.add_subcommand("ttf-audit",
                         "sample-based audit of the torsion identities");
  add_common(c);
  add_catalog(c);
  c->add_option("--samples", f.samples, "minimum sample count");
  c = app.add_subcommand("gorenstein", "self-injective dimensions");
  add_common(c);
  c = app.add_subcommand("gprj-pipeline",
                         "Gorenstein projectives, CM-freeness, and the "
                         "dimension-one tilting construction");
  add_common(c);
  c = app.add_subcommand("morita-compare",
                         "relabeling-invariant records of two algebras");
  add_common(c);
  c->add_option("--other", f.other_path, "second algebra spec file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 4;
  }
  std::string cmd = app.get_subcommands().front()->get_name();

  auto t0 = std::chrono::steady_clock::now();
  Json cert;
  int code = 0;
  try {
    std::string raw = read_file(f.algebra_path);
    AlgPtr a = load_algebra_text(raw);
    cert["tool"] = Json{{"name", kToolName}, {"version", kToolVersion}};
    cert["command"] = cmd;
    cert["flags"] = flags_json(cmd, f);
    cert["field"] = algebra_to_json(*a->quiver)["field"];
    cert["input_digest"] = sha256_hex(raw);
    cert["algebra_digest"] = a->digest;
    Json reports;
    code = dispatch(cmd, a, f, reports);
    cert["reports"] = std::move(reports);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind) {
      case Error::Kind::input: return 4;
      case Error::Kind::budget: return 3;
      default: return 5;
    }
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 5;
  }
  std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  cert["timing"] = Json{{"seconds", dt.count()}};

  std::string rendered =
      f.markdown ? certificate_markdown(cert) : cert.dump(2) + "\n";
  if (f.out.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream os(f.out, std::ios::binary);
    if (!os) {
      std::cerr << "error: cannot write " << f.out << "\n";
      return 4;
    }
    os << rendered;
  }
  return code;
}
