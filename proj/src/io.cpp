#include "relaus/io.hpp"

#include <fstream>
#include <sstream>

#include "relaus/errors.hpp"
#include "relaus/homology.hpp"

namespace relaus {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw input_error(where + ": " + what);
}

const Json& need(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing key \"") + key + "\"");
  return *it;
}

std::string need_str(const Json& j, const char* key, const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_string()) bad(where + "." + key, "expected a string");
  return v.get<std::string>();
}

long need_int(const Json& j, const char* key, const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_number_integer()) bad(where + "." + key, "expected an integer");
  return v.get<long>();
}

const Json& need_array(const Json& j, const char* key,
                       const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_array()) bad(where + "." + key, "expected an array");
  return v;
}

const Json& need_object(const Json& j, const char* key,
                        const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_object()) bad(where + "." + key, "expected an object");
  return v;
}

// the basis element realizing a single-arrow path
int arrow_basis_index(const Algebra& a, int arrow) {
  for (int b = 0; b < a.dim; ++b) {
    const BasisPath& p = a.basis_paths[b];
    if (p.arrows.size() == 1 && p.arrows[0] == arrow) return b;
  }
  throw critical_error("arrow " + std::to_string(arrow) +
                       " has no basis element");
}

Json matrix_rows(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(rational_str(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_rows(const Json& j, int rows, int cols, const FieldSpec& f,
                        const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of rows");
  if (static_cast<int>(j.size()) != rows)
    bad(where, "expected " + std::to_string(rows) + " rows, found " +
                   std::to_string(j.size()));
  Matrix m(f, rows, cols);
  for (int i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array())
      bad(where + "[" + std::to_string(i) + "]", "expected an array");
    if (static_cast<int>(row.size()) != cols)
      bad(where + "[" + std::to_string(i) + "]",
          "expected " + std::to_string(cols) + " entries, found " +
              std::to_string(row.size()));
    for (int c = 0; c < cols; ++c) {
      const Json& cell = row[c];
      if (!cell.is_string())
        bad(where + "[" + std::to_string(i) + "][" + std::to_string(c) + "]",
            "expected a string rational");
      m.at(i, c) = parse_rational(
          cell.get<std::string>(), f,
          where + "[" + std::to_string(i) + "][" + std::to_string(c) + "]");
    }
  }
  return m;
}

FieldSpec field_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  std::string kind = need_str(j, "kind", where);
  if (kind == "rational") return rational_field();
  if (kind == "prime") {
    long p = need_int(j, "p", where);
    if (p < 2) bad(where + ".p", "modulus must be at least 2");
    return prime_field(static_cast<unsigned long>(p));  // primality checked
  }
  bad(where + ".kind", "expected \"rational\" or \"prime\"");
}

Json field_to_json(const FieldSpec& f) {
  Json j;
  if (f.kind == FieldKind::rational) {
    j["kind"] = "rational";
  } else {
    j["kind"] = "prime";
    j["p"] = static_cast<long>(f.p);
  }
  return j;
}

}  // namespace

Scalar parse_rational(const std::string& s, const FieldSpec& f,
                      const std::string& where) {
  size_t i = 0;
  if (i < s.size() && s[i] == '-') ++i;
  size_t digits = 0;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++digits;
  if (digits == 0) bad(where, "not a rational: \"" + s + "\"");
  if (i < s.size()) {
    if (s[i] != '/') bad(where, "not a rational: \"" + s + "\"");
    ++i;
    digits = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++digits;
    if (digits == 0 || i != s.size())
      bad(where, "not a rational: \"" + s + "\"");
  }
  Scalar q(s, 10);
  if (q.get_den() == 0) bad(where, "zero denominator in \"" + s + "\"");
  q.canonicalize();
  return Field(f).reduce(q);
}

std::string rational_str(const Scalar& s) { return s.get_str(); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(what + ": " + e.what());
  }
}

Json algebra_to_json(const AlgebraPresentation& p) {
  Json j;
  j["field"] = field_to_json(p.field);
  Json quiver;
  quiver["vertices"] = p.vertices;
  Json arrows = Json::array();
  for (const ArrowSpec& a : p.arrows) {
    Json ar;
    ar["name"] = a.name;
    ar["from"] = p.vertices[a.source];
    ar["to"] = p.vertices[a.target];
    arrows.push_back(std::move(ar));
  }
  quiver["arrows"] = std::move(arrows);
  j["quiver"] = std::move(quiver);
  Json rels = Json::array();
  for (const Relation& rel : p.relations) {
    Json terms = Json::array();
    for (const RelationTerm& t : rel) {
      Json term;
      term["coeff"] = rational_str(t.coeff);
      Json path = Json::array();
      for (int ai : t.arrows) path.push_back(p.arrows[ai].name);
      term["path"] = std::move(path);
      terms.push_back(std::move(term));
    }
    rels.push_back(std::move(terms));
  }
  j["relations"] = std::move(rels);
  j["nilpotency_bound"] = p.nilpotency_bound;
  return j;
}

AlgebraPresentation algebra_from_json(const Json& j) {
  if (!j.is_object()) bad("algebra", "expected an object");
  AlgebraPresentation p;
  p.field = field_from_json(need_object(j, "field", "algebra"), "algebra.field");
  const Json& quiver = need_object(j, "quiver", "algebra");
  const Json& verts = need_array(quiver, "vertices", "algebra.quiver");
  for (size_t i = 0; i < verts.size(); ++i) {
    if (!verts[i].is_string())
      bad("algebra.quiver.vertices[" + std::to_string(i) + "]",
          "expected a string");
    p.vertices.push_back(verts[i].get<std::string>());
  }
  for (size_t i = 0; i < p.vertices.size(); ++i)
    for (size_t k = i + 1; k < p.vertices.size(); ++k)
      if (p.vertices[i] == p.vertices[k])
        bad("algebra.quiver.vertices", "duplicate vertex \"" + p.vertices[i] + "\"");
  auto vertex_index = [&p](const std::string& name, const std::string& where) {
    for (size_t i = 0; i < p.vertices.size(); ++i)
      if (p.vertices[i] == name) return static_cast<int>(i);
    bad(where, "unknown vertex \"" + name + "\"");
  };
  const Json& arrows = need_array(quiver, "arrows", "algebra.quiver");
  for (size_t i = 0; i < arrows.size(); ++i) {
    std::string where = "algebra.quiver.arrows[" + std::to_string(i) + "]";
    if (!arrows[i].is_object()) bad(where, "expected an object");
    ArrowSpec a;
    a.name = need_str(arrows[i], "name", where);
    a.source = vertex_index(need_str(arrows[i], "from", where), where + ".from");
    a.target = vertex_index(need_str(arrows[i], "to", where), where + ".to");
    p.arrows.push_back(std::move(a));
  }
  for (size_t i = 0; i < p.arrows.size(); ++i)
    for (size_t k = i + 1; k < p.arrows.size(); ++k)
      if (p.arrows[i].name == p.arrows[k].name)
        bad("algebra.quiver.arrows", "duplicate arrow \"" + p.arrows[i].name + "\"");
  auto arrow_index = [&p](const std::string& name, const std::string& where) {
    for (size_t i = 0; i < p.arrows.size(); ++i)
      if (p.arrows[i].name == name) return static_cast<int>(i);
    bad(where, "unknown arrow \"" + name + "\"");
  };
  const Json& rels = need_array(j, "relations", "algebra");
  for (size_t r = 0; r < rels.size(); ++r) {
    std::string rwhere = "algebra.relations[" + std::to_string(r) + "]";
    if (!rels[r].is_array()) bad(rwhere, "expected an array of terms");
    Relation rel;
    for (size_t t = 0; t < rels[r].size(); ++t) {
      std::string twhere = rwhere + "[" + std::to_string(t) + "]";
      const Json& term = rels[r][t];
      if (!term.is_object()) bad(twhere, "expected an object");
      RelationTerm rt;
      rt.coeff = parse_rational(need_str(term, "coeff", twhere), p.field,
                                twhere + ".coeff");
      const Json& path = need_array(term, "path", twhere);
      for (size_t s = 0; s < path.size(); ++s) {
        if (!path[s].is_string())
          bad(twhere + ".path[" + std::to_string(s) + "]", "expected a string");
        rt.arrows.push_back(arrow_index(path[s].get<std::string>(),
                                        twhere + ".path[" + std::to_string(s) + "]"));
      }
      rel.push_back(std::move(rt));
    }
    p.relations.push_back(std::move(rel));
  }
  long nb = need_int(j, "nilpotency_bound", "algebra");
  if (nb < 1) bad("algebra.nilpotency_bound", "must be at least 1");
  p.nilpotency_bound = static_cast<int>(nb);
  return p;
}

AlgPtr load_algebra_text(const std::string& text) {
  return build_algebra(algebra_from_json(parse_json_text(text, "algebra spec")));
}

AlgPtr load_algebra_file(const std::string& path) {
  return load_algebra_text(read_file(path));
}

Json module_to_json(const ModPtr& m) {
  if (!m) throw input_error("module export needs a module");
  const Algebra& a = *m->alg;
  if (!a.quiver)
    throw input_error("module export needs a quiver-presented algebra");
  const AlgebraPresentation& q = *a.quiver;
  int nv = static_cast<int>(q.vertices.size());
  std::vector<Matrix> basis(nv);
  for (int k = 0; k < nv; ++k) basis[k] = row_basis(m->act_idempotent(k));
  Json j;
  j["algebra_digest"] = a.digest;
  Json spaces;
  for (int k = 0; k < nv; ++k) spaces[q.vertices[k]] = basis[k].rows;
  j["spaces"] = std::move(spaces);
  Json arrows;
  for (size_t ai = 0; ai < q.arrows.size(); ++ai) {
    int u = q.arrows[ai].source, v = q.arrows[ai].target;
    Matrix x(a.field, basis[u].rows, basis[v].rows);
    if (basis[u].rows && basis[v].rows) {
      Matrix ba = mul(basis[u], m->action[arrow_basis_index(a, static_cast<int>(ai))]);
      auto sol = solve_left(basis[v], ba);
      if (!sol)
        throw critical_error("module export: arrow image leaves the target "
                             "vertex space");
      x = *sol;
    }
    arrows[q.arrows[ai].name] = matrix_rows(x);
  }
  j["arrows"] = std::move(arrows);
  return j;
}

ModPtr module_from_json(const Json& j, const AlgPtr& a) {
  if (!j.is_object()) bad("module", "expected an object");
  if (!a->quiver) throw input_error("module import needs a quiver-presented algebra");
  const AlgebraPresentation& q = *a->quiver;
  std::string digest = need_str(j, "algebra_digest", "module");
  if (digest != a->digest)
    bad("module.algebra_digest", "module targets a different algebra");
  const Json& spaces = need_object(j, "spaces", "module");
  std::vector<int> dims(q.vertices.size(), 0);
  for (auto it = spaces.begin(); it != spaces.end(); ++it) {
    int k = -1;
    for (size_t v = 0; v < q.vertices.size(); ++v)
      if (q.vertices[v] == it.key()) k = static_cast<int>(v);
    if (k < 0) bad("module.spaces", "unknown vertex \"" + it.key() + "\"");
    if (!it.value().is_number_integer() || it.value().get<long>() < 0)
      bad("module.spaces." + it.key(), "expected a non-negative integer");
    dims[k] = static_cast<int>(it.value().get<long>());
  }
  std::vector<Matrix> mats;
  const Json& arrows = need_object(j, "arrows", "module");
  for (auto it = arrows.begin(); it != arrows.end(); ++it) {
    bool known = false;
    for (const ArrowSpec& ar : q.arrows) known |= ar.name == it.key();
    if (!known) bad("module.arrows", "unknown arrow \"" + it.key() + "\"");
  }
  for (size_t ai = 0; ai < q.arrows.size(); ++ai) {
    const ArrowSpec& ar = q.arrows[ai];
    int r = dims[ar.source], c = dims[ar.target];
    auto it = arrows.find(ar.name);
    if (it == arrows.end()) {
      mats.push_back(Matrix(a->field, r, c));
      continue;
    }
    mats.push_back(
        matrix_from_rows(*it, r, c, a->field, "module.arrows." + ar.name));
  }
  return module_from_arrow_matrices(a, dims, mats);
}

ModPtr load_module_file(const std::string& path, const AlgPtr& a) {
  return module_from_json(parse_json_text(read_file(path), "module spec"), a);
}

Json catalog_to_json(const AlgPtr& a, const Catalog& c) {
  Json j;
  j["algebra_digest"] = a->digest;
  j["method"] = c.method;
  j["exhaustive"] = c.exhaustive;
  Json members = Json::array();
  for (const ModPtr& m : c.members) members.push_back(module_to_json(m));
  j["members"] = std::move(members);
  return j;
}

Catalog catalog_from_json(const Json& j, const AlgPtr& a) {
  if (!j.is_object()) bad("catalog", "expected an object");
  if (need_str(j, "algebra_digest", "catalog") != a->digest)
    bad("catalog.algebra_digest", "catalog targets a different algebra");
  Catalog c;
  c.method = need_str(j, "method", "catalog");
  const Json& ex = need(j, "exhaustive", "catalog");
  if (!ex.is_boolean()) bad("catalog.exhaustive", "expected a boolean");
  c.exhaustive = ex.get<bool>();
  const Json& members = need_array(j, "members", "catalog");
  for (const Json& mj : members) c.members.push_back(module_from_json(mj, a));
  return c;
}

Json json_of(const DimBound& d) {
  Json j;
  switch (d.kind) {
    case DimBound::Kind::finite: j["kind"] = "finite"; break;
    case DimBound::Kind::at_least: j["kind"] = "at_least"; break;
    default: j["kind"] = "infinite";
  }
  j["value"] = d.value;
  return j;
}

Json json_of(const Hypothesis& h) {
  Json j;
  j["status"] = to_string(h.flag);
  j["method"] = h.method;
  return j;
}

Json json_of(const DimWitness& w) {
  Json j;
  j["bound"] = json_of(w.bound);
  j["checked_to"] = w.checked_to;
  j["le_one"] = w.ok;
  return j;
}

Json json_of(const MoritaInvariants& mi) {
  Json j;
  j["simples"] = mi.simples;
  j["projective_dims"] = mi.projective_dims;
  j["cartan"] = mi.cartan;
  j["total_dim"] = mi.total_dim;
  return j;
}

Json json_of(const GorensteinResult& g) {
  Json j;
  j["right_injective_dim"] = json_of(g.right_id);
  j["left_injective_dim"] = json_of(g.left_id);
  j["gorenstein"] = g.gorenstein;
  j["value"] = g.value;
  return j;
}

Json setup_to_json(const SubcategorySetup& s) {
  Json j;
  j["lambda_digest"] = s.lambda->digest;
  j["gamma_digest"] = s.end.gamma->digest;
  Json dims = Json::array();
  for (const ModPtr& m : s.catalog) dims.push_back(m->dim);
  j["catalog_dims"] = std::move(dims);
  Json proj = Json::array();
  for (char c : s.member_is_projective) proj.push_back(static_cast<bool>(c));
  j["member_is_projective"] = std::move(proj);
  Json hyp;
  hyp["contains_projectives"] = json_of(s.contains_projectives);
  hyp["syzygy_closed"] = json_of(s.syzygy_closed);
  hyp["submodule_closed"] = json_of(s.submodule_closed);
  hyp["left_perp"] = json_of(s.left_perp);
  j["hypotheses"] = std::move(hyp);
  j["left_perp_bound"] = s.left_perp_bound;
  return j;
}

Json zeta_to_json(const ZetaPackage& z) {
  Json j;
  j["module_dim"] = z.m->dim;
  j["dims"] = z.dims();
  j["exact"] = z.exact;
  j["ends_mod0"] = z.ends_mod0;
  return j;
}

Json tilting_to_json(const TiltingReport& r) {
  Json j;
  j["candidate_dim"] = r.t->dim;
  j["pd"] = json_of(r.pd);
  j["id"] = json_of(r.id);
  j["ext1_self"] = r.ext1;
  j["rigid"] = r.rigid;
  j["summands"] = r.summands;
  j["simples"] = r.simples;
  j["count_ok"] = r.count_ok;
  j["tilting"] = r.tilting;
  j["cotilting"] = r.cotilting;
  j["verdict"] = r.verdict;
  Json hyp;
  hyp["contains_projectives"] = json_of(r.contains_projectives);
  hyp["syzygy_closed"] = json_of(r.syzygy_closed);
  hyp["submodule_closed"] = json_of(r.submodule_closed);
  hyp["left_perp"] = json_of(r.left_perp);
  j["hypotheses"] = std::move(hyp);
  return j;
}

Json ttf_to_json(const TTFReport& r) {
  Json j;
  j["candidate_dim"] = r.t->dim;
  j["self_injective"] = r.self_injective;
  j["hypotheses_verified"] = r.hypotheses_verified;
  Json samples = Json::array();
  for (const TTFSample& s : r.samples) {
    Json sj;
    sj["label"] = s.label;
    sj["dim"] = s.m->dim;
    sj["pd"] = json_of(s.pd);
    sj["id"] = json_of(s.id);
    sj["in_gen"] = s.in_gen;
    sj["in_cogen"] = s.in_cogen;
    sj["in_mod0"] = s.in_mod0;
    sj["hom_into_p1_zero"] = s.hom_into_p1_zero;
    samples.push_back(std::move(sj));
  }
  j["samples"] = std::move(samples);
  Json tallies = Json::array();
  for (const ImplicationTally& t : r.tallies) {
    Json tj;
    tj["name"] = t.name;
    tj["checked"] = t.checked;
    tj["violated"] = t.violated;
    tallies.push_back(std::move(tj));
  }
  j["tallies"] = std::move(tallies);
  j["counterexamples"] = r.counterexamples;
  return j;
}

Json gprj_to_json(const GprjReport& r) {
  Json j;
  j["gorenstein"] = json_of(r.gdim);
  j["corollary_applies"] = r.corollary_applies;
  j["complete"] = r.complete;
  j["note"] = r.note;
  Json idims = Json::array();
  for (const ModPtr& m : r.indecs) idims.push_back(m->dim);
  j["indec_dims"] = std::move(idims);
  Json gp = Json::array();
  for (char c : r.indec_is_gp) gp.push_back(static_cast<bool>(c));
  j["indec_is_gp"] = std::move(gp);
  Json gdims = Json::array();
  for (const ModPtr& m : r.gprj) gdims.push_back(m->dim);
  j["gprj_dims"] = std::move(gdims);
  j["cm_finite"] = r.cm_finite;
  j["cm_free"] = r.cm_free;
  j["base_invariants"] = json_of(r.base);
  if (r.has_cm_auslander) j["cm_auslander_invariants"] = json_of(r.cm_auslander);
  if (r.setup) j["setup"] = setup_to_json(*r.setup);
  if (r.tilting) j["tilting"] = tilting_to_json(*r.tilting);
  return j;
}

namespace {

std::string yn(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_boolean()) return "?";
  return it->get<bool>() ? "yes" : "no";
}

void markdown_report(std::ostringstream& os, const std::string& key,
                     const Json& r) {
  os << "## " << key << "\n\n";
  if (key == "zeta") {
    os << "- dims " << r["dims"].dump() << "\n";
    os << "- exact: " << yn(r, "exact") << "\n";
    os << "- ends in mod0: " << yn(r, "ends_mod0") << "\n";
  } else if (key == "tilting") {
    os << "- verdict: " << r["verdict"].get<std::string>() << "\n";
    os << "- pd <= 1: " << yn(r["pd"], "le_one")
       << ", id <= 1: " << yn(r["id"], "le_one") << "\n";
    os << "- dim Ext^1(T, T) = " << r["ext1_self"].dump() << "\n";
    os << "- summands " << r["summands"].dump() << " of "
       << r["simples"].dump() << " simples\n";
  } else if (key == "ttf") {
    os << "- samples: " << r["samples"].size() << "\n";
    os << "- self-injective base: " << yn(r, "self_injective") << "\n";
    os << "- hypotheses verified: " << yn(r, "hypotheses_verified") << "\n";
    os << "- counterexamples: " << r["counterexamples"].size() << "\n";
    for (const Json& t : r["tallies"])
      os << "  - " << t["name"].get<std::string>() << ": checked "
         << t["checked"].dump() << ", violated " << t["violated"].dump()
         << "\n";
  } else if (key == "gorenstein") {
    os << "- gorenstein: " << yn(r, "gorenstein") << "\n";
    os << "- value: " << r["value"].dump() << "\n";
  } else if (key == "gprj") {
    os << "- Gorenstein value: " << r["gorenstein"]["value"].dump() << "\n";
    os << "- CM-free: " << yn(r, "cm_free") << "\n";
    os << "- Gorenstein projectives: " << r["gprj_dims"].size() << " of "
       << r["indec_dims"].size() << " indecomposables\n";
    if (r.contains("tilting"))
      os << "- tilting verdict: " << r["tilting"]["verdict"].get<std::string>()
         << "\n";
    if (!r["note"].get<std::string>().empty())
      os << "- note: " << r["note"].get<std::string>() << "\n";
  } else if (key == "catalog") {
    os << "- members: " << r["members"].size() << "\n";
    os << "- method: " << r["method"].get<std::string>() << "\n";
    os << "- exhaustive: " << yn(r, "exhaustive") << "\n";
  } else if (key == "morita" || key == "morita_left" || key == "morita_right") {
    os << "- simples: " << r["simples"].dump() << "\n";
    os << "- projective dims: " << r["projective_dims"].dump() << "\n";
    os << "- total dim: " << r["total_dim"].dump() << "\n";
  } else if (key == "morita_compare") {
    os << "- distinguished: " << yn(r, "distinguished") << "\n";
  } else if (key == "setup") {
    os << "- catalog dims " << r["catalog_dims"].dump() << "\n";
    for (auto it = r["hypotheses"].begin(); it != r["hypotheses"].end(); ++it)
      os << "- " << it.key() << ": "
         << it.value()["status"].get<std::string>() << "\n";
  } else {
    os << "```json\n" << r.dump(2) << "\n```\n";
  }
  os << "\n";
}

}  // namespace

std::string certificate_markdown(const Json& cert) {
  std::ostringstream os;
  os << "# " << cert["tool"]["name"].get<std::string>() << " certificate\n\n";
  os << "- command: " << cert["command"].get<std::string>() << "\n";
  os << "- tool version: " << cert["tool"]["version"].get<std::string>() << "\n";
  os << "- field: " << cert["field"].dump() << "\n";
  os << "- input digest: " << cert["input_digest"].get<std::string>() << "\n";
  os << "- algebra digest: " << cert["algebra_digest"].get<std::string>()
     << "\n\n";
  if (cert.contains("reports"))
    for (auto it = cert["reports"].begin(); it != cert["reports"].end(); ++it)
      markdown_report(os, it.key(), it.value());
  return os.str();
}

}  // namespace relaus
