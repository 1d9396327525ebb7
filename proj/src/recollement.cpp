#include "relaus/recollement.hpp"

#include <algorithm>

namespace relaus {

std::string to_string(Flag f) {
  switch (f) {
    case Flag::verified: return "verified";
    case Flag::assumed: return "assumed";
    default: return "failed";
  }
}

namespace {

Matrix vec_row(const Matrix& m) {
  Matrix out(m.field, 1, m.rows * m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out.at(0, i * m.cols + j) = m.at(i, j);
  return out;
}

std::vector<int> vertex_dims(const ModPtr& m) {
  std::vector<int> out;
  for (int k = 0; k < m->alg->n_idempotents(); ++k)
    out.push_back(rank(m->act_idempotent(k)));
  return out;
}

// Hom(X, m) with its coordinate solver kept around
struct HomData {
  ModPtr module;
  std::vector<Matrix> basis;
  std::unique_ptr<LeftSolver> solver;
  int n() const { return static_cast<int>(basis.size()); }

  std::vector<Scalar> coords(const Matrix& h) const {
    auto x = solver->solve(vec_row(h));
    if (!x) throw critical_error("hom fell outside the computed basis");
    return row_of(*x, 0);
  }
};

HomData hom_data(const SubcategorySetup& s, const ModPtr& m) {
  HomData h;
  const FieldSpec& f = s.lambda->field;
  h.basis = hom_basis(s.end.x, m);
  int n = h.n();
  if (n > 0) {
    std::vector<Matrix> rows;
    for (const auto& b : h.basis) rows.push_back(vec_row(b));
    h.solver = std::make_unique<LeftSolver>(
        vstack_all(f, rows, s.end.x->dim * m->dim));
  }
  std::vector<Matrix> action;
  for (int b = 0; b < s.end.gamma->dim; ++b) {
    Matrix ab(f, n, n);
    for (int r = 0; r < n; ++r) {
      // f . gamma = f after gamma
      auto c = h.coords(mul(s.end.gamma_basis[b], h.basis[r]));
      for (int j = 0; j < n; ++j) ab.at(r, j) = c[j];
    }
    action.push_back(std::move(ab));
  }
  h.module = make_module(s.end.gamma, n, std::move(action));
  return h;
}

// evaluated minimal presentation of m, one homological step
struct LambdaData {
  Resolution res;
  HomData h0;     // Hom(X, P0)
  Matrix ind;     // Hom(X, P1) -> Hom(X, P0), postcomposition with the diff
  SubQuot cok;    // its cokernel: v_lambda(m)
};

LambdaData lambda_data(const SubcategorySetup& s, const ModPtr& m) {
  LambdaData l;
  l.res = resolve(m, 1);
  l.h0 = hom_data(s, l.res.maps_realized[0].src);
  if (l.res.terms.size() >= 2) {
    const ModuleMap& d = l.res.maps_realized[1];
    HomData h1 = hom_data(s, d.src);
    Matrix ind(s.lambda->field, h1.n(), l.h0.n());
    for (int r = 0; r < h1.n(); ++r) {
      auto c = l.h0.coords(mul(h1.basis[r], d.mat));
      for (int j = 0; j < l.h0.n(); ++j) ind.at(r, j) = c[j];
    }
    l.ind = ind;
    l.cok = cokernel(make_map(h1.module, l.h0.module, std::move(ind), true));
  } else {
    l.ind = Matrix(s.lambda->field, 0, l.h0.n());
    l.cok = cokernel(zero_map(zero_module(s.end.gamma), l.h0.module));
  }
  return l;
}

Hypothesis closure_hypothesis(const AlgPtr& lambda,
                              const std::vector<ModPtr>& catalog,
                              const SetupOptions& opt) {
  if (!opt.check_submodule_closure) return {Flag::assumed, "closure not checked"};
  if (!lambda->quiver)
    return {Flag::assumed, "no quiver presentation for a prime-field transfer"};
  int cap = 0;
  for (const auto& c : catalog) cap = std::max(cap, c->dim);
  std::string where;
  for (long p : opt.closure_primes) {
    AlgebraPresentation pres = *lambda->quiver;
    pres.field = prime_field(p);
    AlgPtr ap;
    Catalog full;
    try {
      ap = build_algebra(pres);
      EnumBudget bud;
      bud.max_dim = cap;
      bud.max_steps = opt.closure_steps;
      full = bounded_indecomposables(ap, cap, bud);
    } catch (const Error& e) {
      return {Flag::assumed,
              std::string("prime-field run did not finish: ") + e.what()};
    }
    // transfer the catalog across by vertex dimension vectors
    std::vector<char> used(full.members.size(), 0);
    std::vector<ModPtr> xparts;
    for (const auto& c : catalog) {
      std::vector<int> vd = vertex_dims(c);
      int hit = -1;
      for (size_t j = 0; j < full.members.size(); ++j)
        if (!used[j] && vertex_dims(full.members[j]) == vd) {
          if (hit >= 0) {
            hit = -2;
            break;
          }
          hit = static_cast<int>(j);
        }
      if (hit < 0)
        return {Flag::assumed, "catalog transfer to characteristic " +
                                   std::to_string(p) + " is ambiguous"};
      used[hit] = 1;
      xparts.push_back(full.members[hit]);
    }
    ModPtr xsum = direct_sum(ap, xparts).sum;
    for (size_t j = 0; j < full.members.size(); ++j) {
      if (used[j]) continue;
      // an outsider that embeds into add(catalog) breaks closure
      if (cogen_membership(xsum, full.members[j]))
        return {Flag::failed,
                "characteristic " + std::to_string(p) +
                    ": an indecomposable outside the catalog embeds into its "
                    "additive closure"};
    }
    if (!where.empty()) where += " and ";
    where += "F_" + std::to_string(p);
  }
  return {Flag::verified, "exhaustive indecomposable scan over " + where +
                              " up to dimension " + std::to_string(cap)};
}

}  // namespace

SetupPtr build_setup(const AlgPtr& lambda, const std::vector<ModPtr>& catalog,
                     const SetupOptions& opt) {
  if (lambda->field.kind != FieldKind::rational)
    throw input_error("setups are built over the rational field");
  if (catalog.empty()) throw input_error("empty catalog");
  for (const auto& c : catalog) {
    if (c->alg->digest != lambda->digest)
      throw input_error("catalog member over a different algebra");
    if (c->dim == 0) throw input_error("zero module in the catalog");
    if (decompose(c).pieces.size() != 1)
      throw input_error("catalog member is decomposable");
  }
  for (size_t i = 0; i < catalog.size(); ++i)
    for (size_t j = i + 1; j < catalog.size(); ++j)
      if (indec_pair_isomorphic(catalog[i], catalog[j]))
        throw input_error("catalog repeats an isomorphism class");

  auto s = std::make_shared<SubcategorySetup>();
  s->lambda = lambda;
  s->catalog = catalog;
  s->end = auslander_algebra(lambda, catalog);
  s->member_is_projective.assign(catalog.size(), 0);
  for (int i = 0; i < lambda->n_idempotents(); ++i) {
    ModPtr p = realize_indec_projective(lambda, i);
    int hit = -1;
    for (size_t j = 0; j < catalog.size(); ++j)
      if (indec_pair_isomorphic(p, catalog[j])) {
        hit = static_cast<int>(j);
        break;
      }
    if (hit < 0)
      throw input_error("an indecomposable projective is missing from the catalog");
    s->member_is_projective[hit] = 1;
  }
  s->contains_projectives =
      {Flag::verified, "every indecomposable projective matched to a catalog member"};

  bool syz = true;
  for (const auto& c : catalog) {
    ModPtr omega = resolve(c, 1).syzygies[0];
    if (omega->dim == 0) continue;
    for (const auto& piece : decompose(omega).pieces) {
      bool found = false;
      for (const auto& member : catalog)
        if (indec_pair_isomorphic(piece, member)) {
          found = true;
          break;
        }
      if (!found) syz = false;
    }
  }
  s->syzygy_closed =
      syz ? Hypothesis{Flag::verified, "syzygies decompose into the catalog"}
          : Hypothesis{Flag::failed, "a syzygy has a piece outside the catalog"};

  bool perp = true;
  for (const auto& c : catalog)
    if (!left_perp_test(c, opt.ext_bound)) perp = false;
  s->left_perp_bound = opt.ext_bound;
  s->left_perp =
      perp ? Hypothesis{Flag::verified,
                        "ext into the regular module vanishes up to degree " +
                            std::to_string(opt.ext_bound)}
           : Hypothesis{Flag::failed,
                        "a member has ext against the regular module"};

  s->submodule_closed = closure_hypothesis(lambda, catalog, opt);
  return s;
}

HomModule hom_functor(const SetupPtr& s, const ModPtr& m) {
  HomData h = hom_data(*s, m);
  return {h.module, std::move(h.basis)};
}

ModPtr v_rho(const SetupPtr& s, const ModPtr& m) {
  return hom_data(*s, m).module;
}

ModPtr v_lambda(const SetupPtr& s, const ModPtr& m) {
  return lambda_data(*s, m).cok.module;
}

GammaMap gamma_map(const SetupPtr& s, const ModPtr& m) {
  LambdaData l = lambda_data(*s, m);
  HomData hm = hom_data(*s, m);
  const ModuleMap& aug = l.res.maps_realized[0];
  Matrix post(s->lambda->field, l.h0.n(), hm.n());
  for (int r = 0; r < l.h0.n(); ++r) {
    auto c = hm.coords(mul(l.h0.basis[r], aug.mat));
    for (int j = 0; j < hm.n(); ++j) post.at(r, j) = c[j];
  }
  if (!mul(l.ind, post).is_zero())
    throw critical_error("presentation relations survive postcomposition");
  auto g = Solver(l.cok.map.mat).solve(post);
  if (!g) throw critical_error("factoring through the cokernel failed");
  ModuleMap map = make_map(l.cok.module, hm.module, *g, true);
  return {l.cok.module, hm.module, std::move(map)};
}

ModPtr v_theta(const SetupPtr& s, const ModPtr& f) {
  if (f->alg->digest != s->end.gamma->digest)
    throw input_error("module is not over the setup's endomorphism algebra");
  if (f->dim == 0) return zero_module(s->lambda);
  Resolution r = resolve(f, 1);
  const FormalProj& p0 = r.terms[0];
  std::vector<ModPtr> parts0;
  for (int t = 0; t < p0.count(); ++t)
    parts0.push_back(s->end.parts[p0.summands[t]]);
  SumWitness x0 = direct_sum(s->lambda, parts0);
  if (r.terms.size() < 2) return x0.sum;  // projective over gamma
  const FormalProj& p1 = r.terms[1];
  std::vector<ModPtr> parts1;
  for (int t = 0; t < p1.count(); ++t)
    parts1.push_back(s->end.parts[p1.summands[t]]);
  SumWitness x1 = direct_sum(s->lambda, parts1);

  Matrix d(s->lambda->field, x1.sum->dim, x0.sum->dim);
  for (int t = 0; t < p1.count(); ++t)
    for (int u = 0; u < p0.count(); ++u) {
      const auto& elem = r.diffs[0].elems[t][u];
      Matrix endo(s->lambda->field, s->end.x->dim, s->end.x->dim);
      for (int b = 0; b < s->end.gamma->dim; ++b)
        if (!Field::is_zero(elem[b]))
          endo = add(endo, scale(elem[b], s->end.gamma_basis[b]));
      Matrix comp = mul(mul(s->end.embed.inj[p1.summands[t]].mat, endo),
                        s->end.embed.proj[p0.summands[u]].mat);
      d = add(d, mul(mul(x1.proj[t].mat, comp), x0.inj[u].mat));
    }
  if (!is_intertwiner(*x1.sum, *x0.sum, d))
    throw critical_error("evaluated presentation is not a map");
  return cokernel(make_map(x1.sum, x0.sum, std::move(d), false)).module;
}

std::vector<int> ZetaPackage::dims() const {
  return {k_m->dim, theta_lambda->dim, zeta_m->dim, theta_rho->dim, l_m->dim};
}

ZetaPackage zeta(const SetupPtr& s, const ModPtr& m) {
  GammaMap g = gamma_map(s, m);
  ZetaPackage z;
  z.m = m;
  z.theta_lambda = g.source;
  z.theta_rho = g.target;
  z.gamma = g.map;
  SubQuot k = kernel(g.map);
  SubQuot im = image(g.map);
  SubQuot ck = cokernel(g.map);
  z.k_m = k.module;
  z.zeta_m = im.module;
  z.l_m = ck.module;
  z.k_incl = k.map;
  z.zeta_incl = im.map;
  z.l_proj = ck.map;
  z.zeta_epi = image_corestriction(g.map, im);

  int rg = rank(z.gamma.mat);
  bool ok = mul(z.k_incl.mat, z.gamma.mat).is_zero() &&
            mul(z.gamma.mat, z.l_proj.mat).is_zero() &&
            rg == z.theta_lambda->dim - z.k_m->dim &&
            rg == z.theta_rho->dim - z.l_m->dim && z.zeta_m->dim == rg &&
            z.k_m->dim - z.theta_lambda->dim + z.theta_rho->dim - z.l_m->dim ==
                0 &&
            rank(z.zeta_epi.mat) == z.zeta_m->dim &&
            rank(z.zeta_incl.mat) == z.zeta_m->dim;
  z.exact = ok;
  if (!ok) throw critical_error("four-term sequence failed its certificate");
  z.ends_mod0 = is_mod0(s, z.k_m) && is_mod0(s, z.l_m);
  if (!z.ends_mod0)
    throw critical_error("kernel or cokernel sees a projective slot");
  return z;
}

bool is_mod0(const SetupPtr& s, const ModPtr& f) {
  if (f->alg->digest != s->end.gamma->digest)
    throw input_error("module is not over the setup's endomorphism algebra");
  for (size_t i = 0; i < s->catalog.size(); ++i)
    if (s->member_is_projective[i] &&
        rank(f->act_idempotent(static_cast<int>(i))) != 0)
      return false;
  return true;
}

}  // namespace relaus
