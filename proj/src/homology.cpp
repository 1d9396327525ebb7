#include "relaus/homology.hpp"

namespace relaus {

namespace {

}  // namespace

std::vector<int> block_basis(const Algebra& a, int i) {
  std::vector<int> out;
  for (int b = 0; b < a.dim; ++b)
    if (a.block_left[b] == i) out.push_back(b);
  return out;
}

ModPtr realize_indec_projective(const AlgPtr& a, int i) {
  std::vector<int> blk = block_basis(*a, i);
  int d = static_cast<int>(blk.size());
  std::vector<int> pos(a->dim, -1);
  for (int p = 0; p < d; ++p) pos[blk[p]] = p;
  std::vector<Matrix> action;
  for (int c = 0; c < a->dim; ++c) {
    Matrix m(a->field, d, d);
    for (int p = 0; p < d; ++p) {
      const auto& prod = a->mult[blk[p]][c];
      for (int l = 0; l < a->dim; ++l) {
        if (Field::is_zero(prod[l])) continue;
        if (pos[l] < 0) throw critical_error("projective block not closed");
        m.at(p, pos[l]) = prod[l];
      }
    }
    action.push_back(std::move(m));
  }
  return make_module(a, d, std::move(action), false);
}

ModPtr realize_formal(const AlgPtr& a, const FormalProj& p,
                      std::vector<int>* offsets) {
  std::vector<ModPtr> parts;
  for (int i : p.summands) parts.push_back(realize_indec_projective(a, i));
  if (offsets) {
    offsets->clear();
    int off = 0;
    for (const auto& pt : parts) {
      offsets->push_back(off);
      off += pt->dim;
    }
    offsets->push_back(off);
  }
  return direct_sum(a, parts).sum;
}

CoverResult projective_cover(const ModPtr& m) {
  const AlgPtr& a = m->alg;
  int ni = a->n_idempotents();
  for (int i = 0; i < ni; ++i)
    if (top_quotient(realize_indec_projective(a, i)).module->dim != 1)
      throw input_error(
          "projective cover needs one-dimensional simple tops; idempotent " +
          std::to_string(i) + " fails this");

  SubQuot tq = top_quotient(m);
  const Matrix& pr = tq.map.mat;  // m -> top, surjective
  LeftSolver lift(pr);

  FormalProj fp;
  std::vector<Matrix> gens;  // rows in m coordinates
  for (int i = 0; i < ni; ++i) {
    Matrix ti = row_basis(tq.module->act_idempotent(i));
    for (int r = 0; r < ti.rows; ++r) {
      auto x = lift.solve(row_vector(a->field, row_of(ti, r)));
      if (!x) throw critical_error("top projection failed to lift");
      fp.summands.push_back(i);
      gens.push_back(mul(*x, m->act_idempotent(i)));
    }
  }

  std::vector<int> offsets;
  ModPtr realized = realize_formal(a, fp, &offsets);
  Matrix cover(a->field, realized->dim, m->dim);
  for (int t = 0; t < fp.count(); ++t) {
    std::vector<int> blk = block_basis(*a, fp.summands[t]);
    for (size_t p = 0; p < blk.size(); ++p) {
      Matrix img = mul(gens[t], m->action[blk[p]]);
      for (int c = 0; c < m->dim; ++c)
        cover.at(offsets[t] + static_cast<int>(p), c) = img.at(0, c);
    }
  }
  ModuleMap aug = make_map(realized, m, cover);
  if (rank(cover) != m->dim) throw critical_error("projective cover not onto");
  // minimality: the kernel sits inside the radical
  SubQuot ker = kernel(aug);
  if (!mul(ker.map.mat, top_quotient(realized).map.mat).is_zero())
    throw critical_error("projective cover kernel leaks out of the radical");
  return {std::move(fp), std::move(realized), std::move(aug), std::move(gens)};
}

namespace {

// element-form differential from generators of the syzygy pushed into the
// ambient formal projective
FormalElemMap element_form(const Algebra& a, const FormalProj& src,
                           const std::vector<Matrix>& ambient_gens,
                           const FormalProj& tgt,
                           const std::vector<int>& tgt_offsets) {
  FormalElemMap em;
  em.elems.resize(src.count());
  for (int t = 0; t < src.count(); ++t) {
    em.elems[t].reserve(tgt.count());
    for (int u = 0; u < tgt.count(); ++u) {
      std::vector<int> blk = block_basis(a, tgt.summands[u]);
      std::vector<Scalar> elem(a.dim, Scalar(0));
      for (size_t p = 0; p < blk.size(); ++p)
        elem[blk[p]] = ambient_gens[t].at(0, tgt_offsets[u] + static_cast<int>(p));
      em.elems[t].push_back(std::move(elem));
    }
  }
  return em;
}

}  // namespace

// realized matrix of an element-form map; also used to rebuild transposed
// presentations over the opposite algebra
Matrix realize_elem_map(const Algebra& a, const FormalProj& src,
                        const FormalProj& tgt, const FormalElemMap& em,
                        const std::vector<int>& src_off,
                        const std::vector<int>& tgt_off) {
  Matrix out(a.field, src_off.back(), tgt_off.back());
  for (int t = 0; t < src.count(); ++t) {
    std::vector<int> sblk = block_basis(a, src.summands[t]);
    for (int u = 0; u < tgt.count(); ++u) {
      std::vector<int> tblk = block_basis(a, tgt.summands[u]);
      const auto& e = em.elems[t][u];
      for (size_t p = 0; p < sblk.size(); ++p) {
        std::vector<Scalar> bvec(a.dim, Scalar(0));
        bvec[sblk[p]] = Scalar(1);
        auto prod = a.mul_elems(e, bvec);  // e * b, left multiplication
        for (size_t q = 0; q < tblk.size(); ++q)
          out.at(src_off[t] + static_cast<int>(p),
                 tgt_off[u] + static_cast<int>(q)) = prod[tblk[q]];
      }
    }
  }
  return out;
}

Resolution resolve(const ModPtr& m, int length) {
  if (length < 0) throw input_error("resolution length must be nonnegative");
  Resolution r;
  r.alg = m->alg;
  r.target = m;
  ModPtr cur = m;
  std::optional<SubQuot> prev_ker;
  std::optional<FormalProj> prev_proj;
  std::vector<int> prev_off;
  for (int s = 0; s <= length; ++s) {
    CoverResult c = projective_cover(cur);
    std::vector<int> off;
    realize_formal(r.alg, c.proj, &off);
    if (s > 0) {
      // push generators through the inclusion of the previous kernel
      std::vector<Matrix> ambient;
      for (const auto& g : c.gens) ambient.push_back(mul(g, prev_ker->map.mat));
      FormalElemMap em =
          element_form(*r.alg, c.proj, ambient, *prev_proj, prev_off);
      Matrix check = realize_elem_map(*r.alg, c.proj, *prev_proj, em, off, prev_off);
      ModuleMap diff = compose(c.aug, prev_ker->map);
      if (!(check == diff.mat))
        throw critical_error("element form of the differential disagrees");
      r.diffs.push_back(std::move(em));
      r.maps_realized.push_back(std::move(diff));
    } else {
      r.maps_realized.push_back(c.aug);
    }
    r.terms.push_back(c.proj);
    SubQuot k = kernel(c.aug);
    r.syzygies.push_back(k.module);
    if (k.module->dim == 0) {
      r.complete = true;
      break;
    }
    cur = k.module;
    prev_ker = k;
    prev_proj = r.terms.back();
    prev_off = off;
  }
  return r;
}

int ext_dim(const Resolution& r, int s, const ModPtr& n) {
  if (s < 0) throw input_error("ext degree must be nonnegative");
  if (n->alg->digest != r.alg->digest)
    throw input_error("ext against a module over a different algebra");
  int levels = static_cast<int>(r.terms.size());
  if (s >= levels) {
    if (r.complete) return 0;
    throw input_error("resolution too short for this ext degree");
  }
  if (s + 1 >= levels && !r.complete)
    throw input_error("resolution too short for this ext degree");

  // coordinates of N e_k per idempotent
  int ni = r.alg->n_idempotents();
  std::vector<Matrix> basis;
  std::vector<std::unique_ptr<LeftSolver>> coords;
  for (int k = 0; k < ni; ++k) {
    basis.push_back(row_basis(n->act_idempotent(k)));
    coords.push_back(std::make_unique<LeftSolver>(basis.back()));
  }
  auto hom_dim_at = [&](int level) {
    if (level >= levels) return 0;
    int d = 0;
    for (int u : r.terms[level].summands) d += basis[u].rows;
    return d;
  };
  // delta_v : Hom(P_v, N) -> Hom(P_{v+1}, N) as a row-acting matrix
  auto delta = [&](int v) {
    int hv = hom_dim_at(v), hw = hom_dim_at(v + 1);
    Matrix d(n->alg->field, hv, hw);
    if (hv == 0 || hw == 0) return d;
    const FormalElemMap& em = r.diffs[v];  // terms[v+1] -> terms[v]
    int du = 0;
    for (int u = 0; u < r.terms[v].count(); ++u) {
      int ku = r.terms[v].summands[u];
      for (int al = 0; al < basis[ku].rows; ++al) {
        int dt = 0;
        for (int t = 0; t < r.terms[v + 1].count(); ++t) {
          int jt = r.terms[v + 1].summands[t];
          if (basis[jt].rows > 0) {
            Matrix y = mul(row_vector(n->alg->field, row_of(basis[ku], al)),
                           n->act_elem(em.elems[t][u]));
            auto c = coords[jt]->solve(y);
            if (!c) throw critical_error("hom component left its block");
            for (int b = 0; b < basis[jt].rows; ++b)
              d.at(du + al, dt + b) = c->at(0, b);
          }
          dt += basis[jt].rows;
        }
      }
      du += basis[ku].rows;
    }
    return d;
  };
  int hs = hom_dim_at(s);
  int rank_out = (s + 1 < levels) ? rank(delta(s)) : 0;
  int rank_in = (s > 0) ? rank(delta(s - 1)) : 0;
  return hs - rank_out - rank_in;
}

int ext_dim(const ModPtr& m, int s, const ModPtr& n) {
  return ext_dim(resolve(m, s + 1), s, n);
}

std::string to_string(const DimBound& d) {
  switch (d.kind) {
    case DimBound::Kind::finite: return std::to_string(d.value);
    case DimBound::Kind::at_least: return ">=" + std::to_string(d.value);
    default: return "infinite";
  }
}

DimBound proj_dim(const ModPtr& m, int bound) {
  if (bound < 0) throw input_error("bound must be nonnegative");
  if (m->dim == 0) return {DimBound::Kind::finite, 0};
  ModPtr cur = m;
  std::vector<ModPtr> syzygies;
  for (int s = 0; s <= bound; ++s) {
    CoverResult c = projective_cover(cur);
    SubQuot k = kernel(c.aug);
    if (k.module->dim == 0) return {DimBound::Kind::finite, s};
    for (const auto& prior : syzygies)
      if (find_isomorphism(prior, k.module))
        return {DimBound::Kind::infinite, 0};
    syzygies.push_back(k.module);
    cur = k.module;
  }
  return {DimBound::Kind::at_least, bound + 1};
}

DimBound inj_dim(const ModPtr& m, int bound, AlgPtr op) {
  if (!op) op = opposite(m->alg);
  return proj_dim(dual_module(m, op), bound);
}

GorensteinResult gorenstein_dimension(const AlgPtr& a, int bound) {
  AlgPtr op = opposite(a);
  GorensteinResult g{inj_dim(regular_module(a), bound, op),
                     inj_dim(regular_module(op), bound, a), false, 0};
  if (g.right_id.is_finite() && g.left_id.is_finite()) {
    if (g.right_id.value != g.left_id.value)
      throw critical_error("one-sided self-injective dimensions disagree: " +
                           to_string(g.right_id) + " vs " + to_string(g.left_id));
    g.gorenstein = true;
    g.value = g.right_id.value;
  }
  return g;
}

int first_ext_against_regular(const ModPtr& m, int checked) {
  if (m->dim == 0) return 0;
  Resolution r = resolve(m, checked + 1);
  ModPtr reg = regular_module(m->alg);
  for (int i = 1; i <= checked; ++i)
    if (ext_dim(r, i, reg) != 0) return i;
  return 0;
}

bool left_perp_test(const ModPtr& m, int bound) {
  if (bound < 1) throw input_error("perpendicularity bound must be positive");
  return first_ext_against_regular(m, bound) == 0;
}

bool is_gorenstein_projective(const ModPtr& m, int gdim) {
  if (gdim < 0) throw input_error("negative Gorenstein dimension");
  return first_ext_against_regular(m, gdim + m->dim + 1) == 0;
}

std::vector<ModPtr> simple_modules(const AlgPtr& a) {
  std::vector<ModPtr> out;
  for (int i = 0; i < a->n_idempotents(); ++i)
    out.push_back(top_quotient(realize_indec_projective(a, i)).module);
  return out;
}

}  // namespace relaus
