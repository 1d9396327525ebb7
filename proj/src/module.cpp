#include "relaus/module.hpp"

#include <random>

namespace relaus {

namespace {
void check_same_algebra(const AlgPtr& a, const AlgPtr& b, const char* what) {
  if (a->digest != b->digest)
    throw input_error(std::string("modules over different algebras in ") + what);
}
}  // namespace

Matrix Module::act_elem(const std::vector<Scalar>& coeffs) const {
  Field fl(alg->field);
  Matrix m(alg->field, dim, dim);
  for (int j = 0; j < alg->dim; ++j) {
    if (Field::is_zero(coeffs[j])) continue;
    for (int i = 0; i < dim; ++i)
      for (int l = 0; l < dim; ++l) {
        const Scalar& v = action[j].at(i, l);
        if (!Field::is_zero(v)) m.at(i, l) = fl.add(m.at(i, l), fl.mul(coeffs[j], v));
      }
  }
  return m;
}

Matrix Module::act_idempotent(int k) const { return action[alg->idempotents[k]]; }

void validate_module(const Module& m) {
  const Algebra& a = *m.alg;
  if (static_cast<int>(m.action.size()) != a.dim)
    throw input_error("module needs one action matrix per algebra basis vector");
  for (int j = 0; j < a.dim; ++j)
    if (m.action[j].rows != m.dim || m.action[j].cols != m.dim ||
        !(m.action[j].field == a.field))
      throw input_error("action matrix for basis '" + a.basis_labels[j] +
                        "' has wrong shape or field");
  // unit acts as identity
  Matrix u = m.act_elem(a.unit);
  if (!(u == Matrix::identity(a.field, m.dim)))
    throw input_error("unit does not act as the identity");
  // multiplicativity on all basis pairs; this is exactly "the relations hold"
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      Matrix lhs = mul(m.action[i], m.action[j]);
      Matrix rhs = m.act_elem(a.mult[i][j]);
      if (!(lhs == rhs))
        throw input_error("action violates the product '" + a.basis_labels[i] +
                          "*" + a.basis_labels[j] + "'");
    }
}

ModPtr make_module(AlgPtr alg, int dim, std::vector<Matrix> action, bool validate) {
  auto m = std::make_shared<Module>();
  m->alg = std::move(alg);
  m->dim = dim;
  m->action = std::move(action);
  if (validate) validate_module(*m);
  return m;
}

ModPtr zero_module(AlgPtr alg) {
  std::vector<Matrix> act(alg->dim, Matrix(alg->field, 0, 0));
  return make_module(std::move(alg), 0, std::move(act), false);
}

bool is_intertwiner(const Module& src, const Module& tgt, const Matrix& mat) {
  for (int j = 0; j < src.alg->dim; ++j)
    if (!(mul(src.action[j], mat) == mul(mat, tgt.action[j]))) return false;
  return true;
}

ModuleMap make_map(ModPtr src, ModPtr tgt, Matrix mat, bool check) {
  check_same_algebra(src->alg, tgt->alg, "make_map");
  if (mat.rows != src->dim || mat.cols != tgt->dim)
    throw critical_error("map shape mismatch");
  if (check && !is_intertwiner(*src, *tgt, mat))
    throw critical_error("matrix is not an intertwiner");
  return ModuleMap{std::move(src), std::move(tgt), std::move(mat)};
}

ModuleMap identity_map(ModPtr m) {
  Matrix i = Matrix::identity(m->alg->field, m->dim);
  return ModuleMap{m, m, std::move(i)};
}

ModuleMap zero_map(ModPtr src, ModPtr tgt) {
  Matrix z(src->alg->field, src->dim, tgt->dim);
  return ModuleMap{std::move(src), std::move(tgt), std::move(z)};
}

ModuleMap compose(const ModuleMap& f, const ModuleMap& g) {
  if (f.tgt->dim != g.src->dim || f.tgt->alg->digest != g.src->alg->digest)
    throw critical_error("compose shape mismatch");
  return ModuleMap{f.src, g.tgt, mul(f.mat, g.mat)};
}

ModPtr module_from_arrow_matrices(AlgPtr alg, const std::vector<int>& vertex_dims,
                                  const std::vector<Matrix>& arrow_mats) {
  if (!alg->quiver) throw input_error("algebra has no quiver presentation");
  const AlgebraPresentation& q = *alg->quiver;
  if (vertex_dims.size() != q.vertices.size())
    throw input_error("need one dimension per vertex");
  if (arrow_mats.size() != q.arrows.size())
    throw input_error("need one matrix per arrow");
  std::vector<int> off(q.vertices.size() + 1, 0);
  for (size_t v = 0; v < q.vertices.size(); ++v) {
    if (vertex_dims[v] < 0) throw input_error("negative vertex dimension");
    off[v + 1] = off[v] + vertex_dims[v];
  }
  int dim = off.back();
  for (size_t ai = 0; ai < q.arrows.size(); ++ai) {
    const Matrix& m = arrow_mats[ai];
    if (m.rows != vertex_dims[q.arrows[ai].source] ||
        m.cols != vertex_dims[q.arrows[ai].target] || !(m.field == alg->field))
      throw input_error("matrix for arrow '" + q.arrows[ai].name +
                        "' has wrong shape or field");
  }
  // globalize one arrow into the total space
  auto global_arrow = [&](size_t ai) {
    Matrix g(alg->field, dim, dim);
    const ArrowSpec& ar = q.arrows[ai];
    for (int i = 0; i < vertex_dims[ar.source]; ++i)
      for (int j = 0; j < vertex_dims[ar.target]; ++j)
        g.at(off[ar.source] + i, off[ar.target] + j) = arrow_mats[ai].at(i, j);
    return g;
  };
  std::vector<Matrix> action;
  for (const auto& bp : alg->basis_paths) {
    if (bp.arrows.empty()) {
      Matrix p(alg->field, dim, dim);
      for (int i = off[bp.source]; i < off[bp.source + 1]; ++i) p.at(i, i) = 1;
      action.push_back(std::move(p));
    } else {
      Matrix p = global_arrow(bp.arrows[0]);
      for (size_t k = 1; k < bp.arrows.size(); ++k)
        p = mul(p, global_arrow(bp.arrows[k]));
      action.push_back(std::move(p));
    }
  }
  return make_module(alg, dim, std::move(action), true);
}

ModPtr regular_module(AlgPtr alg) {
  std::vector<Matrix> action;
  for (int j = 0; j < alg->dim; ++j) action.push_back(alg->right_mult_matrix(j));
  int d = alg->dim;
  return make_module(std::move(alg), d, std::move(action), false);
}

std::vector<ModPtr> regular_projectives(AlgPtr alg) {
  ModPtr reg = regular_module(alg);
  Field fl(alg->field);
  std::vector<ModPtr> out;
  for (int k = 0; k < alg->n_idempotents(); ++k) {
    Matrix row(alg->field, 1, alg->dim);
    row.at(0, alg->idempotents[k]) = fl.one();
    out.push_back(submodule_from_rows(reg, row).module);
  }
  return out;
}

SubQuot kernel(const ModuleMap& f) {
  Matrix k = row_basis(left_kernel(f.mat));
  LeftSolver ls(k);
  std::vector<Matrix> action;
  for (int j = 0; j < f.src->alg->dim; ++j) {
    auto c = ls.solve(mul(k, f.src->action[j]));
    if (!c) throw critical_error("kernel is not action-closed");
    action.push_back(std::move(*c));
  }
  ModPtr sub = make_module(f.src->alg, k.rows, std::move(action), false);
  return SubQuot{sub, ModuleMap{sub, f.src, k}};
}

SubQuot image(const ModuleMap& f) {
  Matrix b = row_basis(f.mat);
  LeftSolver ls(b);
  std::vector<Matrix> action;
  for (int j = 0; j < f.tgt->alg->dim; ++j) {
    auto c = ls.solve(mul(b, f.tgt->action[j]));
    if (!c) throw critical_error("image is not action-closed");
    action.push_back(std::move(*c));
  }
  ModPtr im = make_module(f.tgt->alg, b.rows, std::move(action), false);
  return SubQuot{im, ModuleMap{im, f.tgt, b}};
}

ModuleMap image_corestriction(const ModuleMap& f, const SubQuot& im) {
  auto p = LeftSolver(im.map.mat).solve(f.mat);
  if (!p) throw critical_error("image corestriction failed");
  return ModuleMap{f.src, im.module, std::move(*p)};
}

SubQuot cokernel(const ModuleMap& f) { return quotient_by_rows(f.tgt, f.mat); }

SubQuot submodule_from_rows(const ModPtr& m, const Matrix& rows) {
  Matrix s = row_basis(rows);
  for (;;) {
    std::vector<Matrix> parts{s};
    for (int j = 0; j < m->alg->dim; ++j) parts.push_back(mul(s, m->action[j]));
    Matrix s2 = row_basis(vstack_all(m->alg->field, parts, m->dim));
    if (s2.rows == s.rows) { s = std::move(s2); break; }
    s = std::move(s2);
  }
  LeftSolver ls(s);
  std::vector<Matrix> action;
  for (int j = 0; j < m->alg->dim; ++j) {
    auto c = ls.solve(mul(s, m->action[j]));
    if (!c) throw critical_error("submodule closure failed");
    action.push_back(std::move(*c));
  }
  ModPtr sub = make_module(m->alg, s.rows, std::move(action), false);
  return SubQuot{sub, ModuleMap{sub, m, s}};
}

SubQuot quotient_by_rows(const ModPtr& m, const Matrix& rows) {
  Field fl(m->alg->field);
  RrefResult rr = rref(rows);
  std::vector<char> is_pivot(m->dim, 0);
  for (int c : rr.pivots) is_pivot[c] = 1;
  std::vector<int> free_cols;
  for (int c = 0; c < m->dim; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  int qdim = static_cast<int>(free_cols.size());
  // projection: reduce each basis vector modulo the row space, keep free coords
  Matrix proj(m->alg->field, m->dim, qdim);
  for (int j = 0; j < m->dim; ++j) {
    if (!is_pivot[j]) {
      for (int c = 0; c < qdim; ++c)
        if (free_cols[c] == j) proj.at(j, c) = fl.one();
      continue;
    }
    int row = -1;
    for (int i = 0; i < rr.rank; ++i)
      if (rr.pivots[i] == j) { row = i; break; }
    for (int c = 0; c < qdim; ++c)
      proj.at(j, c) = fl.neg(rr.reduced.at(row, free_cols[c]));
  }
  // section: free basis vectors
  Matrix sect(m->alg->field, qdim, m->dim);
  for (int c = 0; c < qdim; ++c) sect.at(c, free_cols[c]) = fl.one();
  std::vector<Matrix> action;
  for (int j = 0; j < m->alg->dim; ++j)
    action.push_back(mul(mul(sect, m->action[j]), proj));
  ModPtr quo = make_module(m->alg, qdim, std::move(action), false);
  return SubQuot{quo, ModuleMap{m, quo, proj}};
}

SumWitness direct_sum(AlgPtr alg, const std::vector<ModPtr>& parts) {
  Field fl(alg->field);
  for (const auto& p : parts) check_same_algebra(alg, p->alg, "direct_sum");
  std::vector<int> off{0};
  for (const auto& p : parts) off.push_back(off.back() + p->dim);
  int dim = off.back();
  std::vector<Matrix> action;
  for (int j = 0; j < alg->dim; ++j) {
    Matrix a(alg->field, dim, dim);
    for (size_t t = 0; t < parts.size(); ++t)
      for (int i = 0; i < parts[t]->dim; ++i)
        for (int l = 0; l < parts[t]->dim; ++l)
          a.at(off[t] + i, off[t] + l) = parts[t]->action[j].at(i, l);
    action.push_back(std::move(a));
  }
  SumWitness w;
  w.sum = make_module(alg, dim, std::move(action), false);
  for (size_t t = 0; t < parts.size(); ++t) {
    Matrix in(alg->field, parts[t]->dim, dim);
    Matrix pr(alg->field, dim, parts[t]->dim);
    for (int i = 0; i < parts[t]->dim; ++i) {
      in.at(i, off[t] + i) = fl.one();
      pr.at(off[t] + i, i) = fl.one();
    }
    w.inj.push_back(ModuleMap{parts[t], w.sum, std::move(in)});
    w.proj.push_back(ModuleMap{w.sum, parts[t], std::move(pr)});
  }
  return w;
}

SubQuot radical_sub(const ModPtr& m) {
  Matrix rad = radical_of(*m->alg);
  std::vector<Matrix> parts;
  for (int r = 0; r < rad.rows; ++r)
    parts.push_back(m->act_elem(row_of(rad, r)));  // rows = images of basis
  Matrix rows = vstack_all(m->alg->field, parts, m->dim);
  return submodule_from_rows(m, rows);
}

SubQuot top_quotient(const ModPtr& m) {
  SubQuot r = radical_sub(m);
  return quotient_by_rows(m, r.map.mat);
}

SubQuot socle_sub(const ModPtr& m) {
  Matrix rad = radical_of(*m->alg);
  std::vector<Matrix> stack;
  for (int r = 0; r < rad.rows; ++r)
    stack.push_back(m->act_elem(row_of(rad, r)).transpose());
  if (stack.empty())
    return submodule_from_rows(m, Matrix::identity(m->alg->field, m->dim));
  Matrix big = vstack_all(m->alg->field, stack, m->dim);
  // rows x with x * act(r) = 0 for all r, i.e. big * x^T = 0
  Matrix soc = row_basis(kernel_basis(big).transpose());
  return submodule_from_rows(m, soc);
}

ModPtr dual_module(const ModPtr& m, AlgPtr op) {
  if (!op) op = opposite(m->alg);
  else if (op->dim != m->alg->dim || !(op->field == m->alg->field))
    throw critical_error("dual_module: wrong opposite algebra");
  std::vector<Matrix> action;
  for (int j = 0; j < op->dim; ++j) action.push_back(m->action[j].transpose());
  return make_module(std::move(op), m->dim, std::move(action), false);
}

ModuleMap dual_map(const ModuleMap& f, ModPtr dual_tgt, ModPtr dual_src) {
  return ModuleMap{std::move(dual_tgt), std::move(dual_src), f.mat.transpose()};
}

PeirceDecomp peirce(const Module& m) {
  std::vector<Matrix> blocks;
  PeirceDecomp d;
  d.offset.push_back(0);
  for (int k = 0; k < m.alg->n_idempotents(); ++k) {
    Matrix b = row_basis(m.act_idempotent(k));
    d.offset.push_back(d.offset.back() + b.rows);
    blocks.push_back(std::move(b));
  }
  d.u = vstack_all(m.alg->field, blocks, m.dim);
  if (d.u.rows != m.dim)
    throw critical_error("peirce blocks do not fill the module");
  auto inv = inverse(d.u);
  if (!inv) throw critical_error("peirce basis is singular");
  d.u_inv = std::move(*inv);
  return d;
}

namespace {

std::vector<Matrix> hom_basis_dense(const Module& m, const Module& n) {
  const Algebra& a = *m.alg;
  Field fl(a.field);
  int um = m.dim * n.dim;
  std::vector<Matrix> rows;
  for (int b = 0; b < a.dim; ++b) {
    const Matrix& ab = m.action[b];
    const Matrix& bb = n.action[b];
    for (int i = 0; i < m.dim; ++i)
      for (int j = 0; j < n.dim; ++j) {
        Matrix row(a.field, 1, um);
        for (int k = 0; k < m.dim; ++k)
          if (!Field::is_zero(ab.at(i, k)))
            row.at(0, k * n.dim + j) = fl.add(row.at(0, k * n.dim + j), ab.at(i, k));
        for (int l = 0; l < n.dim; ++l)
          if (!Field::is_zero(bb.at(l, j)))
            row.at(0, i * n.dim + l) = fl.sub(row.at(0, i * n.dim + l), bb.at(l, j));
        if (!row.is_zero()) rows.push_back(std::move(row));
      }
  }
  Matrix eq = vstack_all(a.field, rows, um);
  Matrix k = kernel_basis(eq);
  std::vector<Matrix> basis;
  for (int c = 0; c < k.cols; ++c) {
    Matrix f(a.field, m.dim, n.dim);
    for (int i = 0; i < m.dim; ++i)
      for (int j = 0; j < n.dim; ++j) f.at(i, j) = k.at(i * n.dim + j, c);
    basis.push_back(std::move(f));
  }
  return basis;
}

std::vector<Matrix> hom_basis_blocked(const Module& m, const Module& n) {
  const Algebra& a = *m.alg;
  Field fl(a.field);
  PeirceDecomp pm = peirce(m), pn = peirce(n);
  int nk = a.n_idempotents();
  auto mdim = [&](int k) { return pm.offset[k + 1] - pm.offset[k]; };
  auto ndim = [&](int k) { return pn.offset[k + 1] - pn.offset[k]; };
  std::vector<int> uoff{0};
  for (int k = 0; k < nk; ++k) uoff.push_back(uoff.back() + mdim(k) * ndim(k));
  int total = uoff.back();

  std::vector<char> is_idem(a.dim, 0);
  for (int e : a.idempotents) is_idem[e] = 1;

  std::vector<Matrix> rows;
  for (int b = 0; b < a.dim; ++b) {
    if (is_idem[b]) continue;  // block structure already enforces these
    int l = a.block_left[b], r = a.block_right[b];
    Matrix am = mul(mul(pm.u, m.action[b]), pm.u_inv)
                    .slice(pm.offset[l], pm.offset[l + 1], pm.offset[r], pm.offset[r + 1]);
    Matrix bn = mul(mul(pn.u, n.action[b]), pn.u_inv)
                    .slice(pn.offset[l], pn.offset[l + 1], pn.offset[r], pn.offset[r + 1]);
    // equations A_lr * F_r - F_l * B_lr = 0
    for (int i = 0; i < mdim(l); ++i)
      for (int j = 0; j < ndim(r); ++j) {
        Matrix row(a.field, 1, total);
        bool nz = false;
        for (int k = 0; k < mdim(r); ++k) {
          const Scalar& v = am.at(i, k);
          if (Field::is_zero(v)) continue;
          int idx = uoff[r] + k * ndim(r) + j;
          row.at(0, idx) = fl.add(row.at(0, idx), v);
          nz = true;
        }
        for (int k = 0; k < ndim(l); ++k) {
          const Scalar& v = bn.at(k, j);
          if (Field::is_zero(v)) continue;
          int idx = uoff[l] + i * ndim(l) + k;
          row.at(0, idx) = fl.sub(row.at(0, idx), v);
          nz = true;
        }
        if (nz) rows.push_back(std::move(row));
      }
  }
  Matrix eq = vstack_all(a.field, rows, total);
  Matrix kb = kernel_basis(eq);
  std::vector<Matrix> basis;
  for (int c = 0; c < kb.cols; ++c) {
    Matrix ftilde(a.field, pm.u.rows, pn.u.rows);
    for (int k = 0; k < nk; ++k)
      for (int i = 0; i < mdim(k); ++i)
        for (int j = 0; j < ndim(k); ++j)
          ftilde.at(pm.offset[k] + i, pn.offset[k] + j) =
              kb.at(uoff[k] + i * ndim(k) + j, c);
    basis.push_back(mul(mul(pm.u_inv, ftilde), pn.u));
  }
  return basis;
}

}  // namespace

std::vector<Matrix> hom_basis(const ModPtr& m, const ModPtr& n) {
  check_same_algebra(m->alg, n->alg, "hom_basis");
  const Algebra& a = *m->alg;
  bool blocked = a.n_idempotents() > 1;
  for (int b = 0; b < a.dim && blocked; ++b)
    if (a.block_left[b] < 0 || a.block_right[b] < 0) blocked = false;
  if (blocked) return hom_basis_blocked(*m, *n);
  return hom_basis_dense(*m, *n);
}

int hom_dim(const ModPtr& m, const ModPtr& n) {
  return static_cast<int>(hom_basis(m, n).size());
}

bool gen_membership(const ModPtr& m, const ModPtr& n) {
  if (n->dim == 0) return true;
  auto hb = hom_basis(m, n);
  if (hb.empty()) return false;
  Matrix stacked = vstack_all(m->alg->field, hb, n->dim);
  return rank(stacked) == n->dim;
}

bool cogen_membership(const ModPtr& m, const ModPtr& n) {
  if (n->dim == 0) return true;
  auto hb = hom_basis(n, m);
  if (hb.empty()) return false;
  Matrix wide = hb.front();
  for (size_t i = 1; i < hb.size(); ++i) wide = hstack(wide, hb[i]);
  return rank(wide) == n->dim;
}

std::optional<Matrix> find_isomorphism(const ModPtr& m, const ModPtr& n,
                                       int attempts) {
  if (m->dim != n->dim) return std::nullopt;
  if (m->dim == 0) return Matrix(m->alg->field, 0, 0);
  auto basis = hom_basis(m, n);
  if (basis.empty()) return std::nullopt;
  for (const auto& h : basis)
    if (auto inv = inverse(h); inv) return h;
  if (basis.size() == 1) return std::nullopt;  // one basis element, not invertible
  Field fl(m->alg->field);
  bool prime = m->alg->field.kind == FieldKind::prime;
  long p = prime ? m->alg->field.p : 0;
  std::mt19937 rng(0x5eedu + static_cast<unsigned>(m->dim * 131 + basis.size()));
  for (int t = 0; t < attempts; ++t) {
    Matrix cand(m->alg->field, m->dim, n->dim);
    for (const auto& h : basis) {
      long c = prime ? static_cast<long>(rng() % p)
                     : static_cast<long>(rng() % 7) - 3;
      if (c == 0) continue;
      cand = add(cand, scale(fl.reduce(Scalar(c)), h));
    }
    if (auto inv = inverse(cand); inv) return cand;
  }
  return std::nullopt;
}

}  // namespace relaus
