#include "relaus/algebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "relaus/util.hpp"

namespace relaus {

namespace {

constexpr size_t kMaxPaths = 200000;
constexpr int kAxiomCheckDimCap = 48;

std::string path_key(const BasisPath& p) {
  std::string k = "s" + std::to_string(p.source);
  for (int a : p.arrows) k += "." + std::to_string(a);
  return k;
}

void validate_presentation(const AlgebraPresentation& pres) {
  if (pres.vertices.empty()) throw input_error("quiver has no vertices");
  if (pres.nilpotency_bound < 1)
    throw input_error("nilpotency_bound must be at least 1");
  {
    auto vs = pres.vertices;
    std::sort(vs.begin(), vs.end());
    if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
      throw input_error("duplicate vertex name");
  }
  std::vector<std::string> an;
  for (const auto& a : pres.arrows) {
    if (a.name.empty()) throw input_error("arrow with empty name");
    if (a.source < 0 || a.source >= static_cast<int>(pres.vertices.size()) ||
        a.target < 0 || a.target >= static_cast<int>(pres.vertices.size()))
      throw input_error("arrow '" + a.name + "' has out-of-range endpoint");
    an.push_back(a.name);
  }
  std::sort(an.begin(), an.end());
  if (std::adjacent_find(an.begin(), an.end()) != an.end())
    throw input_error("duplicate arrow name");
  for (size_t ri = 0; ri < pres.relations.size(); ++ri) {
    const auto& rel = pres.relations[ri];
    int src = -1, tgt = -1;
    bool have_ends = false;
    for (const auto& term : rel) {
      if (term.arrows.size() < 2)
        throw input_error("relation " + std::to_string(ri) +
                          " has a term of length < 2");
      for (size_t k = 0; k < term.arrows.size(); ++k) {
        int a = term.arrows[k];
        if (a < 0 || a >= static_cast<int>(pres.arrows.size()))
          throw input_error("relation " + std::to_string(ri) +
                            " refers to a missing arrow");
        if (k > 0 && pres.arrows[term.arrows[k - 1]].target != pres.arrows[a].source)
          throw input_error("relation " + std::to_string(ri) +
                            " has a non-composable path");
      }
      int s = pres.arrows[term.arrows.front()].source;
      int t = pres.arrows[term.arrows.back()].target;
      if (!have_ends) {
        src = s;
        tgt = t;
        have_ends = true;
      } else if (s != src || t != tgt) {
        throw input_error("relation " + std::to_string(ri) +
                          " mixes terms with different endpoints");
      }
    }
  }
}

struct PathTable {
  std::vector<BasisPath> paths;       // ordered by length, then discovery
  std::vector<int> length_start;      // index of first path of each length
  std::map<std::string, int> index;

  int find(const BasisPath& p) const {
    auto it = index.find(path_key(p));
    return it == index.end() ? -1 : it->second;
  }
};

PathTable enumerate_paths(const AlgebraPresentation& pres, int max_len) {
  PathTable t;
  std::vector<BasisPath> frontier;
  for (int v = 0; v < static_cast<int>(pres.vertices.size()); ++v)
    frontier.push_back(BasisPath{v, v, {}});
  for (int len = 0; len <= max_len; ++len) {
    t.length_start.push_back(static_cast<int>(t.paths.size()));
    for (auto& p : frontier) {
      t.index[path_key(p)] = static_cast<int>(t.paths.size());
      t.paths.push_back(p);
      if (t.paths.size() > kMaxPaths)
        throw budget_error("path space exceeds " + std::to_string(kMaxPaths) +
                           " paths");
    }
    if (len == max_len) break;
    std::vector<BasisPath> next;
    for (const auto& p : frontier)
      for (int ai = 0; ai < static_cast<int>(pres.arrows.size()); ++ai)
        if (pres.arrows[ai].source == p.target) {
          BasisPath q = p;
          q.arrows.push_back(ai);
          q.target = pres.arrows[ai].target;
          next.push_back(std::move(q));
        }
    frontier = std::move(next);
  }
  t.length_start.push_back(static_cast<int>(t.paths.size()));
  return t;
}

std::string path_label(const AlgebraPresentation& pres, const BasisPath& p) {
  if (p.arrows.empty()) return "e_" + pres.vertices[p.source];
  std::string s;
  for (size_t i = 0; i < p.arrows.size(); ++i) {
    if (i) s += "*";
    s += pres.arrows[p.arrows[i]].name;
  }
  return s;
}

// rows spanning the image of the relation ideal inside span(paths of length <= cap)
Matrix ideal_rows(const AlgebraPresentation& pres, const PathTable& t, int cap,
                  const Field& fl) {
  int ncols = t.length_start[cap + 1];
  std::vector<Matrix> rows;
  Matrix out(pres.field, 0, ncols);
  for (const auto& rel : pres.relations) {
    if (rel.empty()) continue;
    int src = pres.arrows[rel.front().arrows.front()].source;
    int tgt = pres.arrows[rel.front().arrows.back()].target;
    size_t minlen = SIZE_MAX;
    for (const auto& term : rel) minlen = std::min(minlen, term.arrows.size());
    for (int ui = 0; ui < ncols; ++ui) {
      const BasisPath& u = t.paths[ui];
      if (u.target != src) continue;
      for (int vi = 0; vi < ncols; ++vi) {
        const BasisPath& v = t.paths[vi];
        if (v.source != tgt) continue;
        if (u.arrows.size() + v.arrows.size() + minlen > static_cast<size_t>(cap))
          continue;
        Matrix row(pres.field, 1, ncols);
        bool nonzero = false;
        for (const auto& term : rel) {
          size_t len = u.arrows.size() + term.arrows.size() + v.arrows.size();
          if (len > static_cast<size_t>(cap)) continue;
          BasisPath full;
          full.source = u.source;
          full.target = v.target;
          full.arrows = u.arrows;
          full.arrows.insert(full.arrows.end(), term.arrows.begin(), term.arrows.end());
          full.arrows.insert(full.arrows.end(), v.arrows.begin(), v.arrows.end());
          int id = t.find(full);
          if (id < 0) throw critical_error("path closure bookkeeping broken");
          Scalar c = fl.reduce(term.coeff);
          if (Field::is_zero(c)) continue;
          row.at(0, id) = fl.add(row.at(0, id), c);
          nonzero = true;
        }
        if (nonzero && !row.is_zero()) rows.push_back(std::move(row));
      }
    }
  }
  return vstack_all(pres.field, rows, ncols);
}

bool row_in_span(const RrefResult& rr, Matrix row, const Field& fl) {
  // reduce against rref rows; zero remainder = membership
  for (int i = 0; i < rr.rank; ++i) {
    int c = rr.pivots[i];
    const Scalar& x = row.at(0, c);
    if (Field::is_zero(x)) continue;
    Scalar t = x;
    for (int j = 0; j < row.cols; ++j) {
      const Scalar& rv = rr.reduced.at(i, j);
      if (Field::is_zero(rv)) continue;
      row.at(0, j) = fl.sub(row.at(0, j), fl.mul(t, rv));
    }
  }
  return row.is_zero();
}

void run_axiom_checks(const Algebra& a) {
  Field fl(a.field);
  if (static_cast<int>(a.unit.size()) != a.dim)
    throw critical_error("unit vector has wrong length");
  std::vector<Matrix> rm(a.dim), lm(a.dim);
  for (int j = 0; j < a.dim; ++j) {
    rm[j] = a.right_mult_matrix(j);
    lm[j] = a.left_mult_matrix(j);
  }
  Matrix unit = row_vector(a.field, a.unit);
  for (int j = 0; j < a.dim; ++j) {
    // 1 * b_j = b_j and b_j * 1 = b_j
    Matrix lhs = mul(unit, rm[j]);
    Matrix rhs = mul(unit, lm[j]);
    for (int l = 0; l < a.dim; ++l) {
      Scalar want = l == j ? fl.one() : fl.zero();
      if (!Field::eq(lhs.at(0, l), want) || !Field::eq(rhs.at(0, l), want))
        throw critical_error("unit axiom fails at basis " + std::to_string(j));
    }
  }
  if (a.dim <= kAxiomCheckDimCap) {
    for (int i = 0; i < a.dim; ++i)
      for (int j = 0; j < a.dim; ++j) {
        Matrix bij = row_vector(a.field, a.mult[i][j]);
        for (int k = 0; k < a.dim; ++k) {
          Matrix l = mul(bij, rm[k]);              // (b_i b_j) b_k
          Matrix r = mul(row_vector(a.field, a.mult[j][k]), lm[i]);  // b_i (b_j b_k)
          if (!(l == r))
            throw critical_error("associativity fails at (" + std::to_string(i) +
                                 "," + std::to_string(j) + "," + std::to_string(k) +
                                 ")");
        }
      }
  }
  // idempotent system: orthogonal, idempotent, sums to 1
  std::vector<Scalar> sum(a.dim, fl.zero());
  for (size_t p = 0; p < a.idempotents.size(); ++p) {
    int bp = a.idempotents[p];
    for (size_t q = 0; q < a.idempotents.size(); ++q) {
      int bq = a.idempotents[q];
      const auto& prod = a.mult[bp][bq];
      for (int l = 0; l < a.dim; ++l) {
        Scalar want = (p == q && l == bp) ? fl.one() : fl.zero();
        if (!Field::eq(prod[l], want))
          throw critical_error("idempotent system broken");
      }
    }
    sum[bp] = fl.add(sum[bp], fl.one());
  }
  for (int l = 0; l < a.dim; ++l)
    if (!Field::eq(sum[l], a.unit[l]))
      throw critical_error("idempotents do not sum to the unit");
  // peirce labels
  for (int b = 0; b < a.dim; ++b) {
    int bl = a.block_left[b], br = a.block_right[b];
    if (bl < 0 || br < 0) continue;
    Matrix v(a.field, 1, a.dim);
    v.at(0, b) = fl.one();
    Matrix w = mul(mul(v, lm[a.idempotents[bl]]), rm[a.idempotents[br]]);
    if (!(w == v)) throw critical_error("peirce label broken at basis " + std::to_string(b));
  }
}

std::string structural_digest(const Algebra& a) {
  std::ostringstream os;
  Field fl(a.field);
  os << "alg|" << field_label(a.field) << "|dim " << a.dim << "|unit";
  for (const auto& c : a.unit) os << " " << fl.to_string(c);
  os << "|idem";
  for (int i : a.idempotents) os << " " << i;
  os << "|mult";
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      os << "|" << i << "," << j << ":";
      for (const auto& c : a.mult[i][j]) os << " " << fl.to_string(c);
    }
  return sha256_hex(os.str());
}

}  // namespace

std::vector<Scalar> Algebra::mul_elems(const std::vector<Scalar>& x,
                                       const std::vector<Scalar>& y) const {
  Field fl(field);
  std::vector<Scalar> out(dim, fl.zero());
  for (int i = 0; i < dim; ++i) {
    if (Field::is_zero(x[i])) continue;
    for (int j = 0; j < dim; ++j) {
      if (Field::is_zero(y[j])) continue;
      Scalar c = fl.mul(x[i], y[j]);
      const auto& prod = mult[i][j];
      for (int l = 0; l < dim; ++l)
        if (!Field::is_zero(prod[l])) out[l] = fl.add(out[l], fl.mul(c, prod[l]));
    }
  }
  return out;
}

Matrix Algebra::right_mult_matrix(int j) const {
  Matrix m(field, dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int l = 0; l < dim; ++l) m.at(i, l) = mult[i][j][l];
  return m;
}

Matrix Algebra::left_mult_matrix(int i) const {
  Matrix m(field, dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int l = 0; l < dim; ++l) m.at(j, l) = mult[i][j][l];
  return m;
}

Matrix Algebra::right_mult_matrix_elem(const std::vector<Scalar>& x) const {
  Field fl(field);
  Matrix m(field, dim, dim);
  for (int j = 0; j < dim; ++j) {
    if (Field::is_zero(x[j])) continue;
    for (int i = 0; i < dim; ++i)
      for (int l = 0; l < dim; ++l)
        if (!Field::is_zero(mult[i][j][l]))
          m.at(i, l) = fl.add(m.at(i, l), fl.mul(x[j], mult[i][j][l]));
  }
  return m;
}

Matrix Algebra::left_mult_matrix_elem(const std::vector<Scalar>& x) const {
  Field fl(field);
  Matrix m(field, dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (Field::is_zero(x[i])) continue;
    for (int j = 0; j < dim; ++j)
      for (int l = 0; l < dim; ++l)
        if (!Field::is_zero(mult[i][j][l]))
          m.at(j, l) = fl.add(m.at(j, l), fl.mul(x[i], mult[i][j][l]));
  }
  return m;
}

std::vector<Scalar> Algebra::idempotent_element(int k) const {
  Field fl(field);
  std::vector<Scalar> v(dim, fl.zero());
  v[idempotents[k]] = fl.one();
  return v;
}

AlgPtr build_algebra(const AlgebraPresentation& pres) {
  validate_presentation(pres);
  Field fl(pres.field);
  const int N = pres.nilpotency_bound;
  PathTable t = enumerate_paths(pres, N);
  const int n_le = t.length_start[N + 1];   // paths of length <= N
  const int n_lt = t.length_start[N];       // paths of length < N

  // admissibility: every length-N path must lie in the ideal's span modulo
  // paths of length > N.  For homogeneous relations this certifies J^N <= I
  // exactly; for mixed-length relations it is the strongest certificate a
  // fixed truncation admits (J^N <= I + J^(N+1)).
  Matrix wn = ideal_rows(pres, t, N, fl);
  RrefResult wn_rr = rref(wn);
  for (int pid = t.length_start[N]; pid < n_le; ++pid) {
    Matrix e(pres.field, 1, n_le);
    e.at(0, pid) = fl.one();
    if (!row_in_span(wn_rr, e, fl))
      throw input_error("non-admissible presentation: length-" + std::to_string(N) +
                        " path '" + path_label(pres, t.paths[pid]) +
                        "' survives reduction");
  }

  // quotient basis: paths of length < N modulo the cropped ideal rows
  Matrix w = wn.slice(0, wn.rows, 0, n_lt);
  RrefResult w_rr = rref(w);
  std::vector<char> killed(n_lt, 0);
  for (int c : w_rr.pivots) killed[c] = 1;
  std::vector<int> basis_ids;
  std::vector<int> basis_pos(n_lt, -1);
  for (int pid = 0; pid < n_lt; ++pid)
    if (!killed[pid]) {
      basis_pos[pid] = static_cast<int>(basis_ids.size());
      basis_ids.push_back(pid);
    }
  const int dim = static_cast<int>(basis_ids.size());

  // reduction of any path id (< N) to the surviving basis
  std::vector<std::vector<Scalar>> red(n_lt, std::vector<Scalar>(dim, fl.zero()));
  for (int pid = 0; pid < n_lt; ++pid) {
    if (!killed[pid]) {
      red[pid][basis_pos[pid]] = fl.one();
      continue;
    }
    int row = -1;
    for (int i = 0; i < w_rr.rank; ++i)
      if (w_rr.pivots[i] == pid) { row = i; break; }
    for (int l = 0; l < n_lt; ++l) {
      if (killed[l] || l == pid) continue;
      const Scalar& c = w_rr.reduced.at(row, l);
      if (!Field::is_zero(c)) red[pid][basis_pos[l]] = fl.neg(c);
    }
  }

  auto a = std::make_shared<Algebra>();
  a->field = pres.field;
  a->dim = dim;
  a->provenance = "quiver";
  a->quiver = pres;
  for (int pid : basis_ids) {
    a->basis_paths.push_back(t.paths[pid]);
    a->basis_labels.push_back(path_label(pres, t.paths[pid]));
  }
  a->mult.assign(dim, std::vector<std::vector<Scalar>>(dim));
  for (int bi = 0; bi < dim; ++bi)
    for (int bj = 0; bj < dim; ++bj) {
      const BasisPath& p = a->basis_paths[bi];
      const BasisPath& q = a->basis_paths[bj];
      std::vector<Scalar> out(dim, fl.zero());
      if (p.target == q.source &&
          p.arrows.size() + q.arrows.size() < static_cast<size_t>(N)) {
        BasisPath full;
        full.source = p.source;
        full.target = q.target;
        full.arrows = p.arrows;
        full.arrows.insert(full.arrows.end(), q.arrows.begin(), q.arrows.end());
        int id = t.find(full);
        if (id < 0 || id >= n_lt) throw critical_error("path product lookup failed");
        out = red[id];
      }
      a->mult[bi][bj] = std::move(out);
    }
  a->unit.assign(dim, fl.zero());
  for (int v = 0; v < static_cast<int>(pres.vertices.size()); ++v) {
    if (basis_pos[v] < 0) throw critical_error("vertex idempotent killed by relations");
    a->idempotents.push_back(basis_pos[v]);
    a->unit[basis_pos[v]] = fl.one();
  }
  for (const auto& p : a->basis_paths) {
    a->block_left.push_back(p.source);
    a->block_right.push_back(p.target);
  }
  {
    std::vector<Matrix> rows;
    for (int b = 0; b < dim; ++b)
      if (!a->basis_paths[b].arrows.empty()) {
        Matrix r(pres.field, 1, dim);
        r.at(0, b) = fl.one();
        rows.push_back(std::move(r));
      }
    a->radical_rows = vstack_all(pres.field, rows, dim);
    a->radical_known = true;
  }
  run_axiom_checks(*a);
  a->digest = structural_digest(*a);
  return a;
}

AlgPtr opposite(const AlgPtr& ap) {
  const Algebra& a = *ap;
  auto o = std::make_shared<Algebra>();
  o->field = a.field;
  o->dim = a.dim;
  o->basis_labels = a.basis_labels;
  o->mult.assign(a.dim, std::vector<std::vector<Scalar>>(a.dim));
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) o->mult[i][j] = a.mult[j][i];
  o->unit = a.unit;
  o->idempotents = a.idempotents;
  o->block_left = a.block_right;
  o->block_right = a.block_left;
  o->radical_rows = a.radical_rows;
  o->radical_known = a.radical_known;
  {
    // keep /op involutive so opposite(opposite(a)) restores the provenance tag
    std::string prov = a.provenance;
    if (prov.size() >= 3 && prov.compare(prov.size() - 3, 3, "/op") == 0)
      prov.resize(prov.size() - 3);
    else
      prov += "/op";
    o->provenance = prov;
  }
  if (a.quiver) {
    AlgebraPresentation rev = *a.quiver;
    for (auto& ar : rev.arrows) std::swap(ar.source, ar.target);
    for (auto& rel : rev.relations)
      for (auto& term : rel)
        std::reverse(term.arrows.begin(), term.arrows.end());
    o->quiver = rev;
    for (const auto& p : a.basis_paths) {
      BasisPath q = p;
      std::swap(q.source, q.target);
      std::reverse(q.arrows.begin(), q.arrows.end());
      o->basis_paths.push_back(q);
    }
  }
  run_axiom_checks(*o);
  o->digest = structural_digest(*o);
  return o;
}

AlgPtr make_algebra(FieldSpec field, std::vector<std::string> labels,
                    std::vector<std::vector<std::vector<Scalar>>> mult,
                    std::vector<Scalar> unit, std::vector<int> idempotents,
                    std::string provenance) {
  auto a = std::make_shared<Algebra>();
  a->field = field;
  a->dim = static_cast<int>(labels.size());
  a->basis_labels = std::move(labels);
  a->mult = std::move(mult);
  a->unit = std::move(unit);
  a->idempotents = std::move(idempotents);
  a->provenance = std::move(provenance);
  // peirce labels by direct test
  Field fl(field);
  for (int b = 0; b < a->dim; ++b) {
    int bl = -1, br = -1;
    for (size_t k = 0; k < a->idempotents.size(); ++k) {
      std::vector<Scalar> eb(a->dim, fl.zero());
      eb[b] = fl.one();
      auto le = a->mul_elems(a->idempotent_element(static_cast<int>(k)), eb);
      bool is_b = true, is_zero = true;
      for (int l = 0; l < a->dim; ++l) {
        Scalar want = l == b ? fl.one() : fl.zero();
        if (!Field::eq(le[l], want)) is_b = false;
        if (!Field::is_zero(le[l])) is_zero = false;
      }
      if (is_b && !is_zero) { bl = static_cast<int>(k); break; }
      if (!is_b && !is_zero) { bl = -1; break; }
    }
    for (size_t k = 0; k < a->idempotents.size(); ++k) {
      std::vector<Scalar> eb(a->dim, fl.zero());
      eb[b] = fl.one();
      auto re = a->mul_elems(eb, a->idempotent_element(static_cast<int>(k)));
      bool is_b = true, is_zero = true;
      for (int l = 0; l < a->dim; ++l) {
        Scalar want = l == b ? fl.one() : fl.zero();
        if (!Field::eq(re[l], want)) is_b = false;
        if (!Field::is_zero(re[l])) is_zero = false;
      }
      if (is_b && !is_zero) { br = static_cast<int>(k); break; }
      if (!is_b && !is_zero) { br = -1; break; }
    }
    a->block_left.push_back(bl);
    a->block_right.push_back(br);
  }
  a->radical_known = false;
  run_axiom_checks(*a);
  if (field.kind == FieldKind::rational) {
    a->radical_rows = radical_of(*a);
    a->radical_known = true;
  }
  a->digest = structural_digest(*a);
  return a;
}

Matrix radical_of(const Algebra& a) {
  if (a.radical_known) return a.radical_rows;
  if (a.field.kind != FieldKind::rational)
    throw input_error(
        "radical over a prime field needs quiver provenance (trace form is "
        "characteristic-zero only)");
  // Dickson: over char 0, rad = left kernel of the regular trace form
  Field fl(a.field);
  std::vector<Matrix> lm(a.dim);
  for (int i = 0; i < a.dim; ++i) lm[i] = a.left_mult_matrix(i);
  Matrix gram(a.field, a.dim, a.dim);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      // trace of L_{b_i} L_{b_j}
      Scalar tr = fl.zero();
      for (int r = 0; r < a.dim; ++r)
        for (int k = 0; k < a.dim; ++k) {
          const Scalar& x = lm[i].at(r, k);
          if (Field::is_zero(x)) continue;
          const Scalar& y = lm[j].at(k, r);
          if (Field::is_zero(y)) continue;
          tr = fl.add(tr, fl.mul(x, y));
        }
      gram.at(i, j) = tr;
    }
  return row_basis(left_kernel(gram));
}

}  // namespace relaus
