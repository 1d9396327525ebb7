#include "relaus/matrix.hpp"

namespace relaus {

namespace {
void check_fields(const Matrix& x, const Matrix& y, const char* what) {
  if (!(x.field == y.field))
    throw input_error(std::string("field mismatch in ") + what);
}
}  // namespace

Matrix::Matrix(const FieldSpec& f, int r, int c) : field(f), rows(r), cols(c) {
  if (r < 0 || c < 0) throw critical_error("negative matrix dimension");
  a.assign(static_cast<size_t>(r) * c, Scalar(0));
}

Matrix Matrix::identity(const FieldSpec& f, int n) {
  Matrix m(f, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& x : a)
    if (sgn(x) != 0) return false;
  return true;
}

bool Matrix::operator==(const Matrix& o) const {
  if (!(field == o.field) || rows != o.rows || cols != o.cols) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (cmp(a[i], o.a[i]) != 0) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(field, cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix Matrix::row(int i) const { return slice(i, i + 1, 0, cols); }
Matrix Matrix::col(int j) const { return slice(0, rows, j, j + 1); }

Matrix Matrix::slice(int r0, int r1, int c0, int c1) const {
  if (r0 < 0 || r1 > rows || c0 < 0 || c1 > cols || r0 > r1 || c0 > c1)
    throw critical_error("bad slice bounds");
  Matrix s(field, r1 - r0, c1 - c0);
  for (int i = r0; i < r1; ++i)
    for (int j = c0; j < c1; ++j) s.at(i - r0, j - c0) = at(i, j);
  return s;
}

Matrix add(const Matrix& x, const Matrix& y) {
  check_fields(x, y, "add");
  if (x.rows != y.rows || x.cols != y.cols) throw critical_error("shape mismatch in add");
  Field f(x.field);
  Matrix r(x.field, x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = f.add(x.a[i], y.a[i]);
  return r;
}

Matrix sub(const Matrix& x, const Matrix& y) {
  check_fields(x, y, "sub");
  if (x.rows != y.rows || x.cols != y.cols) throw critical_error("shape mismatch in sub");
  Field f(x.field);
  Matrix r(x.field, x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = f.sub(x.a[i], y.a[i]);
  return r;
}

Matrix mul(const Matrix& x, const Matrix& y) {
  check_fields(x, y, "mul");
  if (x.cols != y.rows) throw critical_error("shape mismatch in mul");
  Field f(x.field);
  Matrix r(x.field, x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Scalar& xv = x.at(i, k);
      if (sgn(xv) == 0) continue;
      for (int j = 0; j < y.cols; ++j) {
        const Scalar& yv = y.at(k, j);
        if (sgn(yv) == 0) continue;
        r.at(i, j) = f.add(r.at(i, j), f.mul(xv, yv));
      }
    }
  return r;
}

Matrix scale(const Scalar& c, const Matrix& x) {
  Field f(x.field);
  Matrix r(x.field, x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = f.mul(c, x.a[i]);
  return r;
}

Matrix hstack(const Matrix& x, const Matrix& y) {
  check_fields(x, y, "hstack");
  if (x.rows != y.rows) throw critical_error("row mismatch in hstack");
  Matrix r(x.field, x.rows, x.cols + y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int j = 0; j < x.cols; ++j) r.at(i, j) = x.at(i, j);
    for (int j = 0; j < y.cols; ++j) r.at(i, x.cols + j) = y.at(i, j);
  }
  return r;
}

Matrix vstack(const Matrix& x, const Matrix& y) {
  check_fields(x, y, "vstack");
  if (x.cols != y.cols) throw critical_error("col mismatch in vstack");
  Matrix r(x.field, x.rows + y.rows, x.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r.at(i, j) = x.at(i, j);
  for (int i = 0; i < y.rows; ++i)
    for (int j = 0; j < y.cols; ++j) r.at(x.rows + i, j) = y.at(i, j);
  return r;
}

Matrix hstack_all(const FieldSpec& f, const std::vector<Matrix>& parts, int rows) {
  Matrix r(f, rows, 0);
  for (const auto& p : parts) r = hstack(r, p);
  return r;
}

Matrix vstack_all(const FieldSpec& f, const std::vector<Matrix>& parts, int cols) {
  Matrix r(f, 0, cols);
  for (const auto& p : parts) r = vstack(r, p);
  return r;
}

std::vector<Scalar> row_of(const Matrix& m, int i) {
  std::vector<Scalar> v(m.cols);
  for (int j = 0; j < m.cols; ++j) v[j] = m.at(i, j);
  return v;
}

Matrix row_vector(const FieldSpec& f, const std::vector<Scalar>& v) {
  Matrix m(f, 1, static_cast<int>(v.size()));
  for (size_t j = 0; j < v.size(); ++j) m.at(0, static_cast<int>(j)) = v[j];
  return m;
}

RrefResult rref(const Matrix& m) {
  Field f(m.field);
  RrefResult res{m, 0, {}};
  Matrix& w = res.reduced;
  int r = 0;
  for (int c = 0; c < w.cols && r < w.rows; ++c) {
    int piv = -1;
    for (int i = r; i < w.rows; ++i)
      if (sgn(w.at(i, c)) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < w.cols; ++j) std::swap(w.at(piv, j), w.at(r, j));
    Scalar s = f.inv(w.at(r, c));
    for (int j = c; j < w.cols; ++j)
      if (sgn(w.at(r, j)) != 0) w.at(r, j) = f.mul(s, w.at(r, j));
    for (int i = 0; i < w.rows; ++i) {
      if (i == r) continue;
      const Scalar t = w.at(i, c);
      if (sgn(t) == 0) continue;
      for (int j = c; j < w.cols; ++j) {
        if (sgn(w.at(r, j)) == 0) continue;
        w.at(i, j) = f.sub(w.at(i, j), f.mul(t, w.at(r, j)));
      }
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

int rank(const Matrix& m) { return rref(m).rank; }

Matrix kernel_basis(const Matrix& m) {
  Field f(m.field);
  RrefResult rr = rref(m);
  std::vector<char> is_pivot(m.cols, 0);
  for (int c : rr.pivots) is_pivot[c] = 1;
  int nul = m.cols - rr.rank;
  Matrix k(m.field, m.cols, nul);
  int kc = 0;
  for (int c = 0; c < m.cols; ++c) {
    if (is_pivot[c]) continue;
    k.at(c, kc) = 1;
    for (int i = 0; i < rr.rank; ++i)
      k.at(rr.pivots[i], kc) = f.neg(rr.reduced.at(i, c));
    ++kc;
  }
  return k;
}

Matrix left_kernel(const Matrix& m) { return kernel_basis(m.transpose()).transpose(); }

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  return Solver(a).solve(b);
}

std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b) {
  auto x = solve(a.transpose(), b.transpose());
  if (!x) return std::nullopt;
  return x->transpose();
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows != m.cols) return std::nullopt;
  return solve(m, Matrix::identity(m.field, m.rows));
}

Matrix row_basis(const Matrix& m) {
  RrefResult rr = rref(m);
  return rr.reduced.slice(0, rr.rank, 0, m.cols);
}

Solver::Solver(const Matrix& a) : a_(a), acols_(a.cols) {
  rr_ = rref(hstack(a, Matrix::identity(a.field, a.rows)));
  // pivots inside the identity part mean nothing for a itself; recompute the
  // true rank of a as pivots that landed in the first acols_ columns
  int ra = 0;
  for (int c : rr_.pivots)
    if (c < acols_) ++ra;
  rr_.rank = ra;
}

std::optional<Matrix> Solver::solve(const Matrix& b) const {
  if (b.rows != a_.rows) throw critical_error("solve shape mismatch");
  if (!(b.field == a_.field)) throw input_error("field mismatch in solve");
  Field f(a_.field);
  // E = transformation rows: rr_.reduced = [R | E] with R = E*a
  Matrix e = rr_.reduced.slice(0, a_.rows, acols_, acols_ + a_.rows);
  Matrix rb = mul(e, b);  // reduced right-hand side
  Matrix x(a_.field, acols_, b.cols);
  int prow = 0;
  for (int c : rr_.pivots) {
    if (c >= acols_) break;
    for (int j = 0; j < b.cols; ++j) x.at(c, j) = rb.at(prow, j);
    ++prow;
  }
  // consistency: rows of R beyond the a-rank must annihilate b; when they do,
  // x (free vars at 0) satisfies R*x = E*b and E is invertible, so a*x = b
  for (int i = prow; i < a_.rows; ++i)
    for (int j = 0; j < b.cols; ++j)
      if (sgn(rb.at(i, j)) != 0) return std::nullopt;
  return x;
}

std::optional<Matrix> LeftSolver::solve(const Matrix& b) const {
  auto x = inner_.solve(b.transpose());
  if (!x) return std::nullopt;
  return x->transpose();
}

}  // namespace relaus
