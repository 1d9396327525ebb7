#pragma once
#include <optional>
#include <vector>

#include "relaus/field.hpp"

namespace relaus {

// Dense row-major exact matrix.  All entries are normalized for the attached
// field; operations on mismatched fields are rejected.
struct Matrix {
  FieldSpec field;
  int rows = 0;
  int cols = 0;
  std::vector<Scalar> a;

  Matrix() = default;
  Matrix(const FieldSpec& f, int r, int c);

  Scalar& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Scalar& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Matrix zero(const FieldSpec& f, int r, int c) { return Matrix(f, r, c); }
  static Matrix identity(const FieldSpec& f, int n);

  bool is_zero() const;
  bool operator==(const Matrix& o) const;

  Matrix transpose() const;
  Matrix row(int i) const;
  Matrix col(int j) const;
  // rows [r0, r1), cols [c0, c1)
  Matrix slice(int r0, int r1, int c0, int c1) const;
};

Matrix add(const Matrix& x, const Matrix& y);
Matrix sub(const Matrix& x, const Matrix& y);
Matrix mul(const Matrix& x, const Matrix& y);
Matrix scale(const Scalar& c, const Matrix& x);
Matrix hstack(const Matrix& x, const Matrix& y);
Matrix vstack(const Matrix& x, const Matrix& y);
Matrix hstack_all(const FieldSpec& f, const std::vector<Matrix>& parts, int rows);
Matrix vstack_all(const FieldSpec& f, const std::vector<Matrix>& parts, int cols);

std::vector<Scalar> row_of(const Matrix& m, int i);
Matrix row_vector(const FieldSpec& f, const std::vector<Scalar>& v);

struct RrefResult {
  Matrix reduced;
  int rank = 0;
  std::vector<int> pivots;  // pivot column per pivot row
};

// Gauss-Jordan with first-nonzero pivot selection (deterministic, exact).
RrefResult rref(const Matrix& m);

int rank(const Matrix& m);

// Columns form a basis of the right null space: m * K = 0,
// K has m.cols rows and (cols - rank) columns, free columns ascending.
Matrix kernel_basis(const Matrix& m);

// Rows form a basis of the left null space: K * m = 0.
Matrix left_kernel(const Matrix& m);

// x with a*x = b (b may have several columns); nullopt when inconsistent.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
// x with x*a = b.
std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b);

std::optional<Matrix> inverse(const Matrix& m);

// Canonical basis of the row space (nonzero rref rows); two spans are equal
// iff their row_basis results are identical.
Matrix row_basis(const Matrix& m);

// Precomputed eliminator for repeated solves against a fixed coefficient
// matrix A (a*x = b).  Also answers row-space membership for A^T tricks.
class Solver {
 public:
  explicit Solver(const Matrix& a);
  int rank() const { return rr_.rank; }
  std::optional<Matrix> solve(const Matrix& b) const;

 private:
  Matrix a_;
  RrefResult rr_;   // rref of [a | I]
  int acols_;
};

// Repeated solves of x*a = b against fixed a: coordinates of rows of b in the
// row space spanned by rows of a.
class LeftSolver {
 public:
  explicit LeftSolver(const Matrix& a) : inner_(a.transpose()) {}
  int rank() const { return inner_.rank(); }
  std::optional<Matrix> solve(const Matrix& b) const;

 private:
  Solver inner_;
};

}  // namespace relaus
