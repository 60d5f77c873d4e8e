#pragma once

#include <optional>
#include <vector>

#include "kt/rational.hpp"

namespace kt {

using Vector = std::vector<Rational>;

/// Dense matrix over the rationals. Row-major, immutable in spirit:
/// all algorithms below return fresh values.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * cols) {}

  static Matrix identity(int n);
  static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }
  static Matrix from_rows(const std::vector<Vector>& rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const Rational& operator()(int i, int j) const { return data_[size_t(i) * cols_ + j]; }
  Rational& operator()(int i, int j) { return data_[size_t(i) * cols_ + j]; }

  Vector row(int i) const;
  Vector col(int j) const;
  Matrix transpose() const;

  Matrix operator*(const Matrix& other) const;
  Vector operator*(const Vector& v) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix operator*(const Rational& s) const;
  bool operator==(const Matrix& other) const = default;

  bool is_zero() const;
  bool is_symmetric() const;

  /// Stacks `other` below this matrix (equal column counts).
  Matrix vstack(const Matrix& other) const;
  /// Puts `other` to the right of this matrix (equal row counts).
  Matrix hstack(const Matrix& other) const;

 private:
  int rows_, cols_;
  std::vector<Rational> data_;
};

struct RowEchelon {
  Matrix rref;             // reduced row-echelon form, zero rows dropped
  std::vector<int> pivots; // pivot column per nonzero row
};

/// Fraction-free Bareiss elimination followed by exact back-substitution.
/// Intermediate entries stay integral once the input rows are scaled
/// integral, which keeps coefficient growth in check.
RowEchelon reduced_row_echelon(const Matrix& m);

int rank(const Matrix& m);

/// Determinant via fraction-free elimination (square input).
Rational determinant(const Matrix& m);

/// Sylvester's criterion: all leading principal minors positive.
/// Input must be symmetric. Returns the 1-based order of the first
/// non-positive minor in `failing_minor` when given.
bool is_positive_definite(const Matrix& g, int* failing_minor = nullptr);

Matrix inverse(const Matrix& m);  // throws on singular input

/// A linear subspace of Q^n in canonical form: the basis is stored as
/// the RREF of its spanning rows, so equal subspaces compare equal.
class Subspace {
 public:
  explicit Subspace(int ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}
  static Subspace span_of_rows(const Matrix& rows);
  static Subspace span_of_columns(const Matrix& cols) { return span_of_rows(cols.transpose()); }
  static Subspace full(int n) { return span_of_rows(Matrix::identity(n)); }

  int ambient_dim() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  Vector basis_vector(int i) const { return basis_.row(i); }

  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& other) const = default;

  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

 private:
  int ambient_;
  Matrix basis_;
};

Subspace kernel(const Matrix& m);
Subspace image(const Matrix& m);

/// Eliminates the components of v along the subspace basis; the result is
/// zero exactly when v lies in s, and otherwise a canonical representative
/// of v modulo s.
Vector reduce_modulo(const Subspace& s, Vector v);

/// Any particular solution of m x = rhs, or nullopt when inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& rhs);

// Small vector helpers used throughout.
Vector zero_vector(int n);
bool is_zero(const Vector& v);
Rational dot(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(const Vector& a, const Rational& s);

/// Scales to integer entries with content 1 and positive leading
/// coefficient; the normal form used for reported witnesses.
Vector normalize_integral(const Vector& v);

}  // namespace kt
