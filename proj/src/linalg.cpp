#include "kt/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace kt {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, int cols) {
  Matrix m(int(rows.size()), cols);
  for (int i = 0; i < int(rows.size()); ++i) {
    if (int(rows[i].size()) != cols) throw std::invalid_argument("ragged row list");
    for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Vector Matrix::row(int i) const {
  Vector r(cols_);
  for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
  return r;
}

Vector Matrix::col(int j) const {
  Vector c(rows_);
  for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix product shape mismatch");
  Matrix r(rows_, other.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;  // operator matrices are sparse
      for (int j = 0; j < other.cols_; ++j) {
        const Rational& b = other(k, j);
        if (b == 0) continue;
        r(i, j) += a * b;
      }
    }
  return r;
}

Vector Matrix::operator*(const Vector& v) const {
  if (int(v.size()) != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
  Vector r(rows_, Rational(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const Rational& a = (*this)(i, j);
      if (a == 0 || v[j] == 0) continue;
      r[i] += a * v[j];
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("matrix sum shape mismatch");
  Matrix r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j) + other(i, j);
  return r;
}

Matrix Matrix::operator-(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("matrix difference shape mismatch");
  Matrix r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j) - other(i, j);
  return r;
}

Matrix Matrix::operator*(const Rational& s) const {
  Matrix r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j) * s;
  return r;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

bool Matrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Matrix Matrix::vstack(const Matrix& other) const {
  if (cols_ != other.cols_) throw std::invalid_argument("vstack column mismatch");
  Matrix r(rows_ + other.rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
  for (int i = 0; i < other.rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(rows_ + i, j) = other(i, j);
  return r;
}

Matrix Matrix::hstack(const Matrix& other) const {
  if (rows_ != other.rows_) throw std::invalid_argument("hstack row mismatch");
  Matrix r(rows_, cols_ + other.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
    for (int j = 0; j < other.cols_; ++j) r(i, cols_ + j) = other(i, j);
  }
  return r;
}

namespace {

// Integer working copy: each row of the rational input is scaled by the
// lcm of its denominators. Row scaling preserves row space, rank and
// kernel, which is all the callers below rely on.
struct IntRows {
  int rows = 0, cols = 0;
  std::vector<std::vector<Integer>> a;
};

IntRows to_integer_rows(const Matrix& m) {
  IntRows z;
  z.rows = m.rows();
  z.cols = m.cols();
  z.a.assign(z.rows, std::vector<Integer>(z.cols));
  for (int i = 0; i < z.rows; ++i) {
    Integer l = 1;
    for (int j = 0; j < z.cols; ++j) {
      Integer d = m(i, j).get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (int j = 0; j < z.cols; ++j) {
      const Rational& q = m(i, j);
      z.a[i][j] = q.get_num() * (l / q.get_den());
    }
  }
  return z;
}

// Fraction-free forward elimination with primitive rows: each update is
// the integer cross-multiplication row_i <- pivot*row_i - factor*row_pivot
// followed by division by the row content. Row scaling preserves rank,
// kernel and row space, and the gcd step keeps entries far smaller than
// plain Bareiss on the sparse structured matrices this library produces.
// Pivot choice: fewest nonzeros in the row, then least bit length.
struct EchelonOut {
  std::vector<int> pivots;
};

void make_primitive(std::vector<Integer>& row) {
  Integer g = 0;
  for (const Integer& x : row) {
    if (x == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g <= 1) return;
  for (Integer& x : row)
    if (x != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

EchelonOut integer_echelon(IntRows& z) {
  EchelonOut out;
  int r = 0;
  for (int c = 0; c < z.cols && r < z.rows; ++c) {
    int best = -1;
    size_t best_nnz = 0, best_bits = 0;
    for (int i = r; i < z.rows; ++i) {
      if (z.a[i][c] == 0) continue;
      size_t nnz = 0;
      for (int j = c; j < z.cols; ++j)
        if (z.a[i][j] != 0) ++nnz;
      size_t bits = mpz_sizeinbase(z.a[i][c].get_mpz_t(), 2);
      if (best < 0 || nnz < best_nnz || (nnz == best_nnz && bits < best_bits)) {
        best = i;
        best_nnz = nnz;
        best_bits = bits;
      }
    }
    if (best < 0) continue;
    if (best != r) std::swap(z.a[best], z.a[r]);
    const Integer& pivot = z.a[r][c];
    for (int i = r + 1; i < z.rows; ++i) {
      if (z.a[i][c] == 0) continue;
      const Integer factor = z.a[i][c];
      for (int j = c; j < z.cols; ++j) {
        if (z.a[r][j] == 0) {
          if (z.a[i][j] != 0) z.a[i][j] *= pivot;
        } else {
          z.a[i][j] = z.a[i][j] * pivot - factor * z.a[r][j];
        }
      }
      make_primitive(z.a[i]);
    }
    out.pivots.push_back(c);
    ++r;
  }
  return out;
}

// Classic Bareiss for determinants: the last pivot is the determinant of
// the (scaled) input. Exact division survives row swaps.
struct BareissOut {
  std::vector<int> pivots;
  int sign = 1;
};

BareissOut bareiss_echelon(IntRows& z) {
  BareissOut out;
  Integer prev = 1;
  int r = 0;
  for (int c = 0; c < z.cols && r < z.rows; ++c) {
    int best = -1;
    size_t best_bits = 0;
    for (int i = r; i < z.rows; ++i) {
      if (z.a[i][c] == 0) continue;
      size_t bits = mpz_sizeinbase(z.a[i][c].get_mpz_t(), 2);
      if (best < 0 || bits < best_bits) {
        best = i;
        best_bits = bits;
      }
    }
    if (best < 0) continue;
    if (best != r) {
      std::swap(z.a[best], z.a[r]);
      out.sign = -out.sign;
    }
    const Integer pivot = z.a[r][c];
    for (int i = r + 1; i < z.rows; ++i) {
      const Integer factor = z.a[i][c];
      for (int j = c; j < z.cols; ++j) {
        Integer t = z.a[i][j] * pivot - factor * z.a[r][j];
        mpz_divexact(z.a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = pivot;
    out.pivots.push_back(c);
    ++r;
  }
  return out;
}

}  // namespace

RowEchelon reduced_row_echelon(const Matrix& m) {
  IntRows z = to_integer_rows(m);
  EchelonOut fwd = integer_echelon(z);
  const int r = int(fwd.pivots.size());

  // Back-substitution over Q on the echelon rows only.
  std::vector<Vector> rows(r, Vector(m.cols(), Rational(0)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < m.cols(); ++j) rows[i][j] = Rational(z.a[i][j]);
  for (int i = r - 1; i >= 0; --i) {
    const int pc = fwd.pivots[i];
    const Rational inv_p = Rational(1) / rows[i][pc];
    for (int j = pc; j < m.cols(); ++j) rows[i][j] *= inv_p;
    for (int k = 0; k < i; ++k) {
      const Rational f = rows[k][pc];
      if (f == 0) continue;
      for (int j = pc; j < m.cols(); ++j) rows[k][j] -= f * rows[i][j];
    }
  }
  RowEchelon out{Matrix::from_rows(rows, m.cols()), fwd.pivots};
  return out;
}

int rank(const Matrix& m) {
  IntRows z = to_integer_rows(m);
  return int(integer_echelon(z).pivots.size());
}

Rational determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const int n = m.rows();
  if (n == 0) return 1;
  // Track the row scalings so the integer determinant can be converted back.
  Rational scaling = 1;
  IntRows z;
  z.rows = z.cols = n;
  z.a.assign(n, std::vector<Integer>(n));
  for (int i = 0; i < n; ++i) {
    Integer l = 1;
    for (int j = 0; j < n; ++j) {
      Integer d = m(i, j).get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    scaling *= Rational(l);
    for (int j = 0; j < n; ++j) z.a[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
  }
  BareissOut fwd = bareiss_echelon(z);
  if (int(fwd.pivots.size()) < n) return 0;
  // In Bareiss form the last pivot equals the determinant of the scaled matrix.
  Rational det = Rational(z.a[n - 1][n - 1]) * fwd.sign / scaling;
  det.canonicalize();
  return det;
}

bool is_positive_definite(const Matrix& g, int* failing_minor) {
  if (!g.is_symmetric()) throw std::invalid_argument("positive-definiteness test on non-symmetric matrix");
  const int n = g.rows();
  for (int k = 1; k <= n; ++k) {
    Matrix lead(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) lead(i, j) = g(i, j);
    if (determinant(lead) <= 0) {
      if (failing_minor) *failing_minor = k;
      return false;
    }
  }
  return true;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const int n = m.rows();
  RowEchelon e = reduced_row_echelon(m.hstack(Matrix::identity(n)));
  if (int(e.pivots.size()) != n || e.pivots[n - 1] != n - 1)
    throw std::invalid_argument("inverse of singular matrix");
  Matrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = e.rref(i, n + j);
  return inv;
}

Subspace Subspace::span_of_rows(const Matrix& rows) {
  RowEchelon e = reduced_row_echelon(rows);
  Subspace s(rows.cols());
  s.basis_ = e.rref;
  return s;
}

bool Subspace::contains(const Vector& v) const {
  if (int(v.size()) != ambient_) throw std::invalid_argument("ambient dimension mismatch");
  if (is_zero(v)) return true;
  Matrix stacked = basis_.vstack(Matrix::from_rows({v}, ambient_));
  return rank(stacked) == dim();
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw std::invalid_argument("ambient dimension mismatch");
  for (int i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_vector(i))) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw std::invalid_argument("ambient dimension mismatch");
  return span_of_rows(basis_.vstack(other.basis_));
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw std::invalid_argument("ambient dimension mismatch");
  // x in both spans: x = A^T u = B^T v. Solve [A^T | -B^T] w = 0 and map
  // the u-part back through A^T.
  const Matrix at = basis_.transpose();
  const Matrix bt = other.basis_.transpose();
  if (dim() == 0 || other.dim() == 0) return Subspace(ambient_);
  Subspace joint = kernel(at.hstack(bt * Rational(-1)));
  std::vector<Vector> vecs;
  for (int i = 0; i < joint.dim(); ++i) {
    Vector w = joint.basis_vector(i);
    Vector u(w.begin(), w.begin() + dim());
    vecs.push_back(at * u);
  }
  if (vecs.empty()) return Subspace(ambient_);
  return span_of_rows(Matrix::from_rows(vecs, ambient_));
}

Subspace kernel(const Matrix& m) {
  RowEchelon e = reduced_row_echelon(m);
  const int n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (int p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector v(n, Rational(0));
    v[f] = 1;
    for (int i = 0; i < int(e.pivots.size()); ++i) v[e.pivots[i]] = -e.rref(i, f);
    basis.push_back(std::move(v));
  }
  Subspace s(n);
  if (!basis.empty()) s = Subspace::span_of_rows(Matrix::from_rows(basis, n));
  return s;
}

Subspace image(const Matrix& m) { return Subspace::span_of_columns(m); }

Vector reduce_modulo(const Subspace& s, Vector v) {
  if (int(v.size()) != s.ambient_dim()) throw std::invalid_argument("ambient dimension mismatch");
  // The stored basis is already in reduced row-echelon form; subtract the
  // multiple of each row matching v at the row's pivot column.
  const Matrix& b = s.basis();
  for (int i = 0; i < b.rows(); ++i) {
    int pc = 0;
    while (pc < b.cols() && b(i, pc) == 0) ++pc;
    const Rational f = v[pc];
    if (f == 0) continue;
    for (int j = pc; j < b.cols(); ++j)
      if (b(i, j) != 0) v[j] -= f * b(i, j);
  }
  return v;
}

std::optional<Vector> solve(const Matrix& m, const Vector& rhs) {
  if (int(rhs.size()) != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
  Matrix aug = m.hstack(Matrix::from_rows({rhs}, m.rows()).transpose());
  RowEchelon e = reduced_row_echelon(aug);
  for (int p : e.pivots)
    if (p == m.cols()) return std::nullopt;  // pivot in the rhs column
  Vector x(m.cols(), Rational(0));
  for (int i = 0; i < int(e.pivots.size()); ++i) x[e.pivots[i]] = e.rref(i, m.cols());
  return x;
}

Vector zero_vector(int n) { return Vector(n, Rational(0)); }

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

Rational dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot length mismatch");
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vector sub(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sub length mismatch");
  Vector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector scale(const Vector& a, const Rational& s) {
  Vector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

Vector normalize_integral(const Vector& v) {
  Integer l = 1;
  for (const auto& q : v) {
    Integer d = q.get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  Integer content = 0;
  for (const auto& q : v) {
    Integer n = q.get_num() * (l / q.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), n.get_mpz_t());
  }
  if (content == 0) return v;  // zero vector
  Vector r(v.size());
  int lead_sign = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    Rational q = v[i] * Rational(l) / Rational(content);
    q.canonicalize();
    if (lead_sign == 0 && q != 0) lead_sign = sgn(q);
    r[i] = q;
  }
  if (lead_sign < 0)
    for (auto& q : r) q = -q;
  return r;
}

}  // namespace kt
