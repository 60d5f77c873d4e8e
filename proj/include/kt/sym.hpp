#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "kt/linalg.hpp"
#include "kt/rational.hpp"

namespace kt {

/// Exponent vector of a monomial in the polynomial model of Sym^p V.
/// Ordering is graded lexicographic (degree first, then lex with higher
/// leading exponents first), fixed once so operator matrices are
/// reproducible bit for bit.
struct MultiIndex {
  std::vector<int> e;

  int degree() const;
  bool operator==(const MultiIndex&) const = default;
  bool operator<(const MultiIndex& other) const;
};

/// Number of degree-p monomials in n variables: C(n+p-1, p). Zero for p < 0.
long dim_sym(int n, int p);

/// All multi-indices of degree p over n variables, in storage order.
const std::vector<MultiIndex>& monomial_basis(int n, int p);

/// Position of alpha within monomial_basis(n, |alpha|).
int basis_index(int n, const MultiIndex& alpha);

/// Homogeneous symmetric tensor as a sparse polynomial: coefficients on
/// degree-`degree` monomials in n commuting variables, one per basis
/// vector. Zero coefficients are never stored.
class SymTensor {
 public:
  SymTensor(int n, int degree) : n_(n), degree_(degree < 0 ? 0 : degree) {}

  static SymTensor scalar(int n, const Rational& value);
  static SymTensor basis_vector(int n, int i);  // the linear monomial y_i
  static SymTensor monomial(int n, const MultiIndex& alpha, const Rational& coeff);
  static SymTensor from_vector(int n, int degree, const Vector& coords);

  int n() const { return n_; }
  int degree() const { return degree_; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::map<MultiIndex, Rational>& coeffs() const { return coeffs_; }

  Rational coeff(const MultiIndex& alpha) const;
  void set_coeff(const MultiIndex& alpha, const Rational& value);
  void add_coeff(const MultiIndex& alpha, const Rational& value);

  Vector to_vector() const;  // coordinates in monomial_basis(n, degree)

  SymTensor operator+(const SymTensor& other) const;
  SymTensor operator-(const SymTensor& other) const;
  SymTensor operator*(const Rational& s) const;
  bool operator==(const SymTensor& other) const;

  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  int n_;
  int degree_;
  std::map<MultiIndex, Rational> coeffs_;
};

/// A rational positive definite metric together with its exact inverse.
class GramContext {
 public:
  explicit GramContext(Matrix gram);
  static GramContext standard(int n) { return GramContext(Matrix::identity(n)); }

  int n() const { return gram_.rows(); }
  const Matrix& gram() const { return gram_; }
  const Matrix& gram_inv() const { return gram_inv_; }
  bool is_orthonormal() const { return gram_ == Matrix::identity(gram_.rows()); }

 private:
  Matrix gram_;
  Matrix gram_inv_;
};

/// Linear endomorphism in the fixed basis; columns are images of basis vectors.
struct Endomorphism {
  Matrix m;

  int n() const { return m.rows(); }
  static Endomorphism from_matrix(Matrix mat);
  Endomorphism metric_adjoint(const GramContext& ctx) const;  // G^{-1} M^T G
  bool is_skew(const GramContext& ctx) const;                 // M* = -M
};

// --- algebra operations -------------------------------------------------

SymTensor multiply(const SymTensor& a, const SymTensor& b);

/// Contraction v .| K: the first-order operator sum_k (sum_i v^i G_ik) d/dy_k.
/// Degree drops by one; degree-0 input is an error.
SymTensor contract(const Vector& v, const SymTensor& K, const GramContext& ctx);

/// Metric on Sym^p: bilinear extension of <y^a, y^b> = permanent of the
/// p x p Gram submatrix picked by the two exponent multisets.
Rational inner_product(const SymTensor& a, const SymTensor& b, const GramContext& ctx);

/// Permanent by Laplace expansion with a column mask; fine for p <= 8.
Rational permanent(const Matrix& m);

/// The degree-1 tensor of a vector.
SymTensor vector_tensor(int n, const Vector& v);

/// The metric tensor as an element of Sym^2: sum_ij (G^{-1})_ij y_i y_j.
SymTensor metric_square(const GramContext& ctx);

/// L: multiplication by the metric tensor, degree +2.
SymTensor lefschetz(const SymTensor& K, const GramContext& ctx);

/// Lambda, the adjoint of L: sum_kl G_kl d_k d_l, degree -2 (zero on p < 2).
SymTensor metric_trace(const SymTensor& K, const GramContext& ctx);

/// Derivation extension of an endomorphism: the vector-field action
/// sum_ab M_ab y_a d/dy_b. Leibniz on products, equals M on vectors.
SymTensor apply_derivation(const Endomorphism& M, const SymTensor& K);

/// S_M: the degree-2 tensor of the symmetric part of M.
SymTensor endo_to_sym(const Endomorphism& M, const GramContext& ctx);

/// Unique split K = K0 + L(R) with trace-free K0. R solves the square
/// system (Lambda o L) R = Lambda K on Sym^{p-2}; for p < 2, R = 0.
struct TraceFreeSplit {
  SymTensor trace_free;
  SymTensor metric_part;  // R
};
TraceFreeSplit trace_free_split(const SymTensor& K, const GramContext& ctx);

/// Exact matrix of a linear map Sym^{p_from} -> Sym^{p_to} in the fixed
/// monomial bases.
Matrix operator_matrix(int n, int p_from, int p_to,
                       const std::function<SymTensor(const SymTensor&)>& apply);

/// Gram matrix of the inner product on the Sym^p monomial basis.
Matrix sym_gram_matrix(int n, int p, const GramContext& ctx);

/// Substitution y_i -> sum_j S_ij y'_j, the Sym^p functor applied to a basis
/// change; used to express tensors in adapted bases.
SymTensor substitute(const SymTensor& K, const Matrix& S);

}  // namespace kt
