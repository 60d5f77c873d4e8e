#include "kt/sym.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace kt {

int MultiIndex::degree() const { return std::accumulate(e.begin(), e.end(), 0); }

bool MultiIndex::operator<(const MultiIndex& other) const {
  const int da = degree(), db = other.degree();
  if (da != db) return da < db;
  // Within a degree: lexicographic with the larger leading exponent first,
  // so (2,0,0) precedes (1,1,0) precedes (0,0,2).
  for (size_t i = 0; i < e.size() && i < other.e.size(); ++i)
    if (e[i] != other.e[i]) return e[i] > other.e[i];
  return false;
}

long dim_sym(int n, int p) {
  if (n < 1) throw std::invalid_argument("dim_sym: n must be >= 1");
  if (p < 0) return 0;
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n + p - 1), static_cast<unsigned long>(p));
  return b.get_si();
}

namespace {

void enumerate(int n, int p, std::vector<int>& cur, std::vector<MultiIndex>& out) {
  if (int(cur.size()) == n - 1) {
    cur.push_back(p);
    out.push_back(MultiIndex{cur});
    cur.pop_back();
    return;
  }
  for (int k = p; k >= 0; --k) {
    cur.push_back(k);
    enumerate(n, p - k, cur, out);
    cur.pop_back();
  }
}

struct BasisCache {
  std::mutex mu;
  std::map<std::pair<int, int>, std::vector<MultiIndex>> bases;
  std::map<std::pair<int, int>, std::map<MultiIndex, int>> index;
};

BasisCache& cache() {
  static BasisCache c;
  return c;
}

}  // namespace

const std::vector<MultiIndex>& monomial_basis(int n, int p) {
  if (p < 0) throw std::invalid_argument("monomial_basis: negative degree");
  auto& c = cache();
  std::scoped_lock lock(c.mu);
  auto key = std::make_pair(n, p);
  auto it = c.bases.find(key);
  if (it == c.bases.end()) {
    std::vector<MultiIndex> basis;
    std::vector<int> cur;
    enumerate(n, p, cur, basis);
    it = c.bases.emplace(key, std::move(basis)).first;
    auto& idx = c.index[key];
    for (int i = 0; i < int(it->second.size()); ++i) idx[it->second[i]] = i;
  }
  return it->second;
}

int basis_index(int n, const MultiIndex& alpha) {
  const int p = alpha.degree();
  monomial_basis(n, p);  // populate
  auto& c = cache();
  std::scoped_lock lock(c.mu);
  return c.index.at({n, p}).at(alpha);
}

SymTensor SymTensor::scalar(int n, const Rational& value) {
  SymTensor t(n, 0);
  t.set_coeff(MultiIndex{std::vector<int>(n, 0)}, value);
  return t;
}

SymTensor SymTensor::basis_vector(int n, int i) {
  SymTensor t(n, 1);
  std::vector<int> e(n, 0);
  e[i] = 1;
  t.set_coeff(MultiIndex{e}, 1);
  return t;
}

SymTensor SymTensor::monomial(int n, const MultiIndex& alpha, const Rational& coeff) {
  SymTensor t(n, alpha.degree());
  t.set_coeff(alpha, coeff);
  return t;
}

SymTensor SymTensor::from_vector(int n, int degree, const Vector& coords) {
  const auto& basis = monomial_basis(n, degree);
  if (coords.size() != basis.size()) throw std::invalid_argument("from_vector: length mismatch");
  SymTensor t(n, degree);
  for (size_t i = 0; i < basis.size(); ++i) t.set_coeff(basis[i], coords[i]);
  return t;
}

Rational SymTensor::coeff(const MultiIndex& alpha) const {
  auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void SymTensor::set_coeff(const MultiIndex& alpha, const Rational& value) {
  if (alpha.degree() != degree_ || int(alpha.e.size()) != n_)
    throw std::invalid_argument("coefficient index of wrong shape");
  if (value == 0)
    coeffs_.erase(alpha);
  else
    coeffs_[alpha] = value;
}

void SymTensor::add_coeff(const MultiIndex& alpha, const Rational& value) {
  if (value == 0) return;
  auto [it, fresh] = coeffs_.try_emplace(alpha, value);
  if (!fresh) {
    it->second += value;
    if (it->second == 0) coeffs_.erase(it);
  }
}

Vector SymTensor::to_vector() const {
  const auto& basis = monomial_basis(n_, degree_);
  Vector v(basis.size(), Rational(0));
  for (const auto& [alpha, c] : coeffs_) v[basis_index(n_, alpha)] = c;
  return v;
}

SymTensor SymTensor::operator+(const SymTensor& other) const {
  if (other.n_ != n_ || (!is_zero() && !other.is_zero() && other.degree_ != degree_))
    throw std::invalid_argument("tensor sum shape mismatch");
  SymTensor r = *this;
  if (r.is_zero()) r.degree_ = other.degree_;
  for (const auto& [alpha, c] : other.coeffs_) r.add_coeff(alpha, c);
  return r;
}

SymTensor SymTensor::operator-(const SymTensor& other) const { return *this + other * Rational(-1); }

SymTensor SymTensor::operator*(const Rational& s) const {
  SymTensor r(n_, degree_);
  if (s == 0) return r;
  for (const auto& [alpha, c] : coeffs_) r.coeffs_[alpha] = c * s;
  return r;
}

bool SymTensor::operator==(const SymTensor& other) const {
  if (n_ != other.n_) return false;
  if (is_zero() && other.is_zero()) return true;
  return degree_ == other.degree_ && coeffs_ == other.coeffs_;
}

std::string SymTensor::str(const std::vector<std::string>& names) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [alpha, c] : coeffs_) {
    const bool neg = c < 0;
    Rational abs = neg ? Rational(-c) : c;
    if (first)
      out << (neg ? "-" : "");
    else
      out << (neg ? " - " : " + ");
    first = false;
    std::string mono;
    for (int i = 0; i < n_; ++i) {
      if (alpha.e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += (i < int(names.size())) ? names[i] : "e" + std::to_string(i + 1);
      if (alpha.e[i] > 1) mono += "^" + std::to_string(alpha.e[i]);
    }
    if (mono.empty())
      out << rational_str(abs);
    else if (abs == 1)
      out << mono;
    else
      out << rational_str(abs) << "*" << mono;
  }
  return out.str();
}

GramContext::GramContext(Matrix gram) : gram_(std::move(gram)) {
  if (!gram_.is_symmetric()) throw std::invalid_argument("Gram matrix must be symmetric");
  int minor = 0;
  if (!is_positive_definite(gram_, &minor))
    throw std::invalid_argument("Gram matrix not positive definite (leading minor " +
                                std::to_string(minor) + ")");
  gram_inv_ = inverse(gram_);
}

Endomorphism Endomorphism::from_matrix(Matrix mat) {
  if (mat.rows() != mat.cols()) throw std::invalid_argument("endomorphism must be square");
  return Endomorphism{std::move(mat)};
}

Endomorphism Endomorphism::metric_adjoint(const GramContext& ctx) const {
  return Endomorphism{ctx.gram_inv() * m.transpose() * ctx.gram()};
}

bool Endomorphism::is_skew(const GramContext& ctx) const {
  return (metric_adjoint(ctx).m + m).is_zero();
}

SymTensor multiply(const SymTensor& a, const SymTensor& b) {
  if (a.n() != b.n()) throw std::invalid_argument("tensor product dimension mismatch");
  SymTensor r(a.n(), a.degree() + b.degree());
  for (const auto& [alpha, ca] : a.coeffs())
    for (const auto& [beta, cb] : b.coeffs()) {
      std::vector<int> e(a.n());
      for (int i = 0; i < a.n(); ++i) e[i] = alpha.e[i] + beta.e[i];
      r.add_coeff(MultiIndex{std::move(e)}, ca * cb);
    }
  return r;
}

namespace {

SymTensor partial(const SymTensor& K, int k) {
  SymTensor r(K.n(), K.degree() - 1);
  for (const auto& [alpha, c] : K.coeffs()) {
    if (alpha.e[k] == 0) continue;
    MultiIndex beta = alpha;
    beta.e[k] -= 1;
    r.add_coeff(beta, c * alpha.e[k]);
  }
  return r;
}

}  // namespace

SymTensor contract(const Vector& v, const SymTensor& K, const GramContext& ctx) {
  if (int(v.size()) != K.n()) throw std::invalid_argument("contraction dimension mismatch");
  if (K.degree() < 1) throw std::invalid_argument("contraction of a degree-0 tensor");
  Vector w = ctx.gram() * v;  // lowered index
  SymTensor r(K.n(), K.degree() - 1);
  for (int k = 0; k < K.n(); ++k) {
    if (w[k] == 0) continue;
    r = r + partial(K, k) * w[k];
  }
  return r;
}

Rational permanent(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("permanent of non-square matrix");
  const int p = m.rows();
  if (p == 0) return 1;
  // Expansion over the last row, columns tracked in a bitmask.
  std::function<Rational(int, unsigned)> rec = [&](int row, unsigned used) -> Rational {
    if (row == p) return 1;
    Rational total = 0;
    for (int j = 0; j < p; ++j) {
      if (used & (1u << j)) continue;
      const Rational& a = m(row, j);
      if (a == 0) continue;
      total += a * rec(row + 1, used | (1u << j));
    }
    return total;
  };
  return rec(0, 0);
}

namespace {

std::vector<int> multiset_of(const MultiIndex& alpha) {
  std::vector<int> out;
  for (int i = 0; i < int(alpha.e.size()); ++i)
    for (int k = 0; k < alpha.e[i]; ++k) out.push_back(i);
  return out;
}

}  // namespace

Rational inner_product(const SymTensor& a, const SymTensor& b, const GramContext& ctx) {
  if (a.n() != b.n()) throw std::invalid_argument("inner product dimension mismatch");
  if (a.is_zero() || b.is_zero()) return 0;
  if (a.degree() != b.degree()) throw std::invalid_argument("inner product degree mismatch");
  const int p = a.degree();
  Rational total = 0;
  for (const auto& [alpha, ca] : a.coeffs()) {
    const auto rows = multiset_of(alpha);
    for (const auto& [beta, cb] : b.coeffs()) {
      const auto cols = multiset_of(beta);
      Matrix g(p, p);
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) g(i, j) = ctx.gram()(rows[i], cols[j]);
      total += ca * cb * permanent(g);
    }
  }
  return total;
}

SymTensor vector_tensor(int n, const Vector& v) {
  if (int(v.size()) != n) throw std::invalid_argument("vector_tensor length mismatch");
  SymTensor out(n, 1);
  for (int i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    std::vector<int> e(n, 0);
    e[i] = 1;
    out.add_coeff(MultiIndex{std::move(e)}, v[i]);
  }
  return out;
}

SymTensor metric_square(const GramContext& ctx) {
  const int n = ctx.n();
  SymTensor t(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      std::vector<int> e(n, 0);
      e[i] += 1;
      e[j] += 1;
      const Rational c = (i == j) ? ctx.gram_inv()(i, i) : Rational(2) * ctx.gram_inv()(i, j);
      if (c != 0) t.add_coeff(MultiIndex{std::move(e)}, c);
    }
  return t;
}

SymTensor lefschetz(const SymTensor& K, const GramContext& ctx) {
  return multiply(metric_square(ctx), K);
}

SymTensor metric_trace(const SymTensor& K, const GramContext& ctx) {
  if (K.degree() < 2) return SymTensor(K.n(), 0);
  SymTensor r(K.n(), K.degree() - 2);
  for (int k = 0; k < K.n(); ++k)
    for (int l = 0; l < K.n(); ++l) {
      const Rational& g = ctx.gram()(k, l);
      if (g == 0) continue;
      r = r + partial(partial(K, k), l) * g;
    }
  return r;
}

SymTensor apply_derivation(const Endomorphism& M, const SymTensor& K) {
  if (M.n() != K.n()) throw std::invalid_argument("derivation dimension mismatch");
  SymTensor r(K.n(), K.degree());
  for (int b = 0; b < K.n(); ++b) {
    SymTensor db = partial(K, b);
    if (db.is_zero()) continue;
    for (int a = 0; a < K.n(); ++a) {
      const Rational& c = M.m(a, b);
      if (c == 0) continue;
      r = r + multiply(SymTensor::basis_vector(K.n(), a), db) * c;
    }
  }
  return r;
}

SymTensor endo_to_sym(const Endomorphism& M, const GramContext& ctx) {
  const int n = M.n();
  SymTensor t(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rational& w = ctx.gram_inv()(i, j);
      if (w == 0) continue;
      for (int a = 0; a < n; ++a) {
        const Rational& c = M.m(a, i);
        if (c == 0) continue;
        std::vector<int> e(n, 0);
        e[a] += 1;
        e[j] += 1;
        t.add_coeff(MultiIndex{std::move(e)}, w * c / 2);
      }
    }
  return t;
}

TraceFreeSplit trace_free_split(const SymTensor& K, const GramContext& ctx) {
  const int p = K.degree();
  if (p < 2 || K.is_zero()) return {K, SymTensor(K.n(), p >= 2 ? p - 2 : 0)};
  const int n = K.n();
  Matrix lam_l = operator_matrix(n, p - 2, p - 2, [&](const SymTensor& t) {
    return metric_trace(lefschetz(t, ctx), ctx);
  });
  auto r = solve(lam_l, metric_trace(K, ctx).to_vector());
  if (!r) throw std::logic_error("trace-free split: Lambda o L unexpectedly singular");
  SymTensor R = SymTensor::from_vector(n, p - 2, *r);
  return {K - lefschetz(R, ctx), R};
}

Matrix operator_matrix(int n, int p_from, int p_to,
                       const std::function<SymTensor(const SymTensor&)>& apply) {
  const int dfrom = int(dim_sym(n, p_from)), dto = int(dim_sym(n, p_to));
  Matrix m(dto, dfrom);
  if (dfrom == 0 || dto == 0) return m;
  const auto& basis = monomial_basis(n, p_from);
  for (int j = 0; j < int(basis.size()); ++j) {
    SymTensor img = apply(SymTensor::monomial(n, basis[j], 1));
    if (img.is_zero()) continue;
    if (img.degree() != p_to) throw std::logic_error("operator image of unexpected degree");
    for (const auto& [alpha, c] : img.coeffs()) m(basis_index(n, alpha), j) = c;
  }
  return m;
}

Matrix sym_gram_matrix(int n, int p, const GramContext& ctx) {
  const auto& basis = monomial_basis(n, p);
  const int d = int(basis.size());
  Matrix g(d, d);
  for (int i = 0; i < d; ++i) {
    SymTensor a = SymTensor::monomial(n, basis[i], 1);
    for (int j = i; j < d; ++j) {
      Rational v = inner_product(a, SymTensor::monomial(n, basis[j], 1), ctx);
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

SymTensor substitute(const SymTensor& K, const Matrix& S) {
  if (S.rows() != K.n()) throw std::invalid_argument("substitution matrix shape mismatch");
  const int n_out = S.cols();
  std::vector<SymTensor> images;
  for (int i = 0; i < K.n(); ++i) {
    SymTensor li(n_out, 1);
    for (int j = 0; j < n_out; ++j) {
      if (S(i, j) == 0) continue;
      li = li + SymTensor::basis_vector(n_out, j) * S(i, j);
    }
    images.push_back(li);
  }
  SymTensor out(n_out, K.degree());
  for (const auto& [alpha, c] : K.coeffs()) {
    SymTensor term = SymTensor::scalar(n_out, c);
    for (int i = 0; i < K.n(); ++i)
      for (int k = 0; k < alpha.e[i]; ++k) term = multiply(term, images[i]);
    out = out + term;
  }
  return out;
}

}  // namespace kt
