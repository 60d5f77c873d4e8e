#include "kt/lie.hpp"

#include <sstream>
#include <stdexcept>

namespace kt {

namespace {

std::vector<std::string> default_names(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("e" + std::to_string(i));
  return names;
}

}  // namespace

MetricLieAlgebra::MetricLieAlgebra(AlgebraSpec spec, GramContext gram)
    : spec_(std::move(spec)),
      name_(spec_.name),
      n_(spec_.dimension),
      names_(spec_.basis_names.empty() ? default_names(n_) : spec_.basis_names),
      gram_(std::move(gram)) {}

ValidationResult MetricLieAlgebra::validate(const AlgebraSpec& spec) {
  ValidationResult out;
  const int n = spec.dimension;
  if (n < 1) {
    out.issues.push_back({"shape", "dimension must be >= 1"});
    return out;
  }
  for (const auto& [ij, v] : spec.brackets) {
    auto [i, j] = ij;
    if (i < 0 || j < 0 || i >= n || j >= n || i >= j)
      out.issues.push_back({"shape", "bracket indices out of range or not i < j"});
    if (int(v.size()) != n) out.issues.push_back({"shape", "bracket result of wrong length"});
  }
  if (!out.issues.empty()) return out;

  Matrix g = spec.gram.value_or(Matrix::identity(n));
  if (g.rows() != n || g.cols() != n || !g.is_symmetric()) {
    out.issues.push_back({"gram", "Gram matrix must be symmetric n x n"});
    return out;
  }
  int minor = 0;
  if (!is_positive_definite(g, &minor)) {
    out.issues.push_back({"gram", "leading principal minor " + std::to_string(minor) +
                                      " is not positive"});
    return out;
  }

  MetricLieAlgebra alg(spec, GramContext(g));

  // Jacobi on basis triples i < j < k; alternating trilinearity covers the rest.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Vector s = alg.bracket(alg.bracket(i, j), alg.basis_coords(k));
        Vector t = alg.bracket(alg.bracket(j, k), alg.basis_coords(i));
        Vector u = alg.bracket(alg.bracket(k, i), alg.basis_coords(j));
        for (int l = 0; l < n; ++l) {
          Rational total = s[l] + t[l] + u[l];
          if (total != 0) {
            std::ostringstream msg;
            msg << "Jacobi fails on (i,j,k,l)=(" << i + 1 << "," << j + 1 << "," << k + 1 << ","
                << l + 1 << "): coefficient " << rational_str(total);
            out.issues.push_back({"jacobi", msg.str()});
          }
        }
      }
  if (!out.issues.empty()) return out;
  out.algebra = std::move(alg);
  return out;
}

MetricLieAlgebra MetricLieAlgebra::create(const AlgebraSpec& spec) {
  ValidationResult r = validate(spec);
  if (!r.ok()) {
    std::string msg = "invalid Lie algebra '" + spec.name + "':";
    for (const auto& issue : r.issues) msg += " [" + issue.kind + "] " + issue.detail;
    throw std::invalid_argument(msg);
  }
  return *std::move(r.algebra);
}

Vector MetricLieAlgebra::basis_coords(int i) const {
  Vector v = zero_vector(n_);
  v[i] = 1;
  return v;
}

Vector MetricLieAlgebra::bracket(int i, int j) const {
  if (i == j) return zero_vector(n_);
  const bool flip = i > j;
  if (flip) std::swap(i, j);
  auto it = spec_.brackets.find({i, j});
  Vector v = (it == spec_.brackets.end()) ? zero_vector(n_) : it->second;
  if (flip)
    for (auto& c : v) c = -c;
  return v;
}

Vector MetricLieAlgebra::bracket(const Vector& x, const Vector& y) const {
  Vector out = zero_vector(n_);
  for (const auto& [ij, v] : spec_.brackets) {
    auto [i, j] = ij;
    const Rational c = x[i] * y[j] - x[j] * y[i];
    if (c == 0) continue;
    for (int k = 0; k < n_; ++k) out[k] += c * v[k];
  }
  return out;
}

Endomorphism MetricLieAlgebra::ad(const Vector& x) const {
  Matrix m(n_, n_);
  for (int j = 0; j < n_; ++j) {
    Vector col = bracket(x, basis_coords(j));
    for (int i = 0; i < n_; ++i) m(i, j) = col[i];
  }
  return Endomorphism{std::move(m)};
}

MetricLieAlgebra MetricLieAlgebra::change_basis(const Matrix& P) const {
  if (P.rows() != n_ || P.cols() != n_) throw std::invalid_argument("basis change must be square");
  Matrix Pinv = inverse(P);
  AlgebraSpec s;
  s.name = name_ + "@basis";
  s.dimension = n_;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      Vector br = Pinv * bracket(P.col(i), P.col(j));
      if (!is_zero(br)) s.brackets[{i, j}] = br;
    }
  s.gram = P.transpose() * gram_.gram() * P;
  return create(s);
}

Connection koszul(const MetricLieAlgebra& alg) {
  const int n = alg.dim();
  Connection conn;
  std::vector<Endomorphism> ad(n), ad_st(n);
  for (int i = 0; i < n; ++i) {
    ad[i] = alg.ad_basis(i);
    ad_st[i] = ad[i].metric_adjoint(alg.gram());
  }
  for (int i = 0; i < n; ++i) {
    Matrix a(n, n);
    for (int j = 0; j < n; ++j)
      for (int r = 0; r < n; ++r)
        // column j: ([b_i,b_j] - ad*_i b_j - ad*_j b_i) / 2
        a(r, j) = (ad[i].m(r, j) - ad_st[i].m(r, j) - ad_st[j].m(r, i)) / 2;
    conn.nabla.push_back(Endomorphism{std::move(a)});
  }
  return conn;
}

StructuralReport structural_predicates(const MetricLieAlgebra& alg) {
  const int n = alg.dim();
  StructuralReport rep{Subspace(n), Subspace(n)};

  // Center: kernel of x -> ad_x, stacked as an n^2 x n matrix.
  Matrix stacked(n * n, n);
  for (int c = 0; c < n; ++c) {
    Endomorphism a = alg.ad_basis(c);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) stacked(i * n + j, c) = a.m(i, j);
  }
  rep.center = kernel(stacked);

  std::vector<Vector> gens;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vector v = alg.bracket(i, j);
      if (!is_zero(v)) gens.push_back(std::move(v));
    }
  rep.derived_ideal =
      gens.empty() ? Subspace(n) : Subspace::span_of_rows(Matrix::from_rows(gens, n));

  rep.is_abelian = rep.derived_ideal.dim() == 0;
  rep.is_unimodular = true;
  rep.is_ad_invariant_metric = true;
  for (int i = 0; i < n; ++i) {
    Endomorphism a = alg.ad_basis(i);
    Rational tr = 0;
    for (int k = 0; k < n; ++k) tr += a.m(k, k);
    if (tr != 0) rep.is_unimodular = false;
    if (!a.is_skew(alg.gram())) rep.is_ad_invariant_metric = false;
  }
  rep.is_two_step_nilpotent = !rep.is_abelian && rep.center.contains(rep.derived_ideal);

  // Derived series for solvability.
  Subspace term = rep.derived_ideal;
  while (term.dim() > 0) {
    std::vector<Vector> next;
    for (int i = 0; i < term.dim(); ++i)
      for (int j = i + 1; j < term.dim(); ++j) {
        Vector v = alg.bracket(term.basis_vector(i), term.basis_vector(j));
        if (!is_zero(v)) next.push_back(std::move(v));
      }
    Subspace nxt =
        next.empty() ? Subspace(n) : Subspace::span_of_rows(Matrix::from_rows(next, n));
    if (nxt.dim() == term.dim()) break;  // stabilized, not solvable
    term = nxt;
  }
  rep.is_solvable = term.dim() == 0;
  return rep;
}

AlgebraContext::AlgebraContext(MetricLieAlgebra alg) : alg_(std::move(alg)), conn_(koszul(alg_)) {}

SymTensor AlgebraContext::d_apply(const SymTensor& K) const {
  const int n = alg_.dim();
  SymTensor out(n, K.degree() + 1);
  if (K.is_zero()) return out;
  for (int j = 0; j < n; ++j) {
    SymTensor covar = apply_derivation(conn_.nabla[j], K);
    if (covar.is_zero()) continue;
    for (int i = 0; i < n; ++i) {
      const Rational& w = gram().gram_inv()(i, j);
      if (w == 0) continue;
      out = out + multiply(SymTensor::basis_vector(n, i), covar) * w;
    }
  }
  return out;
}

SymTensor AlgebraContext::delta_apply(const SymTensor& K) const {
  const int n = alg_.dim();
  SymTensor out(n, K.degree() - 1);
  if (K.is_zero() || K.degree() < 1) return out;
  for (int j = 0; j < n; ++j) {
    SymTensor covar = apply_derivation(conn_.nabla[j], K);
    if (covar.is_zero()) continue;
    for (int i = 0; i < n; ++i) {
      const Rational& w = gram().gram_inv()(i, j);
      if (w == 0) continue;
      out = out - contract(alg_.basis_coords(i), covar, gram()) * w;
    }
  }
  return out;
}

const Matrix& AlgebraContext::memo(std::map<int, Matrix>& store, int p,
                                   const std::function<Matrix()>& build) const {
  std::scoped_lock lock(mu_);
  auto it = store.find(p);
  if (it == store.end()) it = store.emplace(p, build()).first;
  return it->second;
}

const Matrix& AlgebraContext::d(int p) const {
  return memo(d_, p, [&] {
    return operator_matrix(n(), p, p + 1, [&](const SymTensor& t) { return d_apply(t); });
  });
}

const Matrix& AlgebraContext::delta(int p) const {
  return memo(delta_, p, [&] {
    return operator_matrix(n(), p, p - 1, [&](const SymTensor& t) { return delta_apply(t); });
  });
}

const Matrix& AlgebraContext::lefschetz_op(int p) const {
  return memo(lef_, p, [&] {
    if (p < 0) return Matrix(int(dim(p + 2)), 0);
    return operator_matrix(n(), p, p + 2,
                           [&](const SymTensor& t) { return lefschetz(t, gram()); });
  });
}

const Matrix& AlgebraContext::lambda_op(int p) const {
  return memo(lam_, p, [&] {
    return operator_matrix(n(), p, p - 2,
                           [&](const SymTensor& t) { return metric_trace(t, gram()); });
  });
}

const Matrix& AlgebraContext::sym_gram(int p) const {
  return memo(gram_, p, [&] { return sym_gram_matrix(n(), p, gram()); });
}

SymTensor sym_diff_vector(const MetricLieAlgebra& alg, const Vector& x) {
  return endo_to_sym(alg.ad(x), alg.gram()) * Rational(-2);
}

}  // namespace kt
