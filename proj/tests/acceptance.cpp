// Acceptance suite: one check per release criterion, one pass/fail line
// each, all arithmetic exact. Run through ctest or directly.

#include <array>
#include <chrono>
#include <functional>
#include <iostream>
#include <vector>

#include "kt/catalog.hpp"
#include "kt/io.hpp"
#include "kt/search.hpp"

using namespace kt;

namespace {

int g_failures = 0;

void criterion(int num, const std::string& label, const std::function<bool()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string error;
  try {
    ok = body();
  } catch (const std::exception& e) {
    error = e.what();
  }
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
          .count();
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << num << ": " << label << " (" << ms
            << " ms)";
  if (!error.empty()) std::cout << " exception: " << error;
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

std::vector<std::unique_ptr<AlgebraContext>> catalog_contexts() {
  std::vector<std::unique_ptr<AlgebraContext>> out;
  for (const auto& entry : catalog_entries())
    out.push_back(std::make_unique<AlgebraContext>(entry.build(entry.default_params)));
  return out;
}

Matrix scaled_identity(int dim, const Rational& s) { return Matrix::identity(dim) * s; }

bool commutators_hold(const AlgebraContext& ctx, int pmax) {
  const int n = ctx.n();
  for (int p = 0; p <= pmax; ++p) {
    Matrix lam_l = ctx.lambda_op(p + 2) * ctx.lefschetz_op(p) -
                   ctx.lefschetz_op(p - 2) * ctx.lambda_op(p);
    if (lam_l != scaled_identity(int(ctx.dim(p)), Rational(2 * n + 4 * p))) return false;
    Matrix lam_d = ctx.lambda_op(p + 1) * ctx.d(p) - ctx.d(p - 2) * ctx.lambda_op(p);
    if (lam_d != ctx.delta(p) * Rational(-2)) return false;
    if (ctx.lefschetz_op(p + 1) * ctx.d(p) != ctx.d(p + 2) * ctx.lefschetz_op(p)) return false;
  }
  return true;
}

bool ml_commutator_holds(const AlgebraContext& ctx, Rng& rng) {
  const int n = ctx.n();
  Matrix s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      s(i, j) = Rational(rng.next_int(-3, 3));
      s(j, i) = s(i, j);
    }
  Endomorphism m{ctx.gram().gram_inv() * s};  // symmetric w.r.t. the metric
  SymTensor sm = endo_to_sym(m, ctx.gram());
  for (int j = 1; j <= 3; ++j) {
    SymTensor k(n, 2);
    for (const auto& alpha : monomial_basis(n, 2)) k.set_coeff(alpha, Rational(rng.next_int(-3, 3)));
    SymTensor lk = k;
    for (int i = 0; i < j; ++i) lk = lefschetz(lk, ctx.gram());
    SymTensor lhs = apply_derivation(m, lk);
    SymTensor ml = apply_derivation(m, k);
    for (int i = 0; i < j; ++i) ml = lefschetz(ml, ctx.gram());
    lhs = lhs - ml;
    SymTensor rhs = multiply(sm, k) * Rational(4 * j);
    for (int i = 0; i < j - 1; ++i) rhs = lefschetz(rhs, ctx.gram());
    if (!(lhs == rhs)) return false;
  }
  return true;
}

bool check_type_all(const AlgebraContext& ctx, int pmax) {
  for (int p = 0; p <= pmax; ++p) {
    KillingTypeReport rep = check_killing_type(ctx, p);
    if (!rep.verdict || !rep.cross_check) return false;
  }
  return true;
}

AlgebraContext with_random_gram(const MetricLieAlgebra& alg, Rng& rng) {
  AlgebraSpec spec = alg.spec();
  spec.gram = random_gram(spec.dimension, rng);
  return AlgebraContext(MetricLieAlgebra::create(spec));
}

SymTensor dim6_tensor_T() {
  SymTensor t(6, 2);
  t.add_coeff(MultiIndex{{1, 0, 0, 0, 0, 1}}, 1);
  t.add_coeff(MultiIndex{{0, 1, 0, 0, 1, 0}}, -1);
  t.add_coeff(MultiIndex{{0, 0, 1, 1, 0, 0}}, 1);
  return t;
}

}  // namespace

int main() {
  criterion(1, "operator calculus: [Lambda,L], [Lambda,d]=-2delta, [L,d]=0, p<=5; M-L^j rule", [] {
    Rng rng(101);
    for (const auto& ctx_ptr : catalog_contexts()) {
      const AlgebraContext& ctx = *ctx_ptr;
      const int pmax = ctx.n() >= 6 ? 5 : 5;
      if (!commutators_hold(ctx, pmax)) return false;
      if (!ml_commutator_holds(ctx, rng)) return false;
    }
    return true;
  });

  criterion(2, "d x = -2 S_x on all basis vectors; ad-invariant metrics give d = 0 up to p = 6", [] {
    for (const auto& ctx_ptr : catalog_contexts()) {
      const AlgebraContext& ctx = *ctx_ptr;
      const MetricLieAlgebra& alg = ctx.algebra();
      for (int i = 0; i < alg.dim(); ++i) {
        SymTensor lhs = ctx.d_apply(SymTensor::basis_vector(alg.dim(), i));
        if (!(lhs == sym_diff_vector(alg, alg.basis_coords(i)))) return false;
      }
      if (structural_predicates(alg).is_ad_invariant_metric)
        for (int p = 0; p <= 6; ++p)
          if (!ctx.d(p).is_zero()) return false;
    }
    return true;
  });

  criterion(3, "degrees 1 and 2: conformal Killing = Killing, plus 20 random-metric variants", [] {
    for (const auto& ctx_ptr : catalog_contexts())
      for (int p : {1, 2})
        if (!(conformal_killing_space(*ctx_ptr, p) == killing_space(*ctx_ptr, p))) return false;
    Rng rng(303);
    const auto& entries = catalog_entries();
    for (int v = 0; v < 20; ++v) {
      const auto& entry = entries[v % entries.size()];
      AlgebraContext ctx = with_random_gram(entry.build(entry.default_params), rng);
      for (int p : {1, 2})
        if (!(conformal_killing_space(ctx, p) == killing_space(ctx, p))) return false;
    }
    return true;
  });

  criterion(4, "dimension-6 worked example, all values exact", [] {
    AlgebraContext ctx(free_two_step_3gen());
    SymTensor t = dim6_tensor_T();
    if (!ctx.d_apply(t).is_zero()) return false;
    SymTensor sum(6, 1);
    for (int i = 3; i < 6; ++i) {
      std::vector<int> e(6, 0);
      e[i] = 1;
      sum.add_coeff(MultiIndex{e}, 1);
    }
    SymTensor k = multiply(t, sum);
    SymTensor expect_trace(6, 1);
    expect_trace.add_coeff(MultiIndex{{1, 0, 0, 0, 0, 0}}, 2);
    expect_trace.add_coeff(MultiIndex{{0, 1, 0, 0, 0, 0}}, -2);
    expect_trace.add_coeff(MultiIndex{{0, 0, 1, 0, 0, 0}}, 2);
    if (!(metric_trace(k, ctx.gram()) == expect_trace)) return false;
    TraceFreeSplit split = trace_free_split(k, ctx.gram());
    if (!(split.metric_part == expect_trace * Rational(1, 16))) return false;  // R = (1/8)(e1-e2+e3)
    SymTensor k0 = split.trace_free;
    if (ctx.d_apply(k0).is_zero()) return false;  // K0 is not Killing
    if (ctx.n() + 2 * k0.degree() - 2 != 10) return false;  // a0 = -1/10
    if (!tracefree_conformal_identity(ctx, k0)) return false;
    auto completion = killing_completion(ctx, k0);
    if (!completion) return false;
    return ctx.d_apply(k0 + lefschetz(*completion, ctx.gram())).is_zero();
  });

  criterion(5, "2-step algebras are of Killing type up to degree 6, identity and 3 random metrics", [] {
    Rng rng(505);
    for (const char* name : {"heisenberg-h3", "h3-plus-R", "free-2step-3gen"}) {
      MetricLieAlgebra alg = build_catalog(name);
      AlgebraContext base(alg);
      if (!check_type_all(base, 6)) return false;
      for (int v = 0; v < 3; ++v)
        if (!check_type_all(with_random_gram(alg, rng), 6)) return false;
    }
    return true;
  });

  criterion(6, "projection recursion and exact divergence for 2-step trace-free conformal tensors", [] {
    for (const char* name : {"heisenberg-h3", "h3-plus-R", "free-2step-3gen"}) {
      MetricLieAlgebra alg = build_catalog(name);
      AlgebraContext ctx(alg);
      TwoStepContext ts(alg);
      for (int p = 1; p <= 4; ++p) {
        Subspace ck = conformal_killing_space(ctx, p);
        for (int i = 0; i < ck.dim(); ++i) {
          SymTensor k0 =
              trace_free_split(SymTensor::from_vector(ctx.n(), p, ck.basis_vector(i)), ctx.gram())
                  .trace_free;
          if (k0.is_zero()) continue;
          SymTensor adapted = ts.adapt(k0);
          for (int l = 0; l <= p; ++l)
            for (int r = 0; r <= 3; ++r)
              if (!hr_identity(ts, adapted, l, r)) return false;
          if (p >= 1 && !solve(ctx.d(p - 2), ctx.delta_apply(k0).to_vector()).has_value())
            return false;
        }
      }
    }
    return true;
  });

  criterion(7, "Milnor frames: Killing type up to degree 6 and J,L spans across sign patterns", [] {
    const std::vector<std::array<int, 3>> patterns = {
        {1, 2, 3}, {-1, 2, 3}, {1, -2, 3}, {1, 2, -3}, {-1, -2, -3}};
    for (const auto& pattern : patterns) {
      MilnorBasis m{pattern[0], pattern[1], pattern[2]};
      if (m.alpha() == 0 || m.beta() == 0 || m.gamma() == 0) return false;
      AlgebraContext ctx(m.algebra());
      if (!check_type_all(ctx, 6)) return false;
      for (int p = 1; p <= 6; ++p) {
        Subspace k = killing_space(ctx, p);
        const int expect = (p % 2 == 1) ? 0 : p / 2 + 1;
        if (k.dim() != expect) return false;
        if (!killing_spanned_by_qjl(ctx, m, p)) return false;
      }
    }
    return true;
  });

  criterion(8, "central extensions of Milnor frames: 2-form identities and Killing type to degree 5", [] {
    Rng rng(808);
    MilnorBasis m{1, 2, 3};
    for (int trial = 0; trial < 10; ++trial) {
      Rational p(rng.next_int(-4, 4)), q(rng.next_int(-4, 4)), r(rng.next_int(-4, 4));
      if (!milnor_identities(m, p, q, r).all()) return false;
    }
    for (const auto& abc : std::vector<std::array<int, 3>>{{1, 2, 3}, {1, 1, 1}, {1, 2, -3}}) {
      MilnorBasis mb{abc[0], abc[1], abc[2]};
      Matrix omega(3, 3);
      const Rational p(rng.next_int(-3, 3)), q(rng.next_int(-3, 3)), r(rng.next_int(-3, 3));
      omega(0, 1) = p;
      omega(1, 0) = -p;
      omega(1, 2) = q;
      omega(2, 1) = -q;
      omega(2, 0) = r;
      omega(0, 2) = -r;
      if (!omega_is_closed(mb.algebra(), omega)) return false;  // Jacobi for the extension
      MetricLieAlgebra ext = central_extension({mb.algebra(), omega});
      if (!check_type_all(AlgebraContext(ext), 5)) return false;
    }
    return true;
  });

  criterion(9, "codimension-1 abelian ideals in seeded 4-dim algebras with line commutator", [] {
    Rng rng(909);
    int built = 0;
    for (int trial = 0; built < 10 && trial < 50; ++trial) {
      Rational lambda = 0, alpha = 0;
      if (trial % 2 == 0)
        alpha = rng.next_int(1, 3);  // central-u branch
      else
        lambda = rng.next_int(1, 3);  // ker-f branch
      const Rational beta(rng.next_int(-3, 3)), gamma(rng.next_int(-3, 3));
      if (lambda == 0 && alpha == 0 && beta == 0 && gamma == 0) continue;
      AlgebraSpec spec = solvable4_dimg1(lambda, alpha, beta, gamma).spec();
      spec.gram = random_gram(4, rng);
      MetricLieAlgebra alg = MetricLieAlgebra::create(spec);
      ++built;
      auto ideal = codim1_abelian_ideal(alg);
      if (!ideal || ideal->dim() != 3 || !is_abelian_ideal(alg, *ideal)) return false;
      if (!check_type_all(AlgebraContext(alg), 5)) return false;
    }
    return built == 10;
  });

  criterion(10, "d and delta are adjoint on full bases up to degree 4 exactly for unimodular entries", [] {
    bool found_witness = false;
    for (const auto& ctx_ptr : catalog_contexts()) {
      const AlgebraContext& ctx = *ctx_ptr;
      const bool unimodular = structural_predicates(ctx.algebra()).is_unimodular;
      bool adjoint = true;
      for (int p = 0; p <= 3 && adjoint; ++p)
        adjoint = (ctx.d(p).transpose() * ctx.sym_gram(p + 1) == ctx.sym_gram(p) * ctx.delta(p + 1));
      if (adjoint != unimodular) return false;
    }
    // concrete hand-checked witness pair on the non-unimodular entry
    AlgebraContext s2(solvable2());
    SymTensor a = SymTensor::basis_vector(2, 1);
    SymTensor b = SymTensor::monomial(2, MultiIndex{{1, 1}}, 1);
    found_witness = inner_product(s2.d_apply(a), b, s2.gram()) == 1 &&
                    inner_product(a, s2.delta_apply(b), s2.gram()) == 2;
    return found_witness;
  });

  criterion(11, "seeded search emits byte-identical JSON across runs", [] {
    SearchConfig config;
    config.family = "solvable4-heisenberg-commutator";
    config.trials = 5;
    config.seed = 1111;
    config.max_degree = 4;
    SearchOutcome a = run_search(config);
    SearchOutcome b = run_search(config);
    return a.summary.dump(2) == b.summary.dump(2) && a.summary["killing_type_count"] == 5;
  });

  std::cout << (g_failures == 0 ? "ACCEPTANCE: all criteria passed"
                                : "ACCEPTANCE: " + std::to_string(g_failures) + " criteria FAILED")
            << std::endl;
  return g_failures == 0 ? 0 : 1;
}
