#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kt/catalog.hpp"
#include "kt/search.hpp"

using namespace kt;

namespace {

MultiIndex mi(std::vector<int> e) { return MultiIndex{std::move(e)}; }

bool connection_invariants_hold(const MetricLieAlgebra& alg) {
  Connection conn = koszul(alg);
  const Matrix& g = alg.gram().gram();
  for (int i = 0; i < alg.dim(); ++i) {
    const Matrix& a = conn.nabla[i].m;
    // metric compatibility: A^T G + G A = 0
    if (!(a.transpose() * g + g * a).is_zero()) return false;
  }
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = 0; j < alg.dim(); ++j) {
      Vector lhs = sub(conn.nabla[i].m * alg.basis_coords(j), conn.nabla[j].m * alg.basis_coords(i));
      if (lhs != alg.bracket(i, j)) return false;
    }
  return true;
}

std::vector<MetricLieAlgebra> sample_algebras() {
  Rng rng(404);
  std::vector<MetricLieAlgebra> out;
  out.push_back(heisenberg3());
  out.push_back(MilnorBasis{1, 2, 3}.algebra());
  out.push_back(solvable2());
  out.push_back(free_two_step_3gen());
  // random-metric variants
  for (const char* name : {"heisenberg-h3", "milnor"}) {
    AlgebraSpec spec = build_catalog(name).spec();
    spec.gram = random_gram(spec.dimension, rng);
    spec.name += "+randg";
    out.push_back(MetricLieAlgebra::create(spec));
  }
  return out;
}

}  // namespace

TEST_CASE("validation accepts the catalog and rejects broken input") {
  AlgebraSpec abelian;
  abelian.name = "abelian";
  abelian.dimension = 3;
  CHECK(MetricLieAlgebra::validate(abelian).ok());

  AlgebraSpec h3;
  h3.name = "h3";
  h3.dimension = 3;
  h3.brackets[{0, 1}] = Vector{0, 0, 1};
  CHECK(MetricLieAlgebra::validate(h3).ok());

  // [e1,e2]=e3, [e2,e3]=e1+e2, [e3,e1]=e2 violates Jacobi on (1,2,3).
  AlgebraSpec bad;
  bad.name = "broken";
  bad.dimension = 3;
  bad.brackets[{0, 1}] = Vector{0, 0, 1};
  bad.brackets[{1, 2}] = Vector{1, 1, 0};
  bad.brackets[{0, 2}] = Vector{0, -1, 0};
  ValidationResult r = MetricLieAlgebra::validate(bad);
  REQUIRE_FALSE(r.ok());
  CHECK(r.issues[0].kind == "jacobi");
  CHECK(r.issues[0].detail.find("(1,2,3,") != std::string::npos);

  AlgebraSpec badgram;
  badgram.name = "badgram";
  badgram.dimension = 2;
  Matrix g(2, 2);
  g(0, 0) = 1;
  g(1, 1) = -1;
  badgram.gram = g;
  ValidationResult rg = MetricLieAlgebra::validate(badgram);
  REQUIRE_FALSE(rg.ok());
  CHECK(rg.issues[0].kind == "gram");
  CHECK(rg.issues[0].detail.find("2") != std::string::npos);
}

TEST_CASE("ad and its metric adjoint") {
  MetricLieAlgebra ab = abelian_algebra(3);
  CHECK(ab.ad(Vector{1, 1, 1}).m.is_zero());

  MetricLieAlgebra h3 = heisenberg3();
  Endomorphism ad1 = h3.ad_basis(0);
  CHECK(ad1.m * Vector{0, 1, 0} == Vector{0, 0, 1});  // e2 -> e3

  // ad-invariant metric: ad* = -ad on every basis vector
  MetricLieAlgebra su2 = MilnorBasis{1, 1, 1}.algebra();
  for (int i = 0; i < 3; ++i)
    CHECK((su2.ad_star(su2.basis_coords(i)).m + su2.ad_basis(i).m).is_zero());
}

TEST_CASE("Koszul connection values on h3") {
  MetricLieAlgebra h3 = heisenberg3();
  Connection conn = koszul(h3);
  CHECK(conn.nabla[0].m * Vector{0, 1, 0} == Vector{0, 0, Rational(1, 2)});   // ∇_1 e2 = e3/2
  CHECK(conn.nabla[0].m * Vector{0, 0, 1} == Vector{0, Rational(-1, 2), 0});  // ∇_1 e3 = -e2/2
  CHECK(is_zero(conn.nabla[2].m * Vector{0, 0, 1}));                          // ∇_3 e3 = 0
}

TEST_CASE("abelian and bi-invariant connections") {
  Connection flat = koszul(abelian_algebra(4));
  for (const auto& a : flat.nabla) CHECK(a.m.is_zero());

  // ad-invariant metric: nabla_x = ad_x / 2 (substitute ad* = -ad in Koszul)
  MetricLieAlgebra su2 = MilnorBasis{1, 1, 1}.algebra();
  Connection conn = koszul(su2);
  for (int i = 0; i < 3; ++i) CHECK(conn.nabla[i].m == su2.ad_basis(i).m * Rational(1, 2));
}

TEST_CASE("connection invariants hold for sampled algebras") {
  for (const auto& alg : sample_algebras()) CHECK(connection_invariants_hold(alg));
}

TEST_CASE("d vanishes identically for ad-invariant metrics") {
  AlgebraContext su2(MilnorBasis{1, 1, 1}.algebra());
  AlgebraContext ab(abelian_algebra(3));
  for (int p = 0; p <= 6; ++p) {
    CHECK(su2.d(p).is_zero());
    CHECK(ab.d(p).is_zero());
  }
}

TEST_CASE("d on degree one for h3 and Milnor frames") {
  AlgebraContext h3(heisenberg3());
  SymTensor de1 = h3.d_apply(SymTensor::basis_vector(3, 0));
  CHECK(de1.coeff(mi({0, 1, 1})) == -1);
  CHECK(de1.coeffs().size() == 1);
  SymTensor de2 = h3.d_apply(SymTensor::basis_vector(3, 1));
  CHECK(de2.coeff(mi({1, 0, 1})) == 1);
  CHECK(de2.coeffs().size() == 1);
  CHECK(h3.d_apply(SymTensor::basis_vector(3, 2)).is_zero());

  MilnorBasis m{1, 2, 3};
  AlgebraContext milnor(m.algebra());
  SymTensor dx = milnor.d_apply(SymTensor::basis_vector(3, 0));
  CHECK(dx == SymTensor::monomial(3, mi({0, 1, 1}), m.alpha()));
  SymTensor dy = milnor.d_apply(SymTensor::basis_vector(3, 1));
  CHECK(dy == SymTensor::monomial(3, mi({1, 0, 1}), m.beta()));
  SymTensor dz = milnor.d_apply(SymTensor::basis_vector(3, 2));
  CHECK(dz == SymTensor::monomial(3, mi({1, 1, 0}), m.gamma()));
}

TEST_CASE("d x = -2 S_{ad_x} on every basis vector of sampled algebras") {
  for (const auto& alg : sample_algebras()) {
    AlgebraContext ctx(alg);
    for (int i = 0; i < alg.dim(); ++i) {
      SymTensor lhs = ctx.d_apply(SymTensor::basis_vector(alg.dim(), i));
      CHECK(lhs == sym_diff_vector(alg, alg.basis_coords(i)));
    }
  }
}

TEST_CASE("delta is the metric adjoint of d exactly for unimodular algebras") {
  // d_p^T G_{p+1} = G_p delta_{p+1} as exact matrices
  AlgebraContext h3(heisenberg3());
  for (int p = 0; p <= 4; ++p)
    CHECK(h3.d(p).transpose() * h3.sym_gram(p + 1) == h3.sym_gram(p) * h3.delta(p + 1));

  // non-unimodular witness, computed by hand: A = e2, B = e1*e2 gives
  // <dA, B> = 1 but <A, delta B> = 2.
  AlgebraContext s2(solvable2());
  SymTensor a = SymTensor::basis_vector(2, 1);
  SymTensor b = SymTensor::monomial(2, mi({1, 1}), 1);
  Rational lhs = inner_product(s2.d_apply(a), b, s2.gram());
  Rational rhs = inner_product(a, s2.delta_apply(b), s2.gram());
  CHECK(lhs == 1);
  CHECK(rhs == 2);
  CHECK(lhs != rhs);
}

TEST_CASE("operator relations [Lambda, d] = -2 delta and [L, d] = 0") {
  for (const auto& alg : sample_algebras()) {
    AlgebraContext ctx(alg);
    for (int p = 0; p <= 3; ++p) {
      Matrix lam_d = ctx.lambda_op(p + 1) * ctx.d(p);
      Matrix d_lam = ctx.d(p - 2) * ctx.lambda_op(p);
      CHECK(lam_d - d_lam == ctx.delta(p) * Rational(-2));
      CHECK(ctx.lefschetz_op(p + 1) * ctx.d(p) == ctx.d(p + 2) * ctx.lefschetz_op(p));
    }
  }
}

TEST_CASE("d is a derivation on sampled products") {
  Rng rng(3);
  for (const auto& alg : sample_algebras()) {
    AlgebraContext ctx(alg);
    const int n = alg.dim();
    SymTensor a(n, 1), b(n, 2);
    for (const auto& alpha : monomial_basis(n, 1)) a.set_coeff(alpha, Rational(rng.next_int(-3, 3)));
    for (const auto& alpha : monomial_basis(n, 2)) b.set_coeff(alpha, Rational(rng.next_int(-3, 3)));
    CHECK(ctx.d_apply(multiply(a, b)) ==
          multiply(ctx.d_apply(a), b) + multiply(a, ctx.d_apply(b)));
  }
}

TEST_CASE("structural predicates") {
  StructuralReport h3 = structural_predicates(heisenberg3());
  CHECK(h3.is_two_step_nilpotent);
  CHECK(h3.center.dim() == 1);
  CHECK(h3.derived_ideal == h3.center);
  CHECK(h3.is_unimodular);
  CHECK(h3.is_solvable);
  CHECK_FALSE(h3.is_abelian);

  StructuralReport su2 = structural_predicates(MilnorBasis{1, 1, 1}.algebra());
  CHECK(su2.is_ad_invariant_metric);
  CHECK(su2.center.dim() == 0);
  CHECK_FALSE(su2.is_solvable);

  StructuralReport free2 = structural_predicates(free_two_step_3gen());
  CHECK(free2.center.dim() == 3);
  CHECK(free2.derived_ideal == free2.center);
  CHECK(free2.center.contains(Vector{0, 0, 0, 0, 1, 0}));

  StructuralReport s2 = structural_predicates(solvable2());
  CHECK_FALSE(s2.is_unimodular);
  CHECK(s2.is_solvable);

  StructuralReport ab = structural_predicates(abelian_algebra(2));
  CHECK(ab.is_abelian);
  CHECK_FALSE(ab.is_two_step_nilpotent);
}

TEST_CASE("two-step grading: d raises the center degree by one") {
  // For block-diagonal metrics, d kills Sym^q(z) and maps v-degree-l
  // monomials to v-degree-l tensors (one more central factor).
  for (MetricLieAlgebra alg : {heisenberg3(), free_two_step_3gen()}) {
    TwoStepContext ts(alg);
    const AlgebraContext& ctx = ts.adapted();
    const int n = ctx.n();
    for (int p = 1; p <= 3; ++p) {
      for (const auto& alpha : monomial_basis(n, p)) {
        SymTensor k = SymTensor::monomial(n, alpha, 1);
        const int l = ts.v_degree_max(k);
        SymTensor dk = ctx.d_apply(k);
        if (l == 0) {
          CHECK(dk.is_zero());  // purely central monomial
        } else if (!dk.is_zero()) {
          CHECK(ts.project_v_degree(dk, l) == dk);
        }
      }
    }
  }
}

TEST_CASE("basis change preserves killing dimensions") {
  Rng rng(55);
  MetricLieAlgebra h3 = heisenberg3();
  Matrix p(3, 3);
  do {
    p = Matrix(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) p(i, j) = Rational(rng.next_int(-2, 2));
  } while (determinant(p) == 0);
  MetricLieAlgebra moved = h3.change_basis(p);
  AlgebraContext a(h3), b(moved);
  for (int deg = 0; deg <= 3; ++deg)
    CHECK(killing_space(a, deg).dim() == killing_space(b, deg).dim());
}
