#pragma once

#include <optional>
#include <string>

#include "kt/lie.hpp"

namespace kt {

/// Per-degree decision data for the property "every conformal Killing
/// tensor is a Killing tensor plus a metric multiple".
struct KillingTypeReport {
  int degree = 0;
  long dim_sym_p = 0;
  int dim_killing = 0;       // ker d_p
  int dim_image_L = 0;       // L : Sym^{p-2} -> Sym^p
  int dim_conformal = 0;     // d_p^{-1}(Im L)
  int dim_killing_type = 0;  // ker d_p + Im L
  bool verdict = false;      // conformal space equals killing-type space
  bool cross_check = false;  // image-intersection formulation agrees
  std::optional<SymTensor> witness;  // conformal tensor outside the killing-type space
};

/// ker d_p: the Killing tensors of degree p.
Subspace killing_space(const AlgebraContext& ctx, int p);

/// d_p^{-1}(Im L): kernel of the quotient map by Im L composed with d_p.
Subspace conformal_killing_space(const AlgebraContext& ctx, int p);

/// ker d_p + Im(L : Sym^{p-2} -> Sym^p).
Subspace killing_type_space(const AlgebraContext& ctx, int p);

/// The unique B with d K = L B, or nullopt when K is not conformal Killing.
std::optional<SymTensor> conformal_factor(const AlgebraContext& ctx, const SymTensor& K);

/// Full per-degree report including the independent image-intersection
/// cross-check and a normalized witness when the verdict is negative.
KillingTypeReport check_killing_type(const AlgebraContext& ctx, int p);

/// Any R with d(K + L R) = 0, or nullopt; a conformal Killing K with no
/// completion is a genuine counterexample tensor.
std::optional<SymTensor> killing_completion(const AlgebraContext& ctx, const SymTensor& K);

/// For trace-free K0: whether d K0 = a0 L delta K0 with a0 = -1/(n+2p-2).
bool tracefree_conformal_identity(const AlgebraContext& ctx, const SymTensor& K0);

/// The four equivalent characterizations for a conformal Killing tensor;
/// they must all agree.
struct KillingTypeEquivalences {
  bool tensor_completes = false;      // K is of Killing type
  bool trace_free_completes = false;  // K0 is of Killing type
  bool factor_is_exact = false;       // B lies in Im d
  bool divergence_is_exact = false;   // delta K0 lies in Im d
  bool consistent() const {
    return tensor_completes == trace_free_completes && tensor_completes == factor_is_exact &&
           tensor_completes == divergence_is_exact;
  }
};
KillingTypeEquivalences killing_type_equivalences(const AlgebraContext& ctx, const SymTensor& K);

/// Adapted frame for a 2-step nilpotent algebra: center z, its orthogonal
/// complement v, Gram made block-diagonal by a rational basis change.
class TwoStepContext {
 public:
  explicit TwoStepContext(const MetricLieAlgebra& alg);

  const AlgebraContext& adapted() const { return *ctx_; }
  int nv() const { return nv_; }
  int nz() const { return nz_; }
  const Matrix& basis_change() const { return P_; }

  /// Expresses a tensor given in the original basis in adapted coordinates.
  SymTensor adapt(const SymTensor& K) const;

  /// j(z) on the v block: <j(z)x, y> = <z, [x,y]>, skew by construction.
  /// Takes adapted coordinates of a central vector (v part must vanish).
  Endomorphism j_map(const Vector& z_adapted) const;

  /// Component of v-degree l (total exponent over the v variables).
  SymTensor project_v_degree(const SymTensor& K, int l) const;
  int v_degree_max(const SymTensor& K) const;

  /// Grading operators: K^{(l)} scaled by l (resp. by the z-degree p - l).
  SymTensor degree_v(const SymTensor& K) const;
  SymTensor degree_z(const SymTensor& K) const;

  SymTensor lefschetz_v(const SymTensor& K) const;
  SymTensor lefschetz_z(const SymTensor& K) const;
  SymTensor lambda_v(const SymTensor& K) const;
  SymTensor lambda_z(const SymTensor& K) const;

  /// b_0 = 0, b_{r+1} = b_r - 2 n_v - 4(l + 2r).
  Rational b_sequence(int l, int r) const;

 private:
  Matrix P_;      // columns: v basis then z basis, in original coordinates
  Matrix subst_;  // (P^{-1})^T, the tensor substitution
  int nv_ = 0, nz_ = 0;
  std::shared_ptr<AlgebraContext> ctx_;
  SymTensor metric_v_, metric_z_;  // block pieces of the metric tensor
};

/// The recursion identity for projected trace-free conformal tensors on a
/// 2-step algebra; exact check at fixed (l, r). K0 in adapted coordinates.
bool hr_identity(const TwoStepContext& ts, const SymTensor& K0, int l, int r);

/// Hypotheses of the reductive-slice criterion for the hyperplane E = t^perp:
/// ad_t preserves E and the metric is ad-invariant along E.
struct SliceCheck {
  bool preserves_complement = false;
  bool metric_invariant_on_complement = false;
  std::string witness;  // first failing triple, when any
  bool ok() const { return preserves_complement && metric_invariant_on_complement; }
};
SliceCheck check_reductive_slice(const AlgebraContext& ctx, const Vector& t);

/// L_E = L - t^2/|t|^2, the metric tensor of the hyperplane t^perp.
SymTensor slice_metric_tensor(const AlgebraContext& ctx, const Vector& t);

/// Killing tensors have only even exponents in the t direction (checked on
/// computed bases, adapted coordinates) for degrees up to pmax.
bool killing_even_in_direction(const AlgebraContext& ctx, const Vector& t, int pmax);

/// One-dimensional central extension of `base` by the closed 2-form omega:
/// [x,y] = [x,y]_h + omega(x,y) t with t central, unit and orthogonal to h.
struct CentralExtensionSpec {
  MetricLieAlgebra base;
  Matrix omega;  // antisymmetric matrix of the 2-form on the base
};
bool omega_is_closed(const MetricLieAlgebra& base, const Matrix& omega, std::string* witness = nullptr);
MetricLieAlgebra central_extension(const CentralExtensionSpec& spec);

/// Orthonormal frame of a 3-dimensional simple metric Lie algebra:
/// [x,y] = a z, [y,z] = b x, [z,x] = c y with a, b, c nonzero.
struct MilnorBasis {
  Rational a, b, c;

  Rational alpha() const { return c - a; }
  Rational beta() const { return a - b; }
  Rational gamma() const { return b - c; }
  MetricLieAlgebra algebra() const;

  /// J = alpha y^2 - beta x^2, a Killing 2-tensor companion to L.
  SymTensor j_tensor() const;
};

/// The identities tying a 2-form omega = p x^y + q y^z + r z^x to the
/// distinguished Killing tensors: omega(J) = d xi, omega(L) = 0 = omega(xi)
/// with xi = 2(q x + r y + p z).
struct MilnorIdentityReport {
  SymTensor j;
  bool j_is_killing = false;
  SymTensor xi;
  bool omega_j_equals_d_xi = false;
  bool omega_l_vanishes = false;
  bool omega_xi_vanishes = false;
  bool all() const { return j_is_killing && omega_j_equals_d_xi && omega_l_vanishes && omega_xi_vanishes; }
};
MilnorIdentityReport milnor_identities(const MilnorBasis& m, const Rational& p, const Rational& q,
                                       const Rational& r);

/// Skew endomorphism of the 2-form with coefficients (p, q, r) in the
/// Milnor frame, acting as a derivation on tensors.
Endomorphism milnor_omega_endo(const Rational& p, const Rational& q, const Rational& r);

/// span{ J^m L^k : 2m + 2k = p } inside Sym^p.
Subspace qjl_span(const MilnorBasis& m, int p);

/// Whether ker d_p equals the J,L polynomial span (requires alpha, beta,
/// gamma all nonzero).
bool killing_spanned_by_qjl(const AlgebraContext& ctx, const MilnorBasis& m, int p);

/// The constructive codimension-1 abelian ideal for 4-dimensional solvable
/// algebras with 1-dimensional derived ideal.
std::optional<Subspace> codim1_abelian_ideal(const MetricLieAlgebra& alg, std::string* reason = nullptr);

/// Exact check that S is an abelian ideal of alg.
bool is_abelian_ideal(const MetricLieAlgebra& alg, const Subspace& s);

}  // namespace kt
