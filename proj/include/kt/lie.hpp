#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "kt/sym.hpp"

namespace kt {

/// Raw, unvalidated description of a metric Lie algebra: bracket table on
/// basis vectors (stored for i < j) plus an optional Gram matrix.
struct AlgebraSpec {
  std::string name;
  int dimension = 0;
  std::map<std::pair<int, int>, Vector> brackets;  // 0-based, i < j
  std::optional<Matrix> gram;                      // default: identity
  std::vector<std::string> basis_names;            // default: e1..en
};

struct ValidationIssue {
  std::string kind;    // "jacobi", "gram", "shape"
  std::string detail;  // human-readable witness
};

struct ValidationResult;

class MetricLieAlgebra {
 public:
  /// Checks the Jacobi identity and positive-definiteness; returns the
  /// algebra or the list of violated identities with witnesses.
  static ValidationResult validate(const AlgebraSpec& spec);
  /// Convenience for trusted built-in constructions; throws on invalid input.
  static MetricLieAlgebra create(const AlgebraSpec& spec);

  int dim() const { return n_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& basis_names() const { return names_; }
  const GramContext& gram() const { return gram_; }
  const AlgebraSpec& spec() const { return spec_; }

  /// [b_i, b_j] for arbitrary order of i, j.
  Vector bracket(int i, int j) const;
  Vector bracket(const Vector& x, const Vector& y) const;

  Endomorphism ad(const Vector& x) const;
  Endomorphism ad_basis(int i) const { return ad(basis_coords(i)); }
  Endomorphism ad_star(const Vector& x) const { return ad(x).metric_adjoint(gram_); }

  Vector basis_coords(int i) const;

  /// Same algebra in the basis given by the columns of P (Gram becomes
  /// P^T G P, brackets transform accordingly).
  MetricLieAlgebra change_basis(const Matrix& P) const;

 private:
  MetricLieAlgebra(AlgebraSpec spec, GramContext gram);

  AlgebraSpec spec_;
  std::string name_;
  int n_;
  std::vector<std::string> names_;
  GramContext gram_;
};

struct ValidationResult {
  std::optional<MetricLieAlgebra> algebra;
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// Levi-Civita connection of the left-invariant metric: one endomorphism
/// per basis direction. Metric-compatible and torsion-free by construction.
struct Connection {
  std::vector<Endomorphism> nabla;  // nabla[i] = covariant derivative along b_i
};

/// Koszul's formula: nabla_x y = ([x,y] - ad*_x y - ad*_y x) / 2.
Connection koszul(const MetricLieAlgebra& alg);

struct StructuralReport {
  Subspace center;
  Subspace derived_ideal;
  bool is_abelian = false;
  bool is_unimodular = false;
  bool is_two_step_nilpotent = false;
  bool is_ad_invariant_metric = false;
  bool is_solvable = false;
};

StructuralReport structural_predicates(const MetricLieAlgebra& alg);

/// Immutable per-algebra bundle: the connection plus memoized operator
/// matrices per degree. Matrices of d, delta, L and Lambda are built once
/// and shared; safe to read from concurrent workers.
class AlgebraContext {
 public:
  explicit AlgebraContext(MetricLieAlgebra alg);

  const MetricLieAlgebra& algebra() const { return alg_; }
  const Connection& connection() const { return conn_; }
  const GramContext& gram() const { return alg_.gram(); }
  int n() const { return alg_.dim(); }
  long dim(int p) const { return dim_sym(alg_.dim(), p); }

  /// Applies the symmetrized covariant derivative to a tensor.
  SymTensor d_apply(const SymTensor& K) const;
  /// Applies the codifferential (formal divergence) to a tensor.
  SymTensor delta_apply(const SymTensor& K) const;

  const Matrix& d(int p) const;          // Sym^p -> Sym^{p+1}
  const Matrix& delta(int p) const;      // Sym^p -> Sym^{p-1}
  const Matrix& lefschetz_op(int p) const;  // Sym^p -> Sym^{p+2}
  const Matrix& lambda_op(int p) const;     // Sym^p -> Sym^{p-2}
  const Matrix& sym_gram(int p) const;   // inner products on Sym^p

 private:
  const Matrix& memo(std::map<int, Matrix>& store, int p,
                     const std::function<Matrix()>& build) const;

  MetricLieAlgebra alg_;
  Connection conn_;
  mutable std::mutex mu_;
  mutable std::map<int, Matrix> d_, delta_, lef_, lam_, gram_;
};

/// d on degree-1 tensors equals -2 S_{ad_x}; used as a cross-check oracle.
SymTensor sym_diff_vector(const MetricLieAlgebra& alg, const Vector& x);

}  // namespace kt
