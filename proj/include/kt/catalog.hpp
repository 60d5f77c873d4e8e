#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kt/killing.hpp"

namespace kt {

/// A named regression check run against a built catalog algebra.
struct Expectation {
  std::string check;  // short label printed on failure
  std::function<bool(const AlgebraContext&)> run;
};

/// Built-in algebra families with their expected computational facts.
/// Running every expectation is the catalog regression suite.
struct CatalogEntry {
  std::string name;
  std::string params_doc;  // e.g. "(n)" or "(a,b,c)"; empty if none
  std::string description;
  std::vector<Rational> default_params;
  std::function<MetricLieAlgebra(const std::vector<Rational>&)> build;
  std::vector<Expectation> expectations;
};

const std::vector<CatalogEntry>& catalog_entries();

/// Looks up an entry by name; throws on unknown names.
const CatalogEntry& catalog_entry(const std::string& name);

/// Builds "name" or "name(p1,p2,...)" with rational parameters.
MetricLieAlgebra build_catalog(const std::string& name_with_params);

// Shared constructions.
MetricLieAlgebra abelian_algebra(int n);
MetricLieAlgebra heisenberg3();
MetricLieAlgebra free_two_step_3gen();
MetricLieAlgebra solvable2();
/// dim-4 solvable with 1-dim derived ideal: brackets [z,u] = lambda u,
/// [x,y] = alpha u, [z,x] = beta u, [z,y] = gamma u (valid iff alpha*lambda = 0).
MetricLieAlgebra solvable4_dimg1(const Rational& lambda, const Rational& alpha,
                                 const Rational& beta, const Rational& gamma);
/// Orthogonal direct sum with an abelian line.
MetricLieAlgebra plus_abelian_line(const MetricLieAlgebra& alg);

}  // namespace kt
