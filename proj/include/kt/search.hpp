#pragma once

#include <cstdint>
#include <random>

#include "kt/io.hpp"

namespace kt {

/// Deterministic integer draws; the only randomness source in the tool.
/// The mapping from engine output to the range avoids distribution
/// objects, whose behaviour is implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}
  long next_int(long lo, long hi) {  // inclusive bounds
    return lo + long(gen_() % uint64_t(hi - lo + 1));
  }

 private:
  std::mt19937_64 gen_;
};

/// G = A^T A + I with integer A, entries in [-3, 3]: positive definite by
/// construction, rational, reproducible.
Matrix random_gram(int n, Rng& rng);

struct SearchConfig {
  std::string family;  // solvable4-dimg2 | solvable4-heisenberg-commutator | custom
  int trials = 10;
  uint64_t seed = 1;
  int max_degree = 6;
  std::optional<AlgebraSpec> custom;  // required for family == "custom"
};

struct SearchOutcome {
  Json summary;
  bool witness_found = false;
  Json witness;  // self-contained: brackets, gram, degree, tensor
};

/// Samples metrics (and structure parameters where the family has them),
/// runs the per-degree Killing-type decision and aggregates verdicts.
/// Output depends only on the configuration.
SearchOutcome run_search(const SearchConfig& config);

}  // namespace kt
