#include "kt/search.hpp"

#include <stdexcept>

namespace kt {

Matrix random_gram(int n, Rng& rng) {
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Rational(rng.next_int(-3, 3));
  return a.transpose() * a + Matrix::identity(n);
}

namespace {

AlgebraSpec solvable4_dimg2_spec(int trial, Rng& rng) {
  AlgebraSpec s;
  s.dimension = 4;
  switch (trial % 3) {
    case 0: {
      // e4 acts invertibly on the plane span{e1,e2}.
      Rational a, b, c, d;
      do {
        a = rng.next_int(-3, 3);
        b = rng.next_int(-3, 3);
        c = rng.next_int(-3, 3);
        d = rng.next_int(-3, 3);
      } while (a * d - b * c == 0);
      s.name = "solvable4-dimg2/plane-action";
      s.brackets[{0, 3}] = Vector{-a, -c, 0, 0};  // [e4,e1] = a e1 + c e2
      s.brackets[{1, 3}] = Vector{-b, -d, 0, 0};  // [e4,e2] = b e1 + d e2
      break;
    }
    case 1:
      // Filiform-style: 3-step nilpotent, derived ideal span{e2,e3}.
      s.name = "solvable4-dimg2/nilpotent-3step";
      s.brackets[{0, 3}] = Vector{0, -1, 0, 0};  // [e4,e1] = e2
      s.brackets[{1, 3}] = Vector{0, 0, -1, 0};  // [e4,e2] = e3
      break;
    default:
      s.name = "solvable4-dimg2/aff-plus-aff";
      s.brackets[{0, 1}] = Vector{0, 1, 0, 0};  // [e1,e2] = e2
      s.brackets[{2, 3}] = Vector{0, 0, 0, 1};  // [e3,e4] = e4
      break;
  }
  return s;
}

AlgebraSpec solvable4_heisenberg_spec(Rng& rng) {
  // [e1,e2] = e3 plus a derivation of the Heisenberg part acting from e4;
  // an invertible (e1,e2) block makes the derived ideal all of h3.
  Rational a, b, c, d;
  do {
    a = rng.next_int(-3, 3);
    b = rng.next_int(-3, 3);
    c = rng.next_int(-3, 3);
    d = rng.next_int(-3, 3);
  } while (a * d - b * c == 0);
  const Rational u = rng.next_int(-3, 3), v = rng.next_int(-3, 3);
  AlgebraSpec s;
  s.name = "solvable4-heisenberg-commutator";
  s.dimension = 4;
  s.brackets[{0, 1}] = Vector{0, 0, 1, 0};
  s.brackets[{0, 3}] = Vector{-a, -c, -u, 0};       // [e4,e1] = a e1 + c e2 + u e3
  s.brackets[{1, 3}] = Vector{-b, -d, -v, 0};       // [e4,e2] = b e1 + d e2 + v e3
  s.brackets[{2, 3}] = Vector{0, 0, -(a + d), 0};   // [e4,e3] = (a+d) e3
  return s;
}

}  // namespace

SearchOutcome run_search(const SearchConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("search needs trials >= 1");
  const bool custom = config.family == "custom";
  if (custom && !config.custom) throw std::invalid_argument("custom search needs an algebra file");
  if (!custom && config.family != "solvable4-dimg2" &&
      config.family != "solvable4-heisenberg-commutator")
    throw std::invalid_argument("unknown search family '" + config.family + "'");

  Rng rng(config.seed);
  SearchOutcome out;
  out.summary["command"] = "search";
  out.summary["family"] = config.family;
  out.summary["trials"] = config.trials;
  out.summary["seed"] = config.seed;
  out.summary["max_degree"] = config.max_degree;
  Json results = Json::array();
  int ok_count = 0;

  for (int trial = 0; trial < config.trials; ++trial) {
    AlgebraSpec spec;
    if (custom)
      spec = *config.custom;
    else if (config.family == "solvable4-dimg2")
      spec = solvable4_dimg2_spec(trial, rng);
    else
      spec = solvable4_heisenberg_spec(rng);
    spec.gram = random_gram(spec.dimension, rng);
    MetricLieAlgebra alg = MetricLieAlgebra::create(spec);
    if (config.family == "solvable4-dimg2") {
      StructuralReport rep = structural_predicates(alg);
      if (rep.derived_ideal.dim() != 2)
        throw std::logic_error("family invariant broken: derived ideal not 2-dimensional");
    }

    AlgebraContext ctx(alg);
    Json trial_doc;
    trial_doc["trial"] = trial;
    trial_doc["algebra"] = algebra_to_json(alg);
    Json degrees = Json::array();
    bool all_true = true;
    for (int p = 0; p <= config.max_degree; ++p) {
      KillingTypeReport rep = check_killing_type(ctx, p);
      degrees.push_back(killing_type_report_to_json(rep));
      if (!rep.verdict) {
        all_true = false;
        if (!out.witness_found) {
          out.witness_found = true;
          out.witness["family"] = config.family;
          out.witness["seed"] = config.seed;
          out.witness["trial"] = trial;
          out.witness["algebra"] = algebra_to_json(alg);
          out.witness["degree"] = p;
          if (rep.witness) out.witness["tensor"] = tensor_to_json(*rep.witness);
          out.witness["note"] = "conformal Killing tensor outside the killing-type space";
        }
      }
    }
    trial_doc["degrees"] = degrees;
    trial_doc["all_killing_type"] = all_true;
    if (all_true) ++ok_count;
    results.push_back(trial_doc);
  }

  out.summary["results"] = results;
  out.summary["killing_type_count"] = ok_count;
  out.summary["violation_count"] = config.trials - ok_count;
  if (out.witness_found) out.summary["witness"] = out.witness;
  return out;
}

}  // namespace kt
