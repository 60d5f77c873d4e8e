#pragma once

#include <json.hpp>
#include <string>

#include "kt/killing.hpp"

namespace kt {

using Json = nlohmann::ordered_json;

/// Algebra file: { name, dimension, brackets: [{i, j, result: {"k": "p/q"}}],
/// gram: [["p/q", ...], ...] } with 1-based indices, i < j, gram optional.
AlgebraSpec algebra_spec_from_json(const Json& doc);
Json algebra_spec_to_json(const AlgebraSpec& spec);
Json algebra_to_json(const MetricLieAlgebra& alg);

/// Tensor literal: { "degree": p, "coeffs": { "2,0,1": "3/2", ... } }.
/// Exponent keys are comma-separated; values are "p/q" strings or integers.
SymTensor tensor_from_json(const Json& doc, int n);
Json tensor_to_json(const SymTensor& t);

Json killing_type_report_to_json(const KillingTypeReport& rep);
Json structural_report_to_json(const StructuralReport& rep);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& doc);

/// Rational from a JSON value that is either an integer or a "p/q" string.
Rational rational_from_json(const Json& v);

}  // namespace kt
