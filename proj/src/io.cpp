#include "kt/io.hpp"

#include <fstream>
#include <sstream>

namespace kt {

Rational rational_from_json(const Json& v) {
  if (v.is_number_integer()) return Rational(long(v.get<long long>()));
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw std::invalid_argument("expected a rational as integer or \"p/q\" string");
}

AlgebraSpec algebra_spec_from_json(const Json& doc) {
  AlgebraSpec spec;
  spec.name = doc.value("name", std::string("unnamed"));
  if (!doc.contains("dimension") || !doc["dimension"].is_number_integer())
    throw std::invalid_argument("algebra file needs an integer 'dimension'");
  spec.dimension = doc["dimension"].get<int>();
  const int n = spec.dimension;

  if (doc.contains("brackets")) {
    for (const auto& b : doc["brackets"]) {
      const int i = b.at("i").get<int>(), j = b.at("j").get<int>();
      if (i < 1 || j < 1 || i > n || j > n || i >= j)
        throw std::invalid_argument("bracket indices must satisfy 1 <= i < j <= n");
      Vector v = zero_vector(n);
      for (const auto& [key, val] : b.at("result").items()) {
        const int k = std::stoi(key);
        if (k < 1 || k > n) throw std::invalid_argument("bracket result index out of range");
        v[k - 1] = rational_from_json(val);
      }
      spec.brackets[{i - 1, j - 1}] = v;
    }
  }
  if (doc.contains("gram")) {
    const auto& g = doc["gram"];
    if (!g.is_array() || int(g.size()) != n)
      throw std::invalid_argument("gram must be an n x n array");
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
      if (int(g[i].size()) != n) throw std::invalid_argument("gram must be an n x n array");
      for (int j = 0; j < n; ++j) m(i, j) = rational_from_json(g[i][j]);
    }
    spec.gram = m;
  }
  if (doc.contains("basis_names"))
    spec.basis_names = doc["basis_names"].get<std::vector<std::string>>();
  return spec;
}

Json algebra_spec_to_json(const AlgebraSpec& spec) {
  Json doc;
  doc["name"] = spec.name;
  doc["dimension"] = spec.dimension;
  Json brackets = Json::array();
  for (const auto& [ij, v] : spec.brackets) {
    Json b;
    b["i"] = ij.first + 1;
    b["j"] = ij.second + 1;
    Json result = Json::object();
    for (int k = 0; k < int(v.size()); ++k)
      if (v[k] != 0) result[std::to_string(k + 1)] = rational_str(v[k]);
    b["result"] = result;
    brackets.push_back(b);
  }
  doc["brackets"] = brackets;
  if (spec.gram) {
    Json g = Json::array();
    for (int i = 0; i < spec.gram->rows(); ++i) {
      Json row = Json::array();
      for (int j = 0; j < spec.gram->cols(); ++j) row.push_back(rational_str((*spec.gram)(i, j)));
      g.push_back(row);
    }
    doc["gram"] = g;
  }
  if (!spec.basis_names.empty()) doc["basis_names"] = spec.basis_names;
  return doc;
}

Json algebra_to_json(const MetricLieAlgebra& alg) {
  AlgebraSpec s = alg.spec();
  if (!s.gram) s.gram = alg.gram().gram();
  return algebra_spec_to_json(s);
}

SymTensor tensor_from_json(const Json& doc, int n) {
  if (!doc.contains("degree")) throw std::invalid_argument("tensor literal needs 'degree'");
  const int p = doc["degree"].get<int>();
  if (p < 0) throw std::invalid_argument("tensor degree must be >= 0");
  SymTensor t(n, p);
  if (doc.contains("coeffs")) {
    for (const auto& [key, val] : doc["coeffs"].items()) {
      std::vector<int> e;
      std::string part;
      std::istringstream in(key);
      while (std::getline(in, part, ',')) e.push_back(std::stoi(part));
      if (int(e.size()) != n)
        throw std::invalid_argument("multi-index '" + key + "' has wrong length");
      MultiIndex alpha{e};
      if (alpha.degree() != p)
        throw std::invalid_argument("multi-index '" + key + "' does not have degree " + std::to_string(p));
      t.add_coeff(alpha, rational_from_json(val));
    }
  }
  return t;
}

Json tensor_to_json(const SymTensor& t) {
  Json doc;
  doc["degree"] = t.degree();
  Json coeffs = Json::object();
  for (const auto& [alpha, c] : t.coeffs()) {
    std::string key;
    for (int i = 0; i < int(alpha.e.size()); ++i) {
      if (i) key += ",";
      key += std::to_string(alpha.e[i]);
    }
    coeffs[key] = rational_str(c);
  }
  doc["coeffs"] = coeffs;
  return doc;
}

Json killing_type_report_to_json(const KillingTypeReport& rep) {
  Json doc;
  doc["p"] = rep.degree;
  doc["dim_sym"] = rep.dim_sym_p;
  doc["dim_killing"] = rep.dim_killing;
  doc["dim_image_L"] = rep.dim_image_L;
  doc["dim_conformal"] = rep.dim_conformal;
  doc["dim_killing_type"] = rep.dim_killing_type;
  doc["verdict"] = rep.verdict;
  doc["cross_check"] = rep.cross_check;
  if (rep.witness) doc["witness"] = tensor_to_json(*rep.witness);
  return doc;
}

Json structural_report_to_json(const StructuralReport& rep) {
  Json doc;
  doc["dim_center"] = rep.center.dim();
  doc["dim_derived_ideal"] = rep.derived_ideal.dim();
  doc["abelian"] = rep.is_abelian;
  doc["unimodular"] = rep.is_unimodular;
  doc["two_step_nilpotent"] = rep.is_two_step_nilpotent;
  doc["ad_invariant_metric"] = rep.is_ad_invariant_metric;
  doc["solvable"] = rep.is_solvable;
  return doc;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  Json doc;
  in >> doc;
  return doc;
}

void write_json_file(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << doc.dump(2) << "\n";
}

}  // namespace kt
