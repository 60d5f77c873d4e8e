// kt: exact calculator for left-invariant Killing and conformal Killing
// tensors on metric Lie algebras.

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "kt/catalog.hpp"
#include "kt/io.hpp"
#include "kt/search.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 1;
constexpr int kExitPropertyViolation = 2;
constexpr int kExitIoError = 3;

struct Options {
  std::string input;
  std::string tensor_path;
  std::string family;
  std::string format = "text";
  std::string output;
  int degree = 2;
  int max_degree = 6;
  int trials = 10;
  uint64_t seed = 1;
};

void emit(const Options& opt, const std::string& text, const kt::Json& doc) {
  std::string payload = (opt.format == "json") ? doc.dump(2) + "\n" : text;
  if (opt.output.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(opt.output);
    if (!out) throw std::runtime_error("cannot write '" + opt.output + "'");
    out << payload;
  }
}

/// Input is a file path when it exists on disk, otherwise a catalog name.
kt::MetricLieAlgebra resolve_algebra(const std::string& input) {
  if (std::filesystem::exists(input)) {
    kt::AlgebraSpec spec = kt::algebra_spec_from_json(kt::load_json_file(input));
    return kt::MetricLieAlgebra::create(spec);
  }
  return kt::build_catalog(input);
}

int cmd_validate(const Options& opt) {
  kt::AlgebraSpec spec = kt::algebra_spec_from_json(kt::load_json_file(opt.input));
  kt::ValidationResult result = kt::MetricLieAlgebra::validate(spec);
  kt::Json doc;
  doc["input"] = opt.input;
  doc["valid"] = result.ok();
  kt::Json issues = kt::Json::array();
  std::string text;
  if (result.ok()) {
    text = "valid: " + spec.name + " (dimension " + std::to_string(spec.dimension) + ")\n";
  } else {
    text = "invalid: " + spec.name + "\n";
    for (const auto& issue : result.issues) {
      issues.push_back({{"kind", issue.kind}, {"detail", issue.detail}});
      text += "  [" + issue.kind + "] " + issue.detail + "\n";
    }
  }
  doc["issues"] = issues;
  emit(opt, text, doc);
  return result.ok() ? kExitOk : kExitInvalidInput;
}

int cmd_spaces(const Options& opt) {
  kt::MetricLieAlgebra alg = resolve_algebra(opt.input);
  kt::AlgebraContext ctx(alg);
  const int p = opt.degree;
  kt::Subspace killing = kt::killing_space(ctx, p);
  kt::Subspace conformal = kt::conformal_killing_space(ctx, p);

  kt::Json doc;
  doc["algebra"] = kt::algebra_to_json(alg);
  doc["p"] = p;
  doc["dim_sym"] = ctx.dim(p);
  doc["dim_killing"] = killing.dim();
  doc["dim_conformal"] = conformal.dim();
  kt::Json kb = kt::Json::array(), cb = kt::Json::array();
  std::ostringstream text;
  text << alg.name() << ", degree " << p << "\n";
  text << "  dim Sym^p = " << ctx.dim(p) << "\n";
  text << "  Killing space: dim " << killing.dim() << "\n";
  for (int i = 0; i < killing.dim(); ++i) {
    kt::SymTensor t = kt::SymTensor::from_vector(alg.dim(), p, killing.basis_vector(i));
    kb.push_back(kt::tensor_to_json(t));
    text << "    " << t.str(alg.basis_names()) << "\n";
  }
  text << "  conformal Killing space: dim " << conformal.dim() << "\n";
  for (int i = 0; i < conformal.dim(); ++i) {
    kt::SymTensor t = kt::SymTensor::from_vector(alg.dim(), p, conformal.basis_vector(i));
    cb.push_back(kt::tensor_to_json(t));
    text << "    " << t.str(alg.basis_names()) << "\n";
  }
  doc["killing_basis"] = kb;
  doc["conformal_basis"] = cb;
  emit(opt, text.str(), doc);
  return kExitOk;
}

int cmd_check_type(const Options& opt) {
  kt::MetricLieAlgebra alg = resolve_algebra(opt.input);
  kt::AlgebraContext ctx(alg);
  const auto t0 = std::chrono::steady_clock::now();

  kt::Json doc;
  doc["algebra"] = kt::algebra_to_json(alg);
  doc["predicates"] = kt::structural_report_to_json(kt::structural_predicates(alg));
  doc["max_degree"] = opt.max_degree;
  kt::Json degrees = kt::Json::array();
  std::ostringstream text;
  text << alg.name() << ": Killing-type check up to degree " << opt.max_degree << "\n";
  text << "  p  dim_sym  killing  conformal  killing_type  verdict  cross_check\n";
  bool all_true = true;
  for (int p = 0; p <= opt.max_degree; ++p) {
    kt::KillingTypeReport rep = kt::check_killing_type(ctx, p);
    degrees.push_back(kt::killing_type_report_to_json(rep));
    text << "  " << p << "  " << rep.dim_sym_p << "  " << rep.dim_killing << "  "
         << rep.dim_conformal << "  " << rep.dim_killing_type << "  "
         << (rep.verdict ? "true" : "FALSE") << "  " << (rep.cross_check ? "ok" : "MISMATCH")
         << "\n";
    if (rep.witness)
      text << "    witness: " << rep.witness->str(alg.basis_names()) << "\n";
    all_true = all_true && rep.verdict;
  }
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
  doc["degrees"] = degrees;
  doc["all_killing_type"] = all_true;
  doc["elapsed_ms"] = ms.count();
  text << (all_true ? "all degrees of Killing type\n" : "found a degree NOT of Killing type\n");
  emit(opt, text.str(), doc);
  return all_true ? kExitOk : kExitPropertyViolation;
}

int cmd_complete(const Options& opt) {
  kt::MetricLieAlgebra alg = resolve_algebra(opt.input);
  kt::AlgebraContext ctx(alg);
  kt::SymTensor k = kt::tensor_from_json(kt::load_json_file(opt.tensor_path), alg.dim());

  auto factor = kt::conformal_factor(ctx, k);
  auto completion = kt::killing_completion(ctx, k);
  kt::Json doc;
  doc["algebra"] = kt::algebra_to_json(alg);
  doc["tensor"] = kt::tensor_to_json(k);
  doc["conformal"] = factor.has_value();
  std::ostringstream text;
  text << alg.name() << ": completion of " << k.str(alg.basis_names()) << "\n";
  if (factor) {
    doc["conformal_factor"] = kt::tensor_to_json(*factor);
    text << "  conformal Killing with factor B = " << factor->str(alg.basis_names()) << "\n";
  } else {
    text << "  not conformal Killing\n";
  }
  if (completion) {
    doc["completion"] = kt::tensor_to_json(*completion);
    text << "  K + L(R) is Killing for R = " << completion->str(alg.basis_names()) << "\n";
  } else {
    doc["completion"] = nullptr;
    text << "  no Killing completion exists\n";
  }
  emit(opt, text.str(), doc);
  // A conformal tensor with no completion refutes the Killing-type property.
  return (factor && !completion) ? kExitPropertyViolation : kExitOk;
}

int cmd_catalog_list(const Options& opt) {
  kt::Json doc = kt::Json::array();
  std::ostringstream text;
  for (const auto& e : kt::catalog_entries()) {
    kt::Json j;
    j["name"] = e.name;
    j["params"] = e.params_doc;
    j["description"] = e.description;
    doc.push_back(j);
    text << e.name << e.params_doc << "\n    " << e.description << "\n";
  }
  emit(opt, text.str(), doc);
  return kExitOk;
}

int cmd_search(const Options& opt) {
  kt::SearchConfig config;
  config.family = opt.family;
  config.trials = opt.trials;
  config.seed = opt.seed;
  config.max_degree = opt.max_degree;
  if (config.family == "custom") {
    if (opt.input.empty()) throw std::invalid_argument("custom search needs an algebra file");
    config.custom = kt::algebra_spec_from_json(kt::load_json_file(opt.input));
  }
  kt::SearchOutcome outcome = kt::run_search(config);
  std::ostringstream text;
  text << "search family=" << config.family << " trials=" << config.trials
       << " seed=" << config.seed << "\n";
  text << "  killing-type: " << outcome.summary["killing_type_count"] << "/" << config.trials
       << "\n";
  if (outcome.witness_found) {
    const std::string path = opt.output.empty() ? "witness.json" : opt.output + ".witness.json";
    kt::write_json_file(path, outcome.witness);
    text << "  WITNESS FOUND, written to " << path << "\n";
  }
  emit(opt, text.str(), outcome.summary);
  return outcome.witness_found ? kExitPropertyViolation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Killing / conformal Killing tensor calculator for metric Lie algebras"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--output", opt.output, "write output to a file instead of stdout");
  };

  CLI::App* validate = app.add_subcommand("validate", "validate an algebra file");
  validate->add_option("file", opt.input, "algebra JSON file")->required();
  add_common(validate);

  CLI::App* spaces = app.add_subcommand("spaces", "Killing and conformal spaces at one degree");
  spaces->add_option("algebra", opt.input, "algebra file or catalog name")->required();
  spaces->add_option("--degree", opt.degree, "tensor degree p");
  add_common(spaces);

  CLI::App* check = app.add_subcommand("check-type", "per-degree Killing-type verdicts");
  check->add_option("algebra", opt.input, "algebra file or catalog name")->required();
  check->add_option("--max-degree", opt.max_degree, "largest degree checked");
  add_common(check);

  CLI::App* complete = app.add_subcommand("complete", "solve d(K + L R) = 0 for a tensor file");
  complete->add_option("algebra", opt.input, "algebra file or catalog name")->required();
  complete->add_option("--tensor", opt.tensor_path, "tensor JSON file")->required();
  add_common(complete);

  CLI::App* catalog = app.add_subcommand("catalog", "built-in algebra families");
  CLI::App* list = catalog->add_subcommand("list", "list catalog entries");
  add_common(list);
  CLI::App* run = catalog->add_subcommand("run", "run check-type on a catalog entry");
  run->add_option("name", opt.input, "entry name, e.g. milnor(1,2,3)")->required();
  run->add_option("--max-degree", opt.max_degree, "largest degree checked");
  add_common(run);
  catalog->require_subcommand(1);

  CLI::App* search = app.add_subcommand("search", "randomized metric search over open families");
  search
      ->add_option("--family", opt.family,
                   "solvable4-dimg2 | solvable4-heisenberg-commutator | custom")
      ->required();
  search->add_option("--trials", opt.trials, "number of sampled metrics");
  search->add_option("--seed", opt.seed, "random seed");
  search->add_option("--max-degree", opt.max_degree, "largest degree checked");
  search->add_option("--input", opt.input, "algebra file for the custom family");
  add_common(search);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(validate)) return cmd_validate(opt);
    if (app.got_subcommand(spaces)) return cmd_spaces(opt);
    if (app.got_subcommand(check)) return cmd_check_type(opt);
    if (app.got_subcommand(complete)) return cmd_complete(opt);
    if (app.got_subcommand(catalog)) {
      if (catalog->got_subcommand(list)) return cmd_catalog_list(opt);
      return cmd_check_type(opt);
    }
    if (app.got_subcommand(search)) return cmd_search(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoError;
  }
  return kExitOk;
}
