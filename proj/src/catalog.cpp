#include "kt/catalog.hpp"

#include <sstream>
#include <stdexcept>

namespace kt {

MetricLieAlgebra abelian_algebra(int n) {
  AlgebraSpec s;
  s.name = "abelian(" + std::to_string(n) + ")";
  s.dimension = n;
  return MetricLieAlgebra::create(s);
}

MetricLieAlgebra heisenberg3() {
  AlgebraSpec s;
  s.name = "heisenberg-h3";
  s.dimension = 3;
  s.brackets[{0, 1}] = Vector{0, 0, 1};  // [e1,e2] = e3
  return MetricLieAlgebra::create(s);
}

MetricLieAlgebra free_two_step_3gen() {
  AlgebraSpec s;
  s.name = "free-2step-3gen";
  s.dimension = 6;
  s.brackets[{0, 1}] = Vector{0, 0, 0, 1, 0, 0};  // [e1,e2] = e4
  s.brackets[{0, 2}] = Vector{0, 0, 0, 0, 1, 0};  // [e1,e3] = e5
  s.brackets[{1, 2}] = Vector{0, 0, 0, 0, 0, 1};  // [e2,e3] = e6
  return MetricLieAlgebra::create(s);
}

MetricLieAlgebra solvable2() {
  AlgebraSpec s;
  s.name = "solvable2";
  s.dimension = 2;
  s.brackets[{0, 1}] = Vector{0, 1};  // [e1,e2] = e2, not unimodular
  return MetricLieAlgebra::create(s);
}

MetricLieAlgebra solvable4_dimg1(const Rational& lambda, const Rational& alpha,
                                 const Rational& beta, const Rational& gamma) {
  if (alpha * lambda != 0)
    throw std::invalid_argument("solvable4-dimg1 needs alpha*lambda = 0 (Jacobi)");
  if (lambda == 0 && alpha == 0 && beta == 0 && gamma == 0)
    throw std::invalid_argument("solvable4-dimg1 needs a nonzero bracket");
  AlgebraSpec s;
  std::ostringstream name;
  name << "solvable4-dimg1(" << rational_str(lambda) << "," << rational_str(alpha) << ","
       << rational_str(beta) << "," << rational_str(gamma) << ")";
  s.name = name.str();
  s.dimension = 4;
  s.basis_names = {"x", "y", "z", "u"};
  auto put = [&](int i, int j, const Rational& c) {
    if (c != 0) s.brackets[{i, j}] = Vector{0, 0, 0, c};
  };
  put(0, 1, alpha);   // [x,y] = alpha u
  put(0, 2, -beta);   // [z,x] = beta u
  put(1, 2, -gamma);  // [z,y] = gamma u
  put(2, 3, lambda);  // [z,u] = lambda u
  return MetricLieAlgebra::create(s);
}

MetricLieAlgebra plus_abelian_line(const MetricLieAlgebra& alg) {
  const int n = alg.dim();
  AlgebraSpec s;
  s.name = alg.name() + "+R";
  s.dimension = n + 1;
  for (const auto& [ij, v] : alg.spec().brackets) {
    Vector ext = v;
    ext.push_back(0);
    s.brackets[ij] = ext;
  }
  Matrix g(n + 1, n + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = alg.gram().gram()(i, j);
  g(n, n) = 1;
  s.gram = g;
  return MetricLieAlgebra::create(s);
}

namespace {

bool check_type_true_up_to(const AlgebraContext& ctx, int pmax) {
  for (int p = 0; p <= pmax; ++p) {
    KillingTypeReport rep = check_killing_type(ctx, p);
    if (!rep.verdict || !rep.cross_check) return false;
  }
  return true;
}

bool d_vanishes_up_to(const AlgebraContext& ctx, int pmax) {
  for (int p = 0; p <= pmax; ++p)
    if (!ctx.d(p).is_zero()) return false;
  return true;
}

int req_param_count(const std::string& doc) {
  if (doc.empty()) return 0;
  int commas = 0;
  for (char c : doc)
    if (c == ',') ++commas;
  return commas + 1;
}

std::vector<CatalogEntry> make_entries() {
  std::vector<CatalogEntry> out;

  out.push_back(CatalogEntry{
      "abelian",
      "(n)",
      "abelian algebra of dimension n; every metric is ad-invariant",
      {3},
      [](const std::vector<Rational>& p) { return abelian_algebra(int(p.at(0).get_num().get_si())); },
      {
          {"d vanishes for p <= 4", [](const AlgebraContext& c) { return d_vanishes_up_to(c, 4); }},
          {"killing space is everything at p = 3",
           [](const AlgebraContext& c) { return killing_space(c, 3).dim() == dim_sym(c.n(), 3); }},
          {"killing type at p <= 4", [](const AlgebraContext& c) { return check_type_true_up_to(c, 4); }},
      }});

  out.push_back(CatalogEntry{
      "heisenberg-h3",
      "",
      "Heisenberg algebra [e1,e2] = e3 with the standard metric",
      {},
      [](const std::vector<Rational>&) { return heisenberg3(); },
      {
          {"d on basis vectors",
           [](const AlgebraContext& c) {
             SymTensor y23(3, 2), y13(3, 2);
             y23.add_coeff(MultiIndex{{0, 1, 1}}, -1);
             y13.add_coeff(MultiIndex{{1, 0, 1}}, 1);
             return c.d_apply(SymTensor::basis_vector(3, 0)) == y23 &&
                    c.d_apply(SymTensor::basis_vector(3, 1)) == y13 &&
                    c.d_apply(SymTensor::basis_vector(3, 2)).is_zero();
           }},
          {"killing vectors are the center",
           [](const AlgebraContext& c) {
             Subspace k = killing_space(c, 1);
             return k.dim() == 1 && k.contains(Vector{0, 0, 1});
           }},
          {"two-step with one-dimensional center",
           [](const AlgebraContext& c) {
             StructuralReport r = structural_predicates(c.algebra());
             return r.is_two_step_nilpotent && r.center.dim() == 1 &&
                    r.derived_ideal == r.center;
           }},
          {"killing type at p <= 4", [](const AlgebraContext& c) { return check_type_true_up_to(c, 4); }},
      }});

  out.push_back(CatalogEntry{
      "h3-plus-R",
      "",
      "Heisenberg algebra times an abelian line",
      {},
      [](const std::vector<Rational>&) {
        MetricLieAlgebra a = plus_abelian_line(heisenberg3());
        return a;
      },
      {
          {"two-step with two-dimensional center",
           [](const AlgebraContext& c) {
             StructuralReport r = structural_predicates(c.algebra());
             return r.is_two_step_nilpotent && r.center.dim() == 2 && r.derived_ideal.dim() == 1;
           }},
          {"killing type at p <= 4", [](const AlgebraContext& c) { return check_type_true_up_to(c, 4); }},
      }});

  out.push_back(CatalogEntry{
      "free-2step-3gen",
      "",
      "free 2-step nilpotent algebra on three generators (dimension 6)",
      {},
      [](const std::vector<Rational>&) { return free_two_step_3gen(); },
      {
          {"center and derived ideal are span{e4,e5,e6}",
           [](const AlgebraContext& c) {
             StructuralReport r = structural_predicates(c.algebra());
             return r.center.dim() == 3 && r.derived_ideal == r.center &&
                    r.center.contains(Vector{0, 0, 0, 1, 0, 0});
           }},
          {"killing vectors are the center",
           [](const AlgebraContext& c) { return killing_space(c, 1).dim() == 3; }},
          {"T = e1*e6 - e2*e5 + e3*e4 is Killing",
           [](const AlgebraContext& c) {
             SymTensor t(6, 2);
             t.add_coeff(MultiIndex{{1, 0, 0, 0, 0, 1}}, 1);
             t.add_coeff(MultiIndex{{0, 1, 0, 0, 1, 0}}, -1);
             t.add_coeff(MultiIndex{{0, 0, 1, 1, 0, 0}}, 1);
             return c.d_apply(t).is_zero();
           }},
          {"killing type at p <= 3", [](const AlgebraContext& c) { return check_type_true_up_to(c, 3); }},
      }});

  out.push_back(CatalogEntry{
      "milnor",
      "(a,b,c)",
      "3-dimensional simple algebra in a Milnor frame: [x,y]=az, [y,z]=bx, [z,x]=cy",
      {1, 2, 3},
      [](const std::vector<Rational>& p) {
        return MilnorBasis{p.at(0), p.at(1), p.at(2)}.algebra();
      },
      {
          {"no killing vectors",
           [](const AlgebraContext& c) { return killing_space(c, 1).dim() == 0; }},
          {"killing 2-tensors are span{L, J}",
           [](const AlgebraContext& c) {
             MilnorBasis m{1, 2, 3};
             Subspace k = killing_space(c, 2);
             return k.dim() == 2 && k.contains(metric_square(c.gram()).to_vector()) &&
                    k.contains(m.j_tensor().to_vector());
           }},
          {"killing space at p = 4 spanned by J^m L^k",
           [](const AlgebraContext& c) { return killing_spanned_by_qjl(c, MilnorBasis{1, 2, 3}, 4); }},
          {"killing type at p <= 4", [](const AlgebraContext& c) { return check_type_true_up_to(c, 4); }},
      }});

  out.push_back(CatalogEntry{
      "milnor-111",
      "",
      "round metric on su(2): ad-invariant, d vanishes",
      {},
      [](const std::vector<Rational>&) { return MilnorBasis{1, 1, 1}.algebra(); },
      {
          {"metric is ad-invariant",
           [](const AlgebraContext& c) { return structural_predicates(c.algebra()).is_ad_invariant_metric; }},
          {"d vanishes for p <= 4", [](const AlgebraContext& c) { return d_vanishes_up_to(c, 4); }},
      }});

  out.push_back(CatalogEntry{
      "central-extension-milnor",
      "(a,b,c,p,q,r)",
      "dimension-4 non-solvable central extension of a Milnor frame by "
      "omega = p x^y + q y^z + r z^x",
      {1, 2, 3, 1, 1, 1},
      [](const std::vector<Rational>& pr) {
        MilnorBasis m{pr.at(0), pr.at(1), pr.at(2)};
        Matrix omega(3, 3);
        omega(0, 1) = pr.at(3);
        omega(1, 0) = -pr.at(3);
        omega(1, 2) = pr.at(4);
        omega(2, 1) = -pr.at(4);
        omega(2, 0) = pr.at(5);
        omega(0, 2) = -pr.at(5);
        return central_extension({m.algebra(), omega});
      },
      {
          {"not solvable, center contains t",
           [](const AlgebraContext& c) {
             StructuralReport r = structural_predicates(c.algebra());
             return !r.is_solvable && r.center.contains(Vector{0, 0, 0, 1});
           }},
          {"killing type at p <= 3", [](const AlgebraContext& c) { return check_type_true_up_to(c, 3); }},
      }});

  out.push_back(CatalogEntry{
      "solvable2",
      "",
      "the non-unimodular line: [e1,e2] = e2",
      {},
      [](const std::vector<Rational>&) { return solvable2(); },
      {
          {"not unimodular",
           [](const AlgebraContext& c) { return !structural_predicates(c.algebra()).is_unimodular; }},
          {"killing type at p <= 4", [](const AlgebraContext& c) { return check_type_true_up_to(c, 4); }},
      }});

  out.push_back(CatalogEntry{
      "solvable4-dimg1",
      "(lambda,alpha,beta,gamma)",
      "dimension-4 solvable with 1-dimensional derived ideal: [z,u]=lambda u, "
      "[x,y]=alpha u, [z,x]=beta u, [z,y]=gamma u",
      {0, 1, 1, 1},
      [](const std::vector<Rational>& p) {
        return solvable4_dimg1(p.at(0), p.at(1), p.at(2), p.at(3));
      },
      {
          {"derived ideal is one-dimensional",
           [](const AlgebraContext& c) { return structural_predicates(c.algebra()).derived_ideal.dim() == 1; }},
          {"codimension-1 abelian ideal exists",
           [](const AlgebraContext& c) {
             auto ideal = codim1_abelian_ideal(c.algebra());
             return ideal.has_value() && ideal->dim() == 3 && is_abelian_ideal(c.algebra(), *ideal);
           }},
          {"killing type at p <= 3", [](const AlgebraContext& c) { return check_type_true_up_to(c, 3); }},
      }});

  out.push_back(CatalogEntry{
      "milnor-plus-R",
      "(a,b,c)",
      "orthogonal direct sum of a Milnor frame and an abelian line",
      {1, 2, 3},
      [](const std::vector<Rational>& p) {
        return plus_abelian_line(MilnorBasis{p.at(0), p.at(1), p.at(2)}.algebra());
      },
      {
          {"killing type at p <= 3", [](const AlgebraContext& c) { return check_type_true_up_to(c, 3); }},
      }});

  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = make_entries();
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : catalog_entries())
    if (e.name == name) return e;
  throw std::invalid_argument("unknown catalog entry '" + name + "'");
}

MetricLieAlgebra build_catalog(const std::string& name_with_params) {
  std::string name = name_with_params;
  std::vector<Rational> params;
  auto open = name_with_params.find('(');
  if (open != std::string::npos) {
    if (name_with_params.back() != ')')
      throw std::invalid_argument("malformed catalog reference '" + name_with_params + "'");
    name = name_with_params.substr(0, open);
    std::string inner = name_with_params.substr(open + 1, name_with_params.size() - open - 2);
    std::string cur;
    std::istringstream in(inner);
    while (std::getline(in, cur, ',')) params.push_back(parse_rational(cur));
  }
  const CatalogEntry& entry = catalog_entry(name);
  if (params.empty()) params = entry.default_params;
  if (int(params.size()) != req_param_count(entry.params_doc))
    throw std::invalid_argument("catalog entry '" + name + "' expects parameters " + entry.params_doc);
  return entry.build(params);
}

}  // namespace kt
