#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "hardy/adjoint.hpp"
#include "hardy/error.hpp"
#include "hardy/expression.hpp"
#include "hardy/verification.hpp"

namespace hardy::cli {

namespace {

using nlohmann::json;

json to_json(Complex c) { return {{"re", c.real()}, {"im", c.imag()}}; }

json to_json(const ExtendedValue& v) { return v.is_infinite() ? json("infinity") : to_json(v.value()); }

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::SyntaxError:
    case ErrorCode::ZeroDenominator:
    case ErrorCode::NotSelfMap:
    case ErrorCode::PoleInDisk:
    case ErrorCode::NotLFM:
    case ErrorCode::Degenerate:
    case ErrorCode::InvalidArgument:
      return kInvalidInput;
    default:
      return kNumericFailure;
  }
}

struct Options {
  AdjointConfig cfg;
  std::string out_path;

  std::string map_text;
  std::vector<std::string> at;
  std::string f_text;
  std::optional<std::size_t> coeffs;
  std::vector<std::string> suites;
  bool all = false;
};

json cmd_classify(const Options& o) {
  const RationalMap phi = parse_map(o.map_text, o.cfg.coprime_tol);
  const SelfMapReport report = check_self_map(phi);
  json doc = {{"command", "classify"},
              {"map", format_map(phi)},
              {"self_map", report.is_self_map},
              {"max_boundary_modulus", report.max_boundary_modulus},
              {"phi_inf", to_json(phi.at_infinity())}};
  if (!report.is_self_map) return doc;
  doc["class"] = to_string(classify_map(phi).kind);
  return doc;
}

json cmd_branches(const Options& o) {
  const CompositionAdjoint adjoint(parse_map(o.map_text, o.cfg.coprime_tol), o.cfg);
  json points = json::array();
  for (const std::string& text : o.at) {
    const BranchSet set = adjoint.branches(parse_complex(text));
    json branches = json::array();
    for (const Branch& b : set.branches)
      branches.push_back({{"sigma", to_json(b.sigma)},
                          {"psi", to_json(b.psi)},
                          {"multiplicity", b.multiplicity},
                          {"residual", b.residual}});
    points.push_back({{"at", to_json(set.point)},
                      {"branches", std::move(branches)},
                      {"degree_deficit", set.degree_deficit},
                      {"warnings", set.warnings}});
  }
  json doc = {{"command", "branches"}, {"map", format_map(adjoint.symbol())}};
  if (points.size() == 1) doc.update(points[0]);
  else doc["points"] = std::move(points);
  return doc;
}

json cmd_adjoint(const Options& o) {
  AdjointConfig cfg = o.cfg;
  if (o.coeffs) cfg.n_terms = *o.coeffs;
  const CompositionAdjoint adjoint(parse_map(o.map_text, cfg.coprime_tol), cfg);
  const RationalMap f = parse_map(o.f_text, cfg.coprime_tol);
  json doc = {{"command", "adjoint"},
              {"map", format_map(adjoint.symbol())},
              {"f", format_map(f)},
              {"class", to_string(adjoint.map_class().kind)}};
  if (o.coeffs) {
    json coeffs = json::array();
    const TruncatedSeries series = adjoint.coefficients(f);
    for (const Complex& c : series.coeffs()) coeffs.push_back(to_json(c));
    doc["coeffs"] = std::move(coeffs);
  }
  if (!o.at.empty()) {
    json values = json::array();
    for (const std::string& text : o.at) {
      const Complex z = parse_complex(text);
      values.push_back({{"z", to_json(z)}, {"value", to_json(adjoint.apply(f, z))}});
    }
    doc["values"] = std::move(values);
  }
  return doc;
}

json cmd_verify(const Options& o, bool& passed) {
  VerifyConfig vc{o.cfg, o.cfg.seed};
  const std::vector<std::string> names = o.all ? suite_names() : o.suites;
  json reports = json::array();
  passed = true;
  for (const std::string& name : names) {
    const VerifyReport r = run_suite(name, vc);
    passed = passed && r.passed();
    reports.push_back(to_json(r));
  }
  return {{"command", "verify"}, {"seed", vc.seed}, {"pass", passed}, {"suites", std::move(reports)}};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Composition operator adjoints on H^2 for rational self-maps of the disk", "hardyadj"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--n-terms", o.cfg.n_terms, "Taylor coefficients kept")->capture_default_str();
  app.add_option("--samples", o.cfg.samples, "Sample points on the extraction circle (power of two)")
      ->capture_default_str();
  app.add_option("--radius", o.cfg.radius, "Extraction radius in (0, 1)")->capture_default_str();
  app.add_option("--tol-root", o.cfg.tol_root, "Root finder relative tolerance")->capture_default_str();
  app.add_option("--tol-branch", o.cfg.tol_branch, "Branch residual tolerance")->capture_default_str();
  app.add_option("--tol-coprime", o.cfg.coprime_tol, "Common-root tolerance for reducing maps")->capture_default_str();
  app.add_option("--seed", o.cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--out", o.out_path, "Also write the JSON report to this file");

  auto* classify = app.add_subcommand("classify", "Classify a map by phi(infinity)");
  classify->add_option("map", o.map_text, "Rational map in z")->required();

  auto* branches = app.add_subcommand("branches", "Branch values sigma_j and weights psi_j at a point");
  branches->add_option("map", o.map_text, "Rational map in z")->required();
  branches->add_option("--at", o.at, "Evaluation point(s), e.g. 0.25 or 0.1-0.2i")->required();

  auto* adjoint = app.add_subcommand("adjoint", "Evaluate the adjoint on a rational function");
  adjoint->add_option("map", o.map_text, "Rational map in z")->required();
  adjoint->add_option("--f", o.f_text, "Rational function f in z")->required();
  auto* at_opt = adjoint->add_option("--at", o.at, "Evaluation point(s)");
  auto* coeffs_opt = adjoint->add_option("--coeffs", o.coeffs, "Emit the first N Taylor coefficients");
  at_opt->excludes(coeffs_opt);

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  auto* suite_opt = verify->add_option("--suite", o.suites, "Suite name(s)")->check(CLI::IsMember(suite_names()));
  auto* all_opt = verify->add_flag("--all", o.all, "Run every suite");
  suite_opt->excludes(all_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInvalidInput;
  }
  if (adjoint->parsed() && o.at.empty() && !o.coeffs) {
    err << "adjoint: one of --at or --coeffs is required\n";
    return kInvalidInput;
  }
  if (verify->parsed() && o.suites.empty() && !o.all) {
    err << "verify: one of --suite or --all is required\n";
    return kInvalidInput;
  }

  json doc;
  int status = kOk;
  try {
    o.cfg.validate();
    if (classify->parsed()) {
      doc = cmd_classify(o);
      if (!doc["self_map"].get<bool>()) status = kInvalidInput;
    } else if (branches->parsed()) {
      doc = cmd_branches(o);
    } else if (adjoint->parsed()) {
      doc = cmd_adjoint(o);
    } else {
      bool passed = false;
      doc = cmd_verify(o, passed);
      if (!passed) status = kVerificationFailed;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    doc = {{"error", to_string(e.code())}, {"message", e.what()}};
    status = exit_code_for(e);
  }

  const std::string text = doc.dump(2);
  out << text << "\n";
  if (!o.out_path.empty()) {
    std::ofstream file(o.out_path);
    if (!file) {
      err << "cannot open " << o.out_path << "\n";
      return kInvalidInput;
    }
    file << text << "\n";
  }
  return status;
}

}  // namespace hardy::cli
