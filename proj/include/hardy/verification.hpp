#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "hardy/adjoint.hpp"

namespace hardy {

struct TestMap {
  std::string name;
  // Surface syntax accepted by parse_map.
  std::string expression;
  RationalMap map;
  MapKind expected_kind;
  std::string provenance;
};

// The symbols exercised by every suite: three linear fractional maps (one per
// class of phi(inf)), z^2, z^3, two quadratics a z^2 + b z and Bourdon's
// quadratic fractional map.
const std::vector<TestMap>& catalog();
const TestMap& catalog_entry(const std::string& name);

struct VerifyCase {
  std::string input;
  double measured = 0.0;
  double tolerance = 0.0;
  // Lower-bound cases pass when measured >= tolerance (used for the
  // counterexample deviations); all others when measured <= tolerance.
  bool lower_bound = false;
  bool pass = false;
};

struct VerifyReport {
  std::string suite;
  std::vector<VerifyCase> cases;
  double max_error = 0.0;
  std::uint64_t seed = 0;
  std::set<std::string> maps;
  std::set<std::string> operations;

  void add(std::string input, double measured, double tolerance);
  void add_lower_bound(std::string input, double measured, double threshold);
  bool passed() const;
};

nlohmann::json to_json(const VerifyReport& report);

struct VerifyConfig {
  AdjointConfig adjoint;
  std::uint64_t seed = 0x5EED;
};

// |<C_phi f, g> - <f, C*_phi g>| / (1 + |f||g|) for random polynomial pairs.
VerifyReport check_adjoint_identity(const TestMap& map, int trials, int max_deg, const VerifyConfig& cfg,
                                    double tolerance);
// |(C*_phi K_w)(z) - K_{phi(w)}(z)| for random w, z with modulus <= 0.9.
VerifyReport check_kernel_identity(const TestMap& map, int n_w, int n_z, const VerifyConfig& cfg, double tolerance);
// Matrix-adjoint oracle vs engine coefficients for g = z^j, j <= max_deg.
VerifyReport check_against_oracle(const TestMap& map, int max_deg, const VerifyConfig& cfg, double tolerance);
VerifyReport check_closed_forms(const VerifyConfig& cfg);
VerifyReport demo_counterexamples(const VerifyConfig& cfg);
VerifyReport check_negative_fourier_suite(const VerifyConfig& cfg);
// Coefficients extracted at r = 0.4 and r = 0.6 must agree.
VerifyReport check_radius_independence(const VerifyConfig& cfg);

// Suite names accepted by run_suite: adjoint, kernel, oracle, closed_forms,
// counterexamples, negative_fourier, radius.
const std::vector<std::string>& suite_names();
VerifyReport run_suite(const std::string& name, const VerifyConfig& cfg);

}  // namespace hardy
