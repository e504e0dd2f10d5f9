#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "hardy/adjoint.hpp"
#include "hardy/expression.hpp"
#include "hardy/verification.hpp"

using namespace hardy;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// Worst ratio measured/tolerance over upper-bound cases.
Outcome summarize(const VerifyReport& r) {
  double worst = 0.0, at_tol = 0.0;
  for (const VerifyCase& c : r.cases)
    if (!c.lower_bound && c.measured / c.tolerance >= worst) {
      worst = c.measured / c.tolerance;
      at_tol = c.tolerance;
    }
  return {r.passed() && !r.cases.empty(),
          std::to_string(r.cases.size()) + " cases, " + fmt("worst %.3g (tol %.0e)", worst * at_tol, at_tol)};
}

int failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s  %d  %-36s %s  [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

}  // namespace

int main() {
  const VerifyConfig cfg{};

  criterion(1, "adjoint identity", [&] {
    const auto t0 = Clock::now();
    VerifyReport all;
    for (const TestMap& m : catalog()) {
      const VerifyReport r =
          check_adjoint_identity(m, 100, 8, cfg, m.expected_kind == MapKind::Boundary ? 1e-6 : 1e-8);
      all.cases.insert(all.cases.end(), r.cases.begin(), r.cases.end());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    Outcome o = summarize(all);
    o.pass = o.pass && secs <= 60.0;
    o.detail += fmt(", %.1f s of %.0f s budget", secs, 60.0);
    return o;
  });

  criterion(2, "kernel identity", [&] {
    VerifyReport all;
    for (const TestMap& m : catalog()) {
      const VerifyReport r = check_kernel_identity(m, 20, 20, cfg, 1e-8);
      all.cases.insert(all.cases.end(), r.cases.begin(), r.cases.end());
    }
    return summarize(all);
  });

  criterion(3, "closed-form agreement", [&] { return summarize(check_closed_forms(cfg)); });

  criterion(4, "matrix oracle equivalence", [&] {
    VerifyReport all;
    for (const TestMap& m : catalog()) {
      const VerifyReport r = check_against_oracle(m, 16, cfg, 1e-7);
      all.cases.insert(all.cases.end(), r.cases.begin(), r.cases.end());
    }
    return summarize(all);
  });

  criterion(5, "uncorrected formula counterexamples", [&] {
    const RationalMap one = RationalMap::constant(1.0);
    const double dev_ext = std::abs(uncorrected_cg_eval(catalog_entry("lfm_exterior").map, one, 0.25) - 1.0);
    const double dev_int = std::abs(uncorrected_cg_eval(catalog_entry("lfm_interior").map, one, 0.25) - 1.0);
    const RationalMap linear = parse_map("0.5*z + 0.25");
    const RationalMap f = parse_map("1 - 2*z + (0.5+0.5i)*z^3");
    double agree = 0.0;
    for (const Complex z : {Complex(0.3, 0.1), Complex(-0.6, 0.2), Complex(0.1, -0.8)})
      agree = std::max(agree, std::abs(uncorrected_cg_eval(linear, f, z) - adjoint_eval(linear, f, z)));
    const bool pass = dev_ext >= 0.1 && dev_int >= 0.1 && agree <= 1e-10;
    return Outcome{pass, fmt("deviations %.6g and ", dev_ext, 0) + fmt("%.6g (need >= 0.1), linear gap %.2e", dev_int, agree)};
  });

  criterion(6, "negative Fourier law", [&] {
    const RationalMap one = RationalMap::constant(1.0);
    const CompositionAdjoint ext(catalog_entry("lfm_exterior").map, cfg.adjoint);
    const CompositionAdjoint in(catalog_entry("lfm_interior").map, cfg.adjoint);
    const auto ce = negative_fourier_coeffs(ext.sample_branch_sum(one, 1024), 10);
    const auto ci = negative_fourier_coeffs(in.sample_branch_sum(one, 1024), 10);
    double err_ext = 0.0, err_int = 0.0;
    for (std::size_t n = 1; n <= 10; ++n) {
      err_ext = std::max(err_ext, std::abs(ce[n - 1] - std::pow(2.0, -static_cast<double>(n))));
      err_int = std::max(err_int, std::abs(ci[n - 1]));
    }
    return Outcome{err_ext <= 1e-7 && err_int <= 1e-7, fmt("|c_-n - 2^-n| %.2e, |c_-n| %.2e (tol 1e-07)", err_ext, err_int)};
  });

  criterion(7, "radius independence", [&] { return summarize(check_radius_independence(cfg)); });

  criterion(8, "CLI round trip and verify --all", [&] {
    int mismatches = 0;
    for (const TestMap& m : catalog()) {
      const RationalMap parsed = parse_map(m.expression);
      if (!(parsed == m.map) || !(parse_map(format_map(parsed)) == parsed)) ++mismatches;
    }
    const char* argv[] = {"hardyadj", "verify", "--all"};
    std::ostringstream out, err;
    const auto t0 = Clock::now();
    const int status = cli::run(3, argv, out, err);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool pass = mismatches == 0 && status == cli::kOk && secs <= 180.0;
    return Outcome{pass, std::to_string(mismatches) + " round-trip mismatches, verify --all exit " +
                             std::to_string(status) + fmt(" in %.1f s (budget %.0f s)", secs, 180.0)};
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
