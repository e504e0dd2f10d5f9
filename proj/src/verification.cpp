#include "hardy/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "hardy/error.hpp"
#include "hardy/expression.hpp"

namespace hardy {

namespace {

constexpr double kSampleModulus = 0.9;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  // Uniform in the disk of the given radius.
  Complex in_disk(double radius = 1.0) {
    const double r = radius * std::sqrt(unit_(rng_));
    return std::polar(r, 2.0 * std::numbers::pi * unit_(rng_));
  }

  Poly polynomial(int max_deg) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::vector<Complex> c(static_cast<std::size_t>(deg(rng_)) + 1);
    for (Complex& x : c) x = in_disk();
    return Poly(std::move(c));
  }

 private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

std::string describe(Complex z) { return format_complex(z); }

void merge(VerifyReport& into, const VerifyReport& from) {
  for (const VerifyCase& c : from.cases) into.cases.push_back(c);
  into.max_error = std::max(into.max_error, from.max_error);
  into.maps.insert(from.maps.begin(), from.maps.end());
  into.operations.insert(from.operations.begin(), from.operations.end());
}

VerifyReport start(const std::string& suite, const VerifyConfig& cfg) {
  VerifyReport r;
  r.suite = suite;
  r.seed = cfg.seed;
  return r;
}

std::uint64_t derived_seed(const VerifyConfig& cfg, const std::string& tag) {
  return cfg.seed ^ std::hash<std::string>{}(tag);
}

bool is_boundary(const TestMap& m) { return m.expected_kind == MapKind::Boundary; }

TestMap make(std::string name, std::string expr, MapKind kind, std::string provenance) {
  RationalMap map = parse_map(expr);
  return {std::move(name), std::move(expr), std::move(map), kind, std::move(provenance)};
}

}  // namespace

const std::vector<TestMap>& catalog() {
  static const std::vector<TestMap> maps = {
      make("lfm_exterior", "(2*z)/(z+4)", MapKind::Exterior,
           "linear fractional, phi(inf) = 2; uncorrected formula is not analytic"),
      make("lfm_interior", "z/(2*z+4)", MapKind::Interior,
           "linear fractional, phi(inf) = 1/2; uncorrected formula fails to fix constants"),
      make("lfm_boundary", "z/(z+4)", MapKind::Boundary,
           "linear fractional, phi(inf) = 1; preimage boundary is the line Re z = -2"),
      make("monomial_2", "z^2", MapKind::Infinity, "z^m with m = 2"),
      make("monomial_3", "z^3", MapKind::Infinity, "z^m with m = 3"),
      make("quadratic_half", "0.5*z^2 + 0.5*z", MapKind::Infinity, "a z^2 + b z with a = b = 1/2"),
      make("quadratic_general", "0.25*z^2 + (1/3+0.2i)*z", MapKind::Infinity, "a z^2 + b z with a = 1/4, b = 1/3 + i/5"),
      make("bourdon", "(z^2-6*z+9)/(z^2-10*z+13)", MapKind::Boundary, "Bourdon's quadratic fractional map"),
  };
  return maps;
}

const TestMap& catalog_entry(const std::string& name) {
  for (const TestMap& m : catalog())
    if (m.name == name) return m;
  throw Error(ErrorCode::InvalidArgument, "no catalog map named " + name);
}

void VerifyReport::add(std::string input, double measured, double tolerance) {
  const bool ok = measured <= tolerance;
  cases.push_back({std::move(input), measured, tolerance, false, ok});
  if (std::isnan(measured)) max_error = measured;
  else if (!std::isnan(max_error)) max_error = std::max(max_error, measured);
}

void VerifyReport::add_lower_bound(std::string input, double measured, double threshold) {
  cases.push_back({std::move(input), measured, threshold, true, measured >= threshold});
}

bool VerifyReport::passed() const {
  return std::all_of(cases.begin(), cases.end(), [](const VerifyCase& c) { return c.pass; });
}

nlohmann::json to_json(const VerifyReport& report) {
  nlohmann::json cases = nlohmann::json::array();
  for (const VerifyCase& c : report.cases)
    cases.push_back({{"input", c.input},
                     {"measured", c.measured},
                     {"tolerance", c.tolerance},
                     {"bound", c.lower_bound ? "lower" : "upper"},
                     {"pass", c.pass}});
  return {{"suite", report.suite},
          {"pass", report.passed()},
          {"max_error", report.max_error},
          {"seed", report.seed},
          {"maps", report.maps},
          {"operations", report.operations},
          {"cases", std::move(cases)}};
}

VerifyReport check_adjoint_identity(const TestMap& map, int trials, int max_deg, const VerifyConfig& cfg,
                                    double tolerance) {
  VerifyReport report = start("adjoint", cfg);
  report.maps.insert(map.name);
  report.operations.insert("classify_map");
  report.operations.insert("adjoint_coeffs");
  report.operations.insert("branch_solve");

  const CompositionAdjoint adjoint(map.map, cfg.adjoint);
  const SeriesConfig series = cfg.adjoint.series();
  Sampler sampler(derived_seed(cfg, "adjoint:" + map.name));
  for (int t = 0; t < trials; ++t) {
    const Poly f = sampler.polynomial(max_deg);
    const Poly g = sampler.polynomial(max_deg);
    const TruncatedSeries fs = TruncatedSeries::from_poly(f, series.n_terms);
    const TruncatedSeries gs = TruncatedSeries::from_poly(g, series.n_terms);
    const Complex lhs = inner_product(compose_series(fs, map.map, series), gs);
    const Complex rhs = inner_product(fs, adjoint.coefficients(RationalMap::polynomial(g)));
    const double err = std::abs(lhs - rhs) / (1.0 + fs.norm() * gs.norm());
    report.add(map.name + " trial " + std::to_string(t), err, tolerance);
  }
  return report;
}

VerifyReport check_kernel_identity(const TestMap& map, int n_w, int n_z, const VerifyConfig& cfg, double tolerance) {
  VerifyReport report = start("kernel", cfg);
  report.maps.insert(map.name);
  report.operations.insert("adjoint_eval");

  const CompositionAdjoint adjoint(map.map, cfg.adjoint);
  Sampler sampler(derived_seed(cfg, "kernel:" + map.name));
  for (int i = 0; i < n_w; ++i) {
    // The first kernel is K_0 = 1.
    const Complex w = i == 0 ? Complex{} : sampler.in_disk(kSampleModulus);
    const RationalMap kw = kernel_function(KernelPoint(w));
    const Complex image = map.map.finite_at(w);
    for (int j = 0; j < n_z; ++j) {
      Complex z = sampler.in_disk(kSampleModulus);
      const Complex expected = 1.0 / (1.0 - std::conj(image) * z);
      const double err = std::abs(adjoint.apply(kw, z) - expected);
      report.add(map.name + " w=" + describe(w) + " z=" + describe(z), err, tolerance);
    }
  }
  return report;
}

VerifyReport check_against_oracle(const TestMap& map, int max_deg, const VerifyConfig& cfg, double tolerance) {
  const SeriesConfig series = cfg.adjoint.series();
  if (max_deg < 0 || static_cast<std::size_t>(max_deg) * 4 > series.n_terms)
    throw Error(ErrorCode::InvalidArgument, "oracle comparison needs max_deg <= N/4");
  VerifyReport report = start("oracle", cfg);
  report.maps.insert(map.name);
  report.operations.insert("adjoint_coeffs");

  const CompositionAdjoint adjoint(map.map, cfg.adjoint);
  const std::size_t width = static_cast<std::size_t>(max_deg) + 1;
  for (int j = 0; j <= max_deg; ++j) {
    const TruncatedSeries basis = TruncatedSeries::monomial(static_cast<std::size_t>(j), series.n_terms);
    const TruncatedSeries oracle = oracle_adjoint_apply(map.map, basis, series);
    const TruncatedSeries engine = adjoint.coefficients(RationalMap::polynomial(Poly::monomial(static_cast<std::size_t>(j))));
    for (std::size_t n = 0; n < width; ++n)
      report.add(map.name + " g=z^" + std::to_string(j) + " coeff " + std::to_string(n),
                 std::abs(oracle[n] - engine[n]), tolerance);
  }
  return report;
}

VerifyReport check_closed_forms(const VerifyConfig& cfg) {
  VerifyReport report = start("closed_forms", cfg);
  report.operations.insert("adjoint_eval");
  report.operations.insert("lfm_adjoint_eval");
  report.operations.insert("bourdon_adjoint_eval");
  Sampler sampler(derived_seed(cfg, "closed_forms"));

  constexpr int kPoints = 50;
  auto test_functions = [&] {
    return std::vector<RationalMap>{RationalMap::constant(1.0), RationalMap::polynomial(Poly::monomial(2)),
                                    RationalMap::polynomial(sampler.polynomial(4)),
                                    kernel_function(KernelPoint(sampler.in_disk(kSampleModulus)))};
  };
  auto compare = [&](const std::string& label, const CompositionAdjoint& engine, auto&& closed, double tol) {
    const std::vector<RationalMap> fs = test_functions();
    for (int k = 0; k < kPoints; ++k) {
      const Complex z = sampler.in_disk(kSampleModulus);
      for (std::size_t i = 0; i < fs.size(); ++i)
        report.add(label + " f#" + std::to_string(i) + " z=" + describe(z),
                   std::abs(engine.apply(fs[i], z) - closed(fs[i], z)), tol);
    }
  };

  // Linear fractional closed form, including a linear map and the identity.
  std::vector<std::pair<std::string, RationalMap>> lfms;
  for (const TestMap& m : catalog())
    if (m.map.degree() == 1) lfms.emplace_back(m.name, m.map);
  lfms.emplace_back("linear", parse_map("0.5*z + 0.25"));
  lfms.emplace_back("identity", RationalMap::identity());
  for (const auto& [name, map] : lfms) {
    if (catalog().end() != std::find_if(catalog().begin(), catalog().end(), [&](const TestMap& m) { return m.name == name; }))
      report.maps.insert(name);
    const CompositionAdjoint engine(map, cfg.adjoint);
    compare("lfm " + name, engine, [&](const RationalMap& f, Complex z) { return lfm_adjoint_eval(map, f, z); }, 1e-10);
  }

  for (int m = 2; m <= 4; ++m) {
    const CompositionAdjoint engine(RationalMap::polynomial(Poly::monomial(static_cast<std::size_t>(m))), cfg.adjoint);
    if (m <= 3) report.maps.insert("monomial_" + std::to_string(m));
    compare("monomial m=" + std::to_string(m), engine,
            [m](const RationalMap& f, Complex z) { return monomial_adjoint_eval(m, f, z); }, 1e-12);
  }

  const std::pair<const char*, std::pair<Complex, Complex>> quadratics[] = {
      {"quadratic_half", {0.5, 0.5}}, {"quadratic_general", {0.25, Complex(1.0 / 3.0, 0.2)}}};
  for (const auto& [name, ab] : quadratics) {
    const auto [a, b] = ab;
    report.maps.insert(name);
    const CompositionAdjoint engine(catalog_entry(name).map, cfg.adjoint);
    compare(std::string("quadratic ") + name, engine,
            [a = a, b = b](const RationalMap& f, Complex z) { return quadratic_adjoint_eval(a, b, f, z); }, 1e-9);
  }

  report.maps.insert("bourdon");
  const CompositionAdjoint bourdon(catalog_entry("bourdon").map, cfg.adjoint);
  compare("bourdon", bourdon, [](const RationalMap& f, Complex z) { return bourdon_adjoint_eval(f, z); }, 1e-6);
  return report;
}

VerifyReport demo_counterexamples(const VerifyConfig& cfg) {
  VerifyReport report = start("counterexamples", cfg);
  report.operations.insert("uncorrected_cg_eval");
  report.operations.insert("adjoint_eval");
  const RationalMap one = RationalMap::constant(1.0);
  const Complex z = 0.25;

  // Not analytic: 2z/(2z - 1) at 1/4 is -1 where the adjoint is 1.
  {
    const TestMap& m = catalog_entry("lfm_exterior");
    report.maps.insert(m.name);
    const CompositionAdjoint adjoint(m.map, cfg.adjoint);
    const Complex wrong = adjoint.uncorrected(one, z);
    report.add_lower_bound("lfm_exterior deviation from 1 at z=0.25", std::abs(wrong - 1.0), 0.1);
    report.add("lfm_exterior uncorrected value vs -1", std::abs(wrong - (-1.0)), 1e-10);
    report.add("lfm_exterior corrected value vs 1", std::abs(adjoint.apply(one, z) - 1.0), 1e-10);
  }
  // Does not fix constants: psi = z/(z - 2) is -1/7 at 1/4.
  {
    const TestMap& m = catalog_entry("lfm_interior");
    report.maps.insert(m.name);
    const CompositionAdjoint adjoint(m.map, cfg.adjoint);
    const Complex wrong = adjoint.uncorrected(one, z);
    report.add_lower_bound("lfm_interior deviation from 1 at z=0.25", std::abs(wrong - 1.0), 0.1);
    report.add("lfm_interior uncorrected value vs -1/7", std::abs(wrong - (-1.0 / 7.0)), 1e-10);
    report.add("lfm_interior corrected value vs 1", std::abs(adjoint.apply(one, z) - 1.0), 1e-10);
  }
  // Linear maps (c = 0): both formulas agree.
  {
    Sampler sampler(derived_seed(cfg, "counterexamples"));
    for (const char* expr : {"0.5*z + 0.25", "(0.3-0.2i)*z + 0.1i"}) {
      const CompositionAdjoint adjoint(parse_map(expr), cfg.adjoint);
      for (int k = 0; k < 10; ++k) {
        const RationalMap f = RationalMap::polynomial(sampler.polynomial(6));
        const Complex w = sampler.in_disk(kSampleModulus);
        report.add(std::string(expr) + " z=" + describe(w), std::abs(adjoint.uncorrected(f, w) - adjoint.apply(f, w)),
                   1e-10);
      }
    }
  }
  return report;
}

VerifyReport check_negative_fourier_suite(const VerifyConfig& cfg) {
  VerifyReport report = start("negative_fourier", cfg);
  report.operations.insert("branch_solve");
  constexpr std::size_t kSamples = 1024;
  constexpr std::size_t kMaxN = 10;
  constexpr double kTol = 1e-7;
  Sampler sampler(derived_seed(cfg, "negative_fourier"));

  for (const TestMap& m : catalog()) {
    if (m.expected_kind == MapKind::Boundary) continue;
    report.maps.insert(m.name);
    const CompositionAdjoint adjoint(m.map, cfg.adjoint);
    const ExtendedValue inf = adjoint.map_class().at_infinity;
    std::vector<Poly> gs = {Poly::constant(1.0), sampler.polynomial(4)};
    for (std::size_t gi = 0; gi < gs.size(); ++gi) {
      const RationalMap g = RationalMap::polynomial(gs[gi]);
      const std::vector<Complex> c = negative_fourier_coeffs(adjoint.sample_branch_sum(g, kSamples), kMaxN);
      for (std::size_t n = 1; n <= kMaxN; ++n) {
        Complex expected{};
        if (m.expected_kind == MapKind::Exterior)
          expected = gs[gi][0] / std::pow(std::conj(inf.value()), static_cast<double>(n));
        report.add(m.name + " g#" + std::to_string(gi) + " c_-" + std::to_string(n), std::abs(c[n - 1] - expected), kTol);
      }
    }
  }
  return report;
}

VerifyReport check_radius_independence(const VerifyConfig& cfg) {
  VerifyReport report = start("radius", cfg);
  report.operations.insert("adjoint_coeffs");
  constexpr std::size_t kCompared = 17;
  for (const TestMap& m : catalog()) {
    report.maps.insert(m.name);
    const CompositionAdjoint adjoint(m.map, cfg.adjoint);
    const RationalMap fs[] = {RationalMap::constant(1.0), RationalMap::polynomial(Poly::monomial(2))};
    for (std::size_t i = 0; i < 2; ++i) {
      const TruncatedSeries inner = adjoint.coefficients(fs[i], 0.4);
      const TruncatedSeries outer = adjoint.coefficients(fs[i], 0.6);
      for (std::size_t n = 0; n < kCompared; ++n)
        report.add(m.name + (i == 0 ? " f=1" : " f=z^2") + " coeff " + std::to_string(n), std::abs(inner[n] - outer[n]),
                   1e-8);
    }
  }
  return report;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"adjoint", "kernel",           "oracle", "closed_forms",
                                                 "counterexamples", "negative_fourier", "radius"};
  return names;
}

VerifyReport run_suite(const std::string& name, const VerifyConfig& cfg) {
  if (name == "adjoint" || name == "kernel" || name == "oracle") {
    VerifyReport report = start(name, cfg);
    for (const TestMap& m : catalog()) {
      if (name == "adjoint") merge(report, check_adjoint_identity(m, 100, 8, cfg, is_boundary(m) ? 1e-6 : 1e-8));
      else if (name == "kernel") merge(report, check_kernel_identity(m, 20, 20, cfg, 1e-8));
      else merge(report, check_against_oracle(m, 16, cfg, 1e-7));
    }
    if (name == "kernel") {
      // Constant symbol: every kernel goes to K_c.
      TestMap constant{"constant", "0.3-0.2i", RationalMap::constant(Complex(0.3, -0.2)), MapKind::Constant,
                       "constant map"};
      merge(report, check_kernel_identity(constant, 5, 5, cfg, 1e-12));
    }
    return report;
  }
  if (name == "closed_forms") return check_closed_forms(cfg);
  if (name == "counterexamples") return demo_counterexamples(cfg);
  if (name == "negative_fourier") return check_negative_fourier_suite(cfg);
  if (name == "radius") return check_radius_independence(cfg);
  throw Error(ErrorCode::InvalidArgument, "unknown suite " + name);
}

}  // namespace hardy
