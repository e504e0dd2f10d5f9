#include "hardy/series.hpp"

#include <fftw3.h>

#include <bit>
#include <optional>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "hardy/error.hpp"

namespace hardy {

namespace {

constexpr double kPoleGuard = 1e-6;

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};

// Unnormalised forward DFT: out[k] = sum_j in[j] exp(-2 pi i jk / M).
std::vector<Complex> forward_dft(std::span<const Complex> in) {
  std::vector<Complex> src(in.begin(), in.end());
  std::vector<Complex> out(in.size());
  auto* s = reinterpret_cast<fftw_complex*>(src.data());
  auto* d = reinterpret_cast<fftw_complex*>(out.data());
  std::unique_ptr<fftw_plan_s, PlanDeleter> plan(
      fftw_plan_dft_1d(static_cast<int>(src.size()), s, d, FFTW_FORWARD, FFTW_ESTIMATE));
  fftw_execute(plan.get());
  return out;
}

void require_power_of_two(std::size_t m) {
  if (m < 2 || !std::has_single_bit(m)) throw Error(ErrorCode::InvalidArgument, "sample count must be a power of two");
}

// e^{-2 pi i phase n / M}: undoes the grid rotation for frequency n.
Complex phase_factor(const BoundarySamples& s, double freq) {
  if (s.phase == 0.0) return 1.0;
  return std::polar(1.0, -2.0 * std::numbers::pi * s.phase * freq / static_cast<double>(s.size()));
}

double min_distance(Complex z, const std::vector<Root>& points) {
  double d = std::numeric_limits<double>::infinity();
  for (const Root& p : points) d = std::min(d, std::abs(z - p.value));
  return d;
}

template <typename Eval>
BoundarySamples sample_avoiding(Eval&& eval, const SeriesConfig& cfg) {
  for (double phase : {0.0, 0.5}) {
    BoundarySamples s{std::vector<Complex>(cfg.samples), cfg.radius, phase};
    bool ok = true;
    for (std::size_t k = 0; k < s.size() && ok; ++k) {
      const auto v = eval(s.point(k));
      if (!v) ok = false;
      else s.values[k] = *v;
    }
    if (ok) return s;
  }
  throw Error(ErrorCode::PoleInDisk, "sample grid collides with a pole after a half-step shift");
}

}  // namespace

TruncatedSeries TruncatedSeries::monomial(std::size_t power, std::size_t n, Complex c) {
  TruncatedSeries s = zero(n);
  if (power < n) s[power] = c;
  return s;
}

TruncatedSeries TruncatedSeries::from_poly(const Poly& p, std::size_t n) {
  TruncatedSeries s = zero(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = p[i];
  return s;
}

double TruncatedSeries::norm() const noexcept {
  double acc = 0.0;
  for (const Complex& c : coeffs_) acc += std::norm(c);
  return std::sqrt(acc);
}

Complex TruncatedSeries::operator()(Complex z) const noexcept {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex inner_product(const TruncatedSeries& f, const TruncatedSeries& g) {
  Complex acc{};
  const std::size_t n = std::min(f.size(), g.size());
  for (std::size_t i = 0; i < n; ++i) acc += f[i] * std::conj(g[i]);
  return acc;
}

KernelPoint::KernelPoint(Complex w) : w_(w) {
  if (!(std::abs(w) < 1.0)) throw Error(ErrorCode::InvalidArgument, "kernel point must satisfy |w| < 1");
}

TruncatedSeries kernel_at(KernelPoint w, std::size_t n) {
  TruncatedSeries s = TruncatedSeries::zero(n);
  Complex power = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = power;
    power *= std::conj(w.w());
  }
  return s;
}

RationalMap kernel_function(KernelPoint w) {
  return RationalMap(Poly::constant(1.0), Poly({1.0, -std::conj(w.w())}));
}

Complex BoundarySamples::point(std::size_t k) const {
  const double theta = 2.0 * std::numbers::pi * (static_cast<double>(k) + phase) / static_cast<double>(values.size());
  return std::polar(radius, theta);
}

BoundarySamples sample_circle(const std::function<Complex(Complex)>& f, std::size_t count, double radius,
                              double phase) {
  require_power_of_two(count);
  if (!(radius > 0.0 && radius <= 1.0)) throw Error(ErrorCode::InvalidArgument, "sampling radius must be in (0, 1]");
  BoundarySamples s{std::vector<Complex>(count), radius, phase};
  for (std::size_t k = 0; k < count; ++k) s.values[k] = f(s.point(k));
  return s;
}

std::vector<Complex> fourier_coefficients(const BoundarySamples& s) {
  require_power_of_two(s.size());
  const std::size_t m = s.size();
  std::vector<Complex> c = forward_dft(s.values);
  for (std::size_t k = 0; k < m; ++k) {
    const double freq = k < m / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(m);
    c[k] *= phase_factor(s, freq) / (static_cast<double>(m) * std::pow(s.radius, freq));
  }
  return c;
}

TruncatedSeries series_from_samples(const BoundarySamples& s, std::size_t n) {
  require_power_of_two(s.size());
  const std::size_t m = s.size();
  const std::size_t used = std::min(n, m);
  if (used > 0 && std::pow(s.radius, static_cast<double>(used - 1)) < std::numeric_limits<double>::min())
    throw Error(ErrorCode::RadiusTooSmall, "radius^n underflows for the requested truncation");
  const std::vector<Complex> raw = forward_dft(s.values);
  TruncatedSeries out = TruncatedSeries::zero(n);
  double scale = static_cast<double>(m);
  for (std::size_t k = 0; k < used; ++k) {
    out[k] = raw[k] * phase_factor(s, static_cast<double>(k)) / scale;
    scale *= s.radius;
  }
  return out;
}

TruncatedSeries riesz_project(const BoundarySamples& s, std::size_t n) {
  const std::vector<Complex> c = fourier_coefficients(s);
  if (n > c.size() / 2) throw Error(ErrorCode::InvalidArgument, "projection length exceeds M/2");
  return TruncatedSeries(std::vector<Complex>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n)));
}

std::vector<Complex> negative_fourier_coeffs(const BoundarySamples& s, std::size_t n_max) {
  const std::vector<Complex> c = fourier_coefficients(s);
  if (n_max >= c.size() / 2) throw Error(ErrorCode::InvalidArgument, "n_max must be below M/2");
  std::vector<Complex> out(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) out[n - 1] = c[c.size() - n];
  return out;
}

void SeriesConfig::validate() const {
  require_power_of_two(samples);
  if (n_terms == 0) throw Error(ErrorCode::InvalidArgument, "truncation must be positive");
  if (!(radius > 0.0 && radius <= 1.0)) throw Error(ErrorCode::InvalidArgument, "sampling radius must be in (0, 1]");
}

TruncatedSeries compose_series(const RationalMap& f, const RationalMap& phi, const SeriesConfig& cfg) {
  cfg.validate();
  const std::vector<Root> phi_poles = phi.poles();
  const std::vector<Root> f_poles = f.poles();
  auto eval = [&](Complex z) -> std::optional<Complex> {
    if (min_distance(z, phi_poles) < kPoleGuard) return std::nullopt;
    const Complex w = phi.finite_at(z);
    if (min_distance(w, f_poles) < kPoleGuard) return std::nullopt;
    return f.finite_at(w);
  };
  return series_from_samples(sample_avoiding(eval, cfg), cfg.n_terms);
}

TruncatedSeries compose_series(const TruncatedSeries& f, const RationalMap& phi, const SeriesConfig& cfg) {
  cfg.validate();
  const std::vector<Root> phi_poles = phi.poles();
  auto eval = [&](Complex z) -> std::optional<Complex> {
    if (min_distance(z, phi_poles) < kPoleGuard) return std::nullopt;
    return f(phi.finite_at(z));
  };
  return series_from_samples(sample_avoiding(eval, cfg), cfg.n_terms);
}

TruncatedSeries OperatorMatrix::apply(const TruncatedSeries& f) const {
  TruncatedSeries out = TruncatedSeries::zero(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i] += (*this)(i, j) * f[j];
  return out;
}

TruncatedSeries OperatorMatrix::apply_adjoint(const TruncatedSeries& g) const {
  TruncatedSeries out = TruncatedSeries::zero(n_);
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t i = 0; i < n_; ++i) out[j] += std::conj((*this)(i, j)) * g[i];
  return out;
}

OperatorMatrix comp_op_matrix(const RationalMap& phi, const SeriesConfig& cfg) {
  cfg.validate();
  const std::vector<Root> poles = phi.poles();
  auto eval = [&](Complex z) -> std::optional<Complex> {
    if (min_distance(z, poles) < kPoleGuard) return std::nullopt;
    return phi.finite_at(z);
  };
  const BoundarySamples base = sample_avoiding(eval, cfg);

  OperatorMatrix m(cfg.n_terms);
  BoundarySamples power{std::vector<Complex>(base.size(), Complex(1.0)), base.radius, base.phase};
  for (std::size_t j = 0; j < cfg.n_terms; ++j) {
    const TruncatedSeries column = series_from_samples(power, cfg.n_terms);
    for (std::size_t i = 0; i < cfg.n_terms; ++i) m(i, j) = column[i];
    for (std::size_t k = 0; k < power.size(); ++k) power.values[k] *= base.values[k];
  }
  return m;
}

TruncatedSeries oracle_adjoint_apply(const RationalMap& phi, const TruncatedSeries& g, const SeriesConfig& cfg) {
  return comp_op_matrix(phi, cfg).apply_adjoint(g);
}

}  // namespace hardy
