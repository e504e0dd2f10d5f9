#include "hardy/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "hardy/error.hpp"

namespace hardy {

Poly::Poly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) { trim(); }

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

Poly Poly::constant(Complex c) { return Poly({c}); }

Poly Poly::monomial(std::size_t power, Complex c) {
  std::vector<Complex> v(power + 1);
  v[power] = c;
  return Poly(std::move(v));
}

Poly Poly::from_roots(std::span<const Complex> roots, Complex leading) {
  Poly p = constant(leading);
  for (Complex r : roots) p = p * Poly({-r, 1.0});
  return p;
}

Complex Poly::operator()(Complex z) const noexcept {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double Poly::magnitude_at(Complex z) const noexcept {
  const double r = std::abs(z);
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

double Poly::norm1() const noexcept {
  double s = 0.0;
  for (const Complex& c : coeffs_) s += std::abs(c);
  return s;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
  return Poly(std::move(d));
}

Poly Poly::scaled(Complex c) const {
  std::vector<Complex> v(coeffs_);
  for (Complex& x : v) x *= c;
  return Poly(std::move(v));
}

Poly Poly::deflate(Complex root) const {
  if (coeffs_.size() <= 1) return {};
  const std::size_t n = coeffs_.size() - 1;
  std::vector<Complex> q(n);
  Complex carry = coeffs_[n];
  for (std::size_t i = n; i-- > 0;) {
    q[i] = carry;
    carry = coeffs_[i] + carry * root;
  }
  return Poly(std::move(q));
}

Poly Poly::conj_reversed(int width) const {
  if (width < degree()) throw Error(ErrorCode::InvalidArgument, "conj_reversed width below degree");
  std::vector<Complex> v(static_cast<std::size_t>(width) + 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[static_cast<std::size_t>(width) - i] = std::conj(coeffs_[i]);
  return Poly(std::move(v));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Complex> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
  return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) {
  std::vector<Complex> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] - b[i];
  return Poly(std::move(v));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Complex> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly(std::move(v));
}

Poly operator-(const Poly& a) { return a.scaled(-1.0); }

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Evaluation {
  Complex value;
  Complex slope;
  double scale;
};

Evaluation evaluate_with_slope(std::span<const Complex> a, Complex z) {
  Complex p{}, dp{};
  double s = 0.0;
  const double r = std::abs(z);
  for (std::size_t i = a.size(); i-- > 0;) {
    dp = dp * z + p;
    p = p * z + a[i];
    s = s * r + std::abs(a[i]);
  }
  return {p, dp, s};
}

// Aberth-Ehrlich on a polynomial with nonzero constant term.
std::vector<Complex> aberth(const Poly& p, const RootOptions& opt) {
  const auto a = p.coeffs();
  const int n = p.degree();
  if (n == 1) return {-a[0] / a[1]};

  // Starting circle: centroid of the roots, radius = geometric mean modulus
  // of the roots about the origin.
  const Complex centre = -a[n - 1] / (static_cast<double>(n) * a[n]);
  const double radius = std::max(std::pow(std::abs(a[0] / a[n]), 1.0 / n), 1e-3);

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double offset = 2.0 * std::numbers::pi * unit(rng);
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double jitter = 1.0 + 0.1 * (unit(rng) - 0.5);
    const double theta = offset + 2.0 * std::numbers::pi * (k + 0.25 * unit(rng)) / n;
    z[static_cast<std::size_t>(k)] = centre + radius * jitter * std::polar(1.0, theta);
  }

  std::vector<bool> done(z.size(), false);
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    bool all_done = true;
    for (std::size_t k = 0; k < z.size(); ++k) {
      if (done[k]) continue;
      const Evaluation e = evaluate_with_slope(a, z[k]);
      if (std::abs(e.value) <= 8.0 * kEps * n * e.scale) {
        done[k] = true;
        continue;
      }
      all_done = false;
      Complex repulsion{};
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      Complex step;
      if (e.slope == Complex{}) {
        step = Complex(radius * 1e-3, radius * 1e-3);
      } else {
        const Complex newton = e.value / e.slope;
        step = newton / (1.0 - newton * repulsion);
      }
      z[k] -= step;
      if (std::abs(step) <= 4.0 * kEps * std::abs(z[k])) done[k] = true;
    }
    if (all_done) return z;
  }
  // Stagnation at the rounding floor (typical near multiple roots) is
  // accepted when the backward error meets tol_root.
  for (const Complex& root : z) {
    const Evaluation e = evaluate_with_slope(a, root);
    if (std::abs(e.value) > opt.tol_root * e.scale) throw Error(ErrorCode::NonConvergence,
              "root finder exceeded " + std::to_string(opt.max_iterations) + " iterations");
  }
  return z;
}

Complex newton_polish(const Poly& p, Complex z) {
  const Poly dp = p.derivative();
  double best = std::abs(p(z));
  for (int i = 0; i < 4 && best > 0.0; ++i) {
    const Complex slope = dp(z);
    if (slope == Complex{}) break;
    const Complex candidate = z - p(z) / slope;
    const double res = std::abs(p(candidate));
    if (!(res < best)) break;
    best = res;
    z = candidate;
  }
  return z;
}

}  // namespace

std::vector<Root> find_roots(const Poly& p, const RootOptions& options) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "roots of the zero polynomial");
  if (p.degree() == 0) throw Error(ErrorCode::DegreeZero, "polynomial is a nonzero constant");

  // Exact zero roots are split off before iterating.
  const auto a = p.coeffs();
  std::size_t zeros = 0;
  while (a[zeros] == Complex{}) ++zeros;
  Poly reduced(std::vector<Complex>(a.begin() + static_cast<std::ptrdiff_t>(zeros), a.end()));

  std::vector<Complex> raw;
  if (reduced.degree() >= 1) raw = aberth(reduced, options);

  double max_mod = 0.0;
  for (Complex r : raw) max_mod = std::max(max_mod, std::abs(r));
  const double radius = options.cluster_radius * (1.0 + max_mod);

  // Single-linkage clustering.
  std::vector<std::size_t> parent(raw.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < raw.size(); ++i)
    for (std::size_t j = i + 1; j < raw.size(); ++j)
      if (std::abs(raw[i] - raw[j]) <= radius) parent[find(i)] = find(j);

  std::vector<Root> roots;
  std::vector<std::size_t> slot(raw.size(), raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::size_t c = find(i);
    if (slot[c] == raw.size()) {
      slot[c] = roots.size();
      roots.push_back({raw[i], 1});
    } else {
      Root& r = roots[slot[c]];
      r.value += raw[i];
      ++r.multiplicity;
    }
  }
  for (Root& r : roots) {
    r.value /= static_cast<double>(r.multiplicity);
    // A root of multiplicity m is a simple root of the (m-1)th derivative.
    Poly target = reduced;
    for (int k = 1; k < r.multiplicity; ++k) target = target.derivative();
    r.value = newton_polish(target, r.value);
  }
  if (zeros > 0) roots.push_back({Complex{}, static_cast<int>(zeros)});

  std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) {
    if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
    return x.value.imag() < y.value.imag();
  });
  return roots;
}

}  // namespace hardy
