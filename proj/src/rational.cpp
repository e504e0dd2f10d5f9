#include "hardy/rational.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hardy/error.hpp"

namespace hardy {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

Complex ExtendedValue::value() const {
  if (!value_) throw Error(ErrorCode::InvalidArgument, "value() of the point at infinity");
  return *value_;
}

double ExtendedValue::modulus() const noexcept {
  return value_ ? std::abs(*value_) : std::numeric_limits<double>::infinity();
}

RationalMap::RationalMap(Poly num, Poly den, std::nullptr_t) : num_(std::move(num)), den_(std::move(den)) {}

RationalMap::RationalMap(Poly num, Poly den, double coprime_tol) {
  if (den.is_zero()) throw Error(ErrorCode::ZeroDenominator, "denominator is identically zero");
  if (num.is_zero()) {
    den = Poly::constant(1.0);
  }
  while (num.degree() >= 1 && den.degree() >= 1) {
    bool divided = false;
    for (const Root& r : find_roots(den)) {
      if (std::abs(num(r.value)) <= coprime_tol * num.magnitude_at(r.value)) {
        num = num.deflate(r.value);
        den = den.deflate(r.value);
        divided = true;
        break;
      }
    }
    if (!divided) break;
  }
  const Complex lead = den.leading();
  if (lead != Complex(1.0)) {
    num = num.scaled(1.0 / lead);
    std::vector<Complex> d(den.coeffs().begin(), den.coeffs().end());
    for (Complex& c : d) c /= lead;
    d.back() = 1.0;
    den = Poly(std::move(d));
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

RationalMap RationalMap::polynomial(Poly p) { return RationalMap(std::move(p), Poly::constant(1.0), nullptr); }

RationalMap RationalMap::constant(Complex c) { return polynomial(Poly::constant(c)); }

RationalMap RationalMap::identity() { return polynomial(Poly({0.0, 1.0})); }

int RationalMap::degree() const noexcept { return std::max({num_.degree(), den_.degree(), 0}); }

ExtendedValue RationalMap::operator()(Complex z) const {
  if (num_.is_zero()) return Complex{};
  const Complex n = num_(z);
  const Complex d = den_(z);
  const bool den_vanishes = std::abs(d) <= 16.0 * kEps * den_.magnitude_at(z);
  const bool num_vanishes = std::abs(n) <= 16.0 * kEps * num_.magnitude_at(z);
  if (den_vanishes && num_vanishes) throw Error(ErrorCode::Indeterminate, "numerator and denominator both vanish");
  if (den_vanishes) return ExtendedValue::infinity();
  return n / d;
}

Complex RationalMap::finite_at(Complex z) const {
  const ExtendedValue v = (*this)(z);
  if (v.is_infinite()) throw Error(ErrorCode::ZeroDenominator, "evaluation at a pole");
  return v.value();
}

RationalMap RationalMap::derivative() const {
  if (is_polynomial()) return polynomial(num_.derivative().scaled(1.0 / den_[0]));
  return RationalMap(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalMap RationalMap::tilde() const {
  const int width = degree();
  return RationalMap(num_.conj_reversed(width), den_.conj_reversed(width));
}

ExtendedValue RationalMap::at_infinity() const {
  if (num_.degree() < den_.degree()) return Complex{};
  if (num_.degree() > den_.degree()) return ExtendedValue::infinity();
  return num_.leading() / den_.leading();
}

RationalMap RationalMap::lfm_inverse() const {
  if (degree() > 1) throw Error(ErrorCode::NotLFM, "map has degree " + std::to_string(degree()));
  const Complex a = num_[1], b = num_[0], c = den_[1], d = den_[0];
  const Complex det = a * d - b * c;
  if (std::abs(det) <= 16.0 * kEps * (std::abs(a * d) + std::abs(b * c)))
    throw Error(ErrorCode::Degenerate, "ad - bc = 0");
  return RationalMap(Poly({-b, d}), Poly({a, -c}));
}

std::vector<Root> RationalMap::poles(const RootOptions& options) const {
  if (den_.degree() < 1) return {};
  return find_roots(den_, options);
}

SelfMapReport check_self_map(const RationalMap& r, int n_samples, double tol) {
  if (n_samples < 256) throw Error(ErrorCode::InvalidArgument, "self-map check needs at least 256 samples");
  SelfMapReport report;
  report.min_pole_modulus = std::numeric_limits<double>::infinity();
  for (const Root& p : r.poles()) report.min_pole_modulus = std::min(report.min_pole_modulus, std::abs(p.value));
  if (report.min_pole_modulus <= 1.0 + tol) {
    report.max_boundary_modulus = std::numeric_limits<double>::infinity();
    return report;
  }
  for (int k = 0; k < n_samples; ++k) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / n_samples);
    report.max_boundary_modulus = std::max(report.max_boundary_modulus, std::abs(r.finite_at(z)));
  }
  report.is_self_map = report.max_boundary_modulus <= 1.0 + tol;
  return report;
}

}  // namespace hardy
