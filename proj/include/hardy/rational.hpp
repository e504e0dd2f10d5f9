#pragma once

#include <optional>
#include <vector>

#include "hardy/poly.hpp"

namespace hardy {

inline constexpr double kDefaultCoprimeTol = 1e-9;

// A point of the extended complex plane.
class ExtendedValue {
 public:
  ExtendedValue(Complex v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  static ExtendedValue infinity() { return ExtendedValue(); }

  bool is_infinite() const noexcept { return !value_.has_value(); }
  bool is_finite() const noexcept { return value_.has_value(); }
  // Throws InvalidArgument for the point at infinity.
  Complex value() const;
  double modulus() const noexcept;

  friend bool operator==(const ExtendedValue&, const ExtendedValue&) = default;

 private:
  ExtendedValue() = default;
  std::optional<Complex> value_;
};

// num/den in reduced form with a monic denominator. Common roots of num and
// den (detected by evaluating num at the roots of den, relative tolerance
// coprime_tol) are divided out on construction.
class RationalMap {
 public:
  RationalMap(Poly num, Poly den, double coprime_tol = kDefaultCoprimeTol);

  static RationalMap polynomial(Poly p);
  static RationalMap constant(Complex c);
  static RationalMap identity();

  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }
  // max(deg num, deg den); 0 for constants (including the zero map).
  int degree() const noexcept;
  bool is_constant() const noexcept { return degree() == 0; }
  bool is_polynomial() const noexcept { return den_.degree() == 0; }

  // Infinity at a pole; Indeterminate error if num and den both vanish
  // numerically at z.
  ExtendedValue operator()(Complex z) const;
  // Finite value, throwing ZeroDenominator at a pole.
  Complex finite_at(Complex z) const;

  RationalMap derivative() const;
  // z -> conj(R(1/conj(z))).
  RationalMap tilde() const;
  // Limit of R(z) as |z| -> infinity.
  ExtendedValue at_infinity() const;
  // Inverse of a nondegenerate linear fractional map: (dz - b)/(-cz + a).
  RationalMap lfm_inverse() const;
  std::vector<Root> poles(const RootOptions& options = {}) const;

  friend bool operator==(const RationalMap&, const RationalMap&) = default;

 private:
  RationalMap(Poly num, Poly den, std::nullptr_t);
  Poly num_;
  Poly den_;
};

struct SelfMapReport {
  bool is_self_map = false;
  double max_boundary_modulus = 0.0;
  // +inf when R has no poles.
  double min_pole_modulus = 0.0;
};

// R maps the open disk into itself iff it has no poles in the closed disk and
// |R| <= 1 on the unit circle (maximum principle). n_samples >= 256.
SelfMapReport check_self_map(const RationalMap& r, int n_samples = 1024, double tol = 1e-9);

}  // namespace hardy
