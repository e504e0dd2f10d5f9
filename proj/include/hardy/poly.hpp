#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace hardy {

using Complex = std::complex<double>;

// Dense polynomial over the complex numbers, coefficient i multiplies z^i.
// Canonical form: no trailing (highest-power) exact zeros; the zero
// polynomial has an empty coefficient list and degree -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Complex> coeffs);
  Poly(std::initializer_list<Complex> coeffs);

  static Poly constant(Complex c);
  static Poly monomial(std::size_t power, Complex c = 1.0);
  static Poly from_roots(std::span<const Complex> roots, Complex leading = 1.0);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  Complex operator[](std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : Complex{}; }
  Complex leading() const noexcept { return coeffs_.empty() ? Complex{} : coeffs_.back(); }

  // Horner evaluation.
  Complex operator()(Complex z) const noexcept;
  // sum |a_i| |z|^i, the natural scale for rounding error in operator().
  double magnitude_at(Complex z) const noexcept;
  double norm1() const noexcept;

  Poly derivative() const;
  Poly scaled(Complex c) const;
  // Quotient of division by (z - root); the remainder is discarded.
  Poly deflate(Complex root) const;
  // z^width * conj(p(1/conj(z))): conjugated coefficients of the list padded
  // to width+1 entries, in reverse order. Requires width >= degree().
  Poly conj_reversed(int width) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b) = default;

 private:
  void trim();
  std::vector<Complex> coeffs_;
};

struct Root {
  Complex value;
  int multiplicity = 1;
};

struct RootOptions {
  // Relative backward-error target for the simultaneous iteration.
  double tol_root = 1e-12;
  // Roots closer than cluster_radius * (1 + max|root|) are merged.
  double cluster_radius = 1e-7;
  int max_iterations = 500;
  std::uint64_t seed = 0x5EED;
};

// All roots of p with multiplicities, via Aberth-Ehrlich iteration from a
// randomly perturbed starting circle followed by Newton polishing. Output
// is sorted by (real, imag) so it does not depend on the starting layout.
// Throws DegreeZero for constants and NonConvergence past the iteration cap.
std::vector<Root> find_roots(const Poly& p, const RootOptions& options = {});

}  // namespace hardy
