#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "hardy/poly.hpp"
#include "hardy/rational.hpp"

namespace hardy {

// First N Taylor coefficients of an element of H^2.
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  explicit TruncatedSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {}

  static TruncatedSeries zero(std::size_t n) { return TruncatedSeries(std::vector<Complex>(n)); }
  static TruncatedSeries monomial(std::size_t power, std::size_t n, Complex c = 1.0);
  // Coefficients of p beyond n are dropped.
  static TruncatedSeries from_poly(const Poly& p, std::size_t n);

  std::size_t size() const noexcept { return coeffs_.size(); }
  Complex operator[](std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : Complex{}; }
  Complex& operator[](std::size_t i) { return coeffs_[i]; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }

  double norm() const noexcept;
  // Partial sum at z.
  Complex operator()(Complex z) const noexcept;
  Poly to_poly() const { return Poly(coeffs_); }

 private:
  std::vector<Complex> coeffs_;
};

// sum a_n conj(b_n); the shorter series is zero-padded.
Complex inner_product(const TruncatedSeries& f, const TruncatedSeries& g);

// A point strictly inside the unit disk.
class KernelPoint {
 public:
  explicit KernelPoint(Complex w);
  Complex w() const noexcept { return w_; }

 private:
  Complex w_;
};

// Coefficients conj(w)^n of K_w(z) = 1/(1 - conj(w) z).
TruncatedSeries kernel_at(KernelPoint w, std::size_t n);
// K_w as a rational function.
RationalMap kernel_function(KernelPoint w);

// Values f(r * exp(2 pi i (k + phase) / M)), k = 0..M-1, M a power of two.
// phase is a fraction of one grid step (0 or 0.5 in practice).
struct BoundarySamples {
  std::vector<Complex> values;
  double radius = 1.0;
  double phase = 0.0;

  std::size_t size() const noexcept { return values.size(); }
  Complex point(std::size_t k) const;
};

BoundarySamples sample_circle(const std::function<Complex(Complex)>& f, std::size_t count, double radius,
                              double phase = 0.0);

// Fourier coefficient of frequency `freq` (|freq| < M/2) of the sampled
// function on its circle, i.e. the Laurent coefficient scaled by radius^freq.
// All frequencies are produced by one FFT.
std::vector<Complex> fourier_coefficients(const BoundarySamples& s);

// Discrete Cauchy-integral extraction: coeffs[n] = FFT_n / (M r^n) for
// n < min(N, M/2). Throws RadiusTooSmall if r^n underflows.
TruncatedSeries series_from_samples(const BoundarySamples& s, std::size_t n);

// Orthogonal projection L^2(circle) -> H^2 on unit-circle samples: keeps the
// nonnegative frequencies 0..n-1 (n <= M/2).
TruncatedSeries riesz_project(const BoundarySamples& s, std::size_t n);

// c_{-1}, ..., c_{-n_max} of unit-circle samples.
std::vector<Complex> negative_fourier_coeffs(const BoundarySamples& s, std::size_t n_max);

struct SeriesConfig {
  std::size_t n_terms = 64;
  std::size_t samples = 512;
  double radius = 0.5;

  void validate() const;
};

// First N coefficients of f o phi, by sampling on |z| = radius. A sample
// within 1e-6 of a pole of phi, or mapped within 1e-6 of a pole of f, shifts
// the grid by half a step; a second collision throws PoleInDisk.
TruncatedSeries compose_series(const RationalMap& f, const RationalMap& phi, const SeriesConfig& cfg = {});
TruncatedSeries compose_series(const TruncatedSeries& f, const RationalMap& phi, const SeriesConfig& cfg = {});

// Matrix of C_phi on {z^n}: column j holds the first N coefficients of phi^j.
class OperatorMatrix {
 public:
  explicit OperatorMatrix(std::size_t n) : n_(n), entries_(n * n) {}

  std::size_t size() const noexcept { return n_; }
  Complex operator()(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }
  Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * n_ + col]; }

  TruncatedSeries apply(const TruncatedSeries& f) const;
  // Conjugate transpose applied to g.
  TruncatedSeries apply_adjoint(const TruncatedSeries& g) const;

 private:
  std::size_t n_;
  std::vector<Complex> entries_;
};

OperatorMatrix comp_op_matrix(const RationalMap& phi, const SeriesConfig& cfg = {});

// Exact adjoint of the truncated composition operator applied to g.
TruncatedSeries oracle_adjoint_apply(const RationalMap& phi, const TruncatedSeries& g, const SeriesConfig& cfg = {});

}  // namespace hardy
