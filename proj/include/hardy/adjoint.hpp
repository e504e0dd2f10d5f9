#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hardy/poly.hpp"
#include "hardy/rational.hpp"
#include "hardy/series.hpp"

namespace hardy {

struct AdjointConfig {
  std::size_t n_terms = 64;
  std::size_t samples = 512;
  double radius = 0.5;
  double tol_root = 1e-12;
  double tol_branch = 1e-9;
  // Branch values within sqrt(branch_point_radius) of each other (relative
  // to 1 + max|s|) signal a nearby branch point.
  double branch_point_radius = 1e-6;
  double cluster_radius = 1e-7;
  double coprime_tol = kDefaultCoprimeTol;
  std::uint64_t seed = 0x5EED;

  void validate() const;
  SeriesConfig series() const { return {n_terms, samples, radius}; }
  RootOptions roots() const { return {tol_root, cluster_radius, 500, seed}; }
};

enum class MapKind { Interior, Boundary, Exterior, Infinity, Constant };

const char* to_string(MapKind kind);

// Classification of a self-map of the disk by phi(infinity).
struct MapClass {
  MapKind kind;
  ExtendedValue at_infinity;
};

inline constexpr double kBoundaryClassTol = 1e-12;

// Throws NotSelfMap when phi does not take the disk into itself.
MapClass classify_map(const RationalMap& phi);

struct Branch {
  Complex sigma;
  Complex psi;
  int multiplicity = 1;
  // |reflected_phi(sigma) * z - 1|
  double residual = 0.0;
};

// Branch values sigma_j(z) (solutions s of conj(phi(1/conj(s))) = 1/z) and
// weights psi_j = z sigma_j'(z) / sigma_j(z).
struct BranchSet {
  Complex point;
  std::vector<Branch> branches;
  // Branches lost to a degree drop (escaped to infinity) or excluded at 0.
  int degree_deficit = 0;
  std::vector<std::string> warnings;
};

// The adjoint of C_phi for a rational self-map phi of the disk:
//
//   (C*_phi f)(z) = sum_j psi_j(z) f(sigma_j(z)) + f(0) / (1 - conj(phi(inf)) z)
//
// with the correction term dropped when phi(inf) = inf. Branch values are the
// roots of P_z(s) = z p(s) - q(s), where p/q is the reflected map
// conj(phi(1/conj(s))), and psi_j = -q(s_j) / (s_j P_z'(s_j)), which is
// -1 / (z s_j reflected'(s_j)) after eliminating 1/z.
class CompositionAdjoint {
 public:
  explicit CompositionAdjoint(RationalMap phi, AdjointConfig cfg = {});

  const RationalMap& symbol() const noexcept { return phi_; }
  const RationalMap& reflected() const noexcept { return reflected_; }
  const MapClass& map_class() const noexcept { return class_; }
  const AdjointConfig& config() const noexcept { return cfg_; }

  BranchSet branches(Complex z) const;

  // sum_j psi_j(z) f(sigma_j(z)) without the correction term. Throws
  // BranchPointProximity if a branch was excluded at z.
  Complex branch_sum(const RationalMap& f, Complex z) const;
  // f(0) / (1 - conj(phi(inf)) z), or 0 when phi(inf) = inf.
  Complex correction(const RationalMap& f, Complex z) const;

  // (C*_phi f)(z). z = 0 is evaluated through coefficient extraction.
  Complex apply(const RationalMap& f, Complex z) const;

  // First n_terms Taylor coefficients of C*_phi f, sampled on |z| = radius.
  // A failing or ill-conditioned sample moves the radius by up to 1%
  // (8 attempts in all) before JitterExhausted is thrown.
  TruncatedSeries coefficients(const RationalMap& f) const { return coefficients(f, cfg_.radius); }
  TruncatedSeries coefficients(const RationalMap& f, double radius) const;

  // Backward shift of the weighted composition sum with weight
  // z^2 sigma'/sigma and no projection: the operator B W_{psi,sigma}.
  Complex uncorrected(const RationalMap& f, Complex z) const;

  // Raw branch sum for g sampled on |z| = radius; half-step grid shifts are
  // tried when a sample point sits on an excluded branch.
  BoundarySamples sample_branch_sum(const RationalMap& g, std::size_t count, double radius = 1.0) const;

 private:
  // Branch sum, refusing samples whose weights exceed the conditioning cap.
  Complex guarded_apply(const RationalMap& f, Complex z) const;
  void require_analytic_on_disk(const RationalMap& f) const;

  RationalMap phi_;
  AdjointConfig cfg_;
  MapClass class_;
  RationalMap reflected_;
  Poly reflected_num_;
  Poly reflected_den_;
};

// Free-function forms of the engine operations.
BranchSet branch_solve(const RationalMap& phi, Complex z, const AdjointConfig& cfg = {});
Complex adjoint_eval(const RationalMap& phi, const RationalMap& f, Complex z, const AdjointConfig& cfg = {});
TruncatedSeries adjoint_coeffs(const RationalMap& phi, const RationalMap& f, const AdjointConfig& cfg = {});
Complex uncorrected_cg_eval(const RationalMap& phi, const RationalMap& f, Complex z, const AdjointConfig& cfg = {});

// Closed forms.

// Linear fractional phi = (az+b)/(cz+d):
//   ((conj(ad) - conj(bc)) z / ((conj(a)z - conj(c))(-conj(b)z + conj(d)))) f(sigma(z))
//     + conj(c) f(0) / (conj(c) - conj(a) z),
// sigma(z) = (conj(a)z - conj(c)) / (-conj(b)z + conj(d)).
Complex lfm_adjoint_eval(const RationalMap& phi, const RationalMap& f, Complex z);
// phi = z^m: mean of f over the m-th roots of z.
Complex monomial_adjoint_eval(int m, const RationalMap& f, Complex z);
// phi = a z^2 + b z, a != 0: two-branch weighted composition, no correction.
Complex quadratic_adjoint_eval(Complex a, Complex b, const RationalMap& f, Complex z);
// phi = (z^2 - 6z + 9) / (z^2 - 10z + 13).
Complex bourdon_adjoint_eval(const RationalMap& f, Complex z);

}  // namespace hardy
