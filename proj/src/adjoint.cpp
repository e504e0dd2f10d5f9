#include "hardy/adjoint.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "hardy/error.hpp"

namespace hardy {

namespace {

constexpr int kJitterAttempts = 8;
constexpr std::size_t kOriginSamples = 64;

bool retryable(ErrorCode code) {
  return code == ErrorCode::BranchPointProximity || code == ErrorCode::NonConvergence ||
         code == ErrorCode::Indeterminate || code == ErrorCode::ZeroDenominator;
}

}  // namespace

void AdjointConfig::validate() const {
  if (n_terms == 0) throw Error(ErrorCode::InvalidArgument, "n_terms must be positive");
  if (samples < 2 || !std::has_single_bit(samples))
    throw Error(ErrorCode::InvalidArgument, "sample count must be a power of two");
  if (!(radius > 0.0 && radius < 1.0)) throw Error(ErrorCode::InvalidArgument, "radius must lie in (0, 1)");
  if (!(tol_root > 0.0 && tol_branch > 0.0 && branch_point_radius > 0.0 && cluster_radius > 0.0 && coprime_tol > 0.0))
    throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
}

const char* to_string(MapKind kind) {
  switch (kind) {
    case MapKind::Interior: return "Interior";
    case MapKind::Boundary: return "Boundary";
    case MapKind::Exterior: return "Exterior";
    case MapKind::Infinity: return "Infinity";
    case MapKind::Constant: return "Constant";
  }
  return "Unknown";
}

MapClass classify_map(const RationalMap& phi) {
  const SelfMapReport report = check_self_map(phi);
  if (!report.is_self_map)
    throw Error(ErrorCode::NotSelfMap, "max boundary modulus " + std::to_string(report.max_boundary_modulus) +
                                           ", min pole modulus " + std::to_string(report.min_pole_modulus));
  const ExtendedValue inf = phi.at_infinity();
  if (phi.is_constant()) return {MapKind::Constant, inf};
  if (inf.is_infinite()) return {MapKind::Infinity, inf};
  const double m = inf.modulus();
  if (std::abs(m - 1.0) <= kBoundaryClassTol) return {MapKind::Boundary, inf};
  return {m < 1.0 ? MapKind::Interior : MapKind::Exterior, inf};
}

CompositionAdjoint::CompositionAdjoint(RationalMap phi, AdjointConfig cfg)
    : phi_(std::move(phi)),
      cfg_(cfg),
      class_((cfg_.validate(), classify_map(phi_))),
      reflected_(phi_.tilde()),
      reflected_num_(reflected_.num()),
      reflected_den_(reflected_.den()) {}

BranchSet CompositionAdjoint::branches(Complex z) const {
  if (z == Complex{}) throw Error(ErrorCode::OriginNotSupported, "branch equation degenerates at z = 0");
  BranchSet set;
  set.point = z;
  if (class_.kind == MapKind::Constant) return set;

  const int expected = reflected_.degree();
  const Poly p = reflected_num_.scaled(z) - reflected_den_;
  if (p.degree() < 1) {
    set.degree_deficit = expected;
    set.warnings.push_back("branch equation has no roots at this point");
    return set;
  }
  set.degree_deficit = expected - p.degree();
  if (set.degree_deficit > 0) set.warnings.push_back("degree drop: a branch escaped to infinity");

  const std::vector<Root> roots = find_roots(p, cfg_.roots());
  double max_mod = 0.0;
  for (const Root& r : roots) max_mod = std::max(max_mod, std::abs(r.value));
  const double scale = 1.0 + max_mod;
  const double separation = std::sqrt(cfg_.branch_point_radius) * scale;

  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (roots[i].multiplicity > 1)
      throw Error(ErrorCode::BranchPointProximity, "branch values collide (multiplicity " +
                                                       std::to_string(roots[i].multiplicity) + ")");
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i].value - roots[j].value) < separation)
        throw Error(ErrorCode::BranchPointProximity, "branch values nearly collide");
  }

  const Poly slope = p.derivative();
  for (const Root& r : roots) {
    const Complex s = r.value;
    if (std::abs(s) <= cfg_.branch_point_radius * scale) {
      set.degree_deficit += r.multiplicity;
      set.warnings.push_back("branch value at 0 excluded");
      continue;
    }
    const Complex q = reflected_den_(s);
    Branch b;
    b.sigma = s;
    b.psi = -q / (s * slope(s));
    b.multiplicity = r.multiplicity;
    b.residual = std::abs(p(s) / q);
    if (!(b.residual <= cfg_.tol_branch * std::abs(z)))
      throw Error(ErrorCode::NonConvergence, "branch residual " + std::to_string(b.residual) + " above tolerance");
    set.branches.push_back(b);
  }
  return set;
}

void CompositionAdjoint::require_analytic_on_disk(const RationalMap& f) const {
  for (const Root& pole : f.poles(cfg_.roots()))
    if (std::abs(pole.value) <= 1.0)
      throw Error(ErrorCode::PoleInDisk, "test function has a pole of modulus " + std::to_string(std::abs(pole.value)));
}

Complex CompositionAdjoint::branch_sum(const RationalMap& f, Complex z) const {
  const BranchSet set = branches(z);
  if (set.degree_deficit > 0)
    throw Error(ErrorCode::BranchPointProximity, "a branch escaped to 0 or infinity at this point");
  Complex acc{};
  for (const Branch& b : set.branches) acc += static_cast<double>(b.multiplicity) * b.psi * f.finite_at(b.sigma);
  return acc;
}

Complex CompositionAdjoint::correction(const RationalMap& f, Complex z) const {
  if (class_.at_infinity.is_infinite()) return {};
  return f.finite_at(0.0) / (1.0 - std::conj(class_.at_infinity.value()) * z);
}

Complex CompositionAdjoint::apply(const RationalMap& f, Complex z) const {
  require_analytic_on_disk(f);
  if (class_.kind == MapKind::Constant) return correction(f, z);
  if (z == Complex{}) return coefficients(f)[0];
  return branch_sum(f, z) + correction(f, z);
}

Complex CompositionAdjoint::guarded_apply(const RationalMap& f, Complex z) const {
  if (class_.kind == MapKind::Constant) return correction(f, z);
  const BranchSet set = branches(z);
  if (set.degree_deficit > 0) throw Error(ErrorCode::BranchPointProximity, "branch excluded at sample point");
  const double cap = 1.0 / std::sqrt(cfg_.branch_point_radius);
  Complex acc{};
  for (const Branch& b : set.branches) {
    if (std::abs(b.psi) > cap) throw Error(ErrorCode::BranchPointProximity, "ill-conditioned branch weight");
    acc += static_cast<double>(b.multiplicity) * b.psi * f.finite_at(b.sigma);
  }
  return acc + correction(f, z);
}

TruncatedSeries CompositionAdjoint::coefficients(const RationalMap& f, double radius) const {
  require_analytic_on_disk(f);
  for (int attempt = 0; attempt < kJitterAttempts; ++attempt) {
    const double step = 0.0025 * ((attempt + 1) / 2);
    const double r = radius * (attempt % 2 == 1 ? 1.0 + step : 1.0 - step);
    if (!(r > 0.0 && r < 1.0)) continue;
    try {
      const BoundarySamples s =
          sample_circle([&](Complex z) { return guarded_apply(f, z); }, cfg_.samples, r);
      return series_from_samples(s, cfg_.n_terms);
    } catch (const Error& e) {
      if (!retryable(e.code())) throw;
    }
  }
  throw Error(ErrorCode::JitterExhausted, "no admissible sampling radius near " + std::to_string(radius));
}

Complex CompositionAdjoint::uncorrected(const RationalMap& f, Complex z) const {
  if (z == Complex{}) throw Error(ErrorCode::OriginNotSupported, "uncorrected formula evaluated at 0");
  if (class_.kind == MapKind::Constant) throw Error(ErrorCode::InvalidArgument, "uncorrected formula needs a nonconstant map");
  require_analytic_on_disk(f);

  // h(z) = sum z^2 sigma'/sigma f(sigma) = z * branch_sum; its value at 0 is
  // the mean over a circle inside the zero-branch radius 1/|phi(inf)|.
  auto h = [&](Complex w) { return w * branch_sum(f, w); };
  double limit = 1.0;
  if (class_.at_infinity.is_finite() && class_.at_infinity.modulus() > 0.0)
    limit = std::min(limit, 1.0 / class_.at_infinity.modulus());
  const double rho = 0.25 * limit;

  Complex h0{};
  bool have_h0 = false;
  for (double phase : {0.0, 0.5}) {
    try {
      const BoundarySamples s = sample_circle(h, kOriginSamples, rho, phase);
      h0 = series_from_samples(s, 1)[0];
      have_h0 = true;
      break;
    } catch (const Error& e) {
      if (!retryable(e.code())) throw;
    }
  }
  if (!have_h0) throw Error(ErrorCode::JitterExhausted, "could not sample the weighted sum near 0");
  return (h(z) - h0) / z;
}

BoundarySamples CompositionAdjoint::sample_branch_sum(const RationalMap& g, std::size_t count, double radius) const {
  for (double phase : {0.0, 0.5, 0.25, 0.75}) {
    try {
      return sample_circle([&](Complex z) { return branch_sum(g, z); }, count, radius, phase);
    } catch (const Error& e) {
      if (!retryable(e.code())) throw;
    }
  }
  throw Error(ErrorCode::JitterExhausted, "every grid shift hit an excluded branch");
}

BranchSet branch_solve(const RationalMap& phi, Complex z, const AdjointConfig& cfg) {
  return CompositionAdjoint(phi, cfg).branches(z);
}

Complex adjoint_eval(const RationalMap& phi, const RationalMap& f, Complex z, const AdjointConfig& cfg) {
  return CompositionAdjoint(phi, cfg).apply(f, z);
}

TruncatedSeries adjoint_coeffs(const RationalMap& phi, const RationalMap& f, const AdjointConfig& cfg) {
  return CompositionAdjoint(phi, cfg).coefficients(f);
}

Complex uncorrected_cg_eval(const RationalMap& phi, const RationalMap& f, Complex z, const AdjointConfig& cfg) {
  return CompositionAdjoint(phi, cfg).uncorrected(f, z);
}

Complex lfm_adjoint_eval(const RationalMap& phi, const RationalMap& f, Complex z) {
  if (phi.degree() > 1) throw Error(ErrorCode::NotLFM, "map has degree " + std::to_string(phi.degree()));
  if (phi.is_constant()) throw Error(ErrorCode::Degenerate, "closed form needs a nonconstant map");
  const Complex a = std::conj(phi.num()[1]), b = std::conj(phi.num()[0]);
  const Complex c = std::conj(phi.den()[1]), d = std::conj(phi.den()[0]);
  const Complex top = a * z - c;
  const Complex bottom = -b * z + d;
  const Complex sigma = top / bottom;
  Complex value = (a * d - b * c) * z / (top * bottom) * f.finite_at(sigma);
  if (c != Complex{}) value += c * f.finite_at(0.0) / (c - a * z);
  return value;
}

Complex monomial_adjoint_eval(int m, const RationalMap& f, Complex z) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "exponent must be positive");
  const Complex root = z == Complex{} ? Complex{} : std::pow(z, 1.0 / m);
  Complex acc{};
  for (int j = 0; j < m; ++j) acc += f.finite_at(root * std::polar(1.0, 2.0 * std::numbers::pi * j / m));
  return acc / static_cast<double>(m);
}

Complex quadratic_adjoint_eval(Complex a, Complex b, const RationalMap& f, Complex z) {
  if (a == Complex{}) throw Error(ErrorCode::InvalidArgument, "quadratic coefficient must be nonzero");
  const Complex ab = std::conj(a), bb = std::conj(b);
  const Complex root = std::sqrt(bb * bb * z * z + 4.0 * ab * z);
  const Complex ratio = bb * root / (bb * bb * z + 4.0 * ab);
  Complex acc{};
  for (double sign : {-1.0, 1.0}) acc += 0.5 * (1.0 + sign * ratio) * f.finite_at((bb * z + sign * root) / 2.0);
  return acc;
}

Complex bourdon_adjoint_eval(const RationalMap& f, Complex z) {
  const Complex root = std::sqrt(3.0 - 2.0 * z);
  Complex acc{};
  for (double sign : {-1.0, 1.0}) {
    const Complex weight = sign * 2.0 * z / (root * (3.0 * z - 4.0 + sign * root));
    acc += weight * f.finite_at((3.0 * z - 5.0 + sign * 2.0 * root) / (9.0 * z - 13.0));
  }
  return acc + f.finite_at(0.0) / (1.0 - z);
}

}  // namespace hardy
