#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hardy/adjoint.hpp"
#include "hardy/error.hpp"
#include "hardy/expression.hpp"

using namespace hardy;

namespace {

RationalMap exterior() { return RationalMap(Poly({0.0, 2.0}), Poly({4.0, 1.0})); }
RationalMap interior() { return RationalMap(Poly({0.0, 1.0}), Poly({4.0, 2.0})); }
RationalMap boundary() { return RationalMap(Poly({0.0, 1.0}), Poly({4.0, 1.0})); }
RationalMap bourdon() { return RationalMap(Poly({9.0, -6.0, 1.0}), Poly({13.0, -10.0, 1.0})); }
RationalMap quadratic(Complex a, Complex b) { return RationalMap::polynomial(Poly({0.0, b, a})); }

Complex in_disk(std::mt19937_64& rng, double rmax) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(rmax * std::sqrt(u(rng)), 6.283185307179586 * u(rng));
}

RationalMap random_poly(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> c;
  for (int k = 0; k <= degree; ++k) c.emplace_back(u(rng), u(rng));
  return RationalMap::polynomial(Poly(c));
}

RationalMap kernel(Complex w) { return kernel_function(KernelPoint(w)); }

const std::vector<RationalMap>& all_maps() {
  static const std::vector<RationalMap> maps = {exterior(), interior(), boundary(),
                                                RationalMap::polynomial(Poly::monomial(2)),
                                                RationalMap::polynomial(Poly::monomial(3)),
                                                quadratic(0.5, 0.5), quadratic(0.25, Complex(1.0 / 3.0, 0.2)), bourdon()};
  return maps;
}

}  // namespace

TEST_CASE("classification") {
  CHECK(classify_map(exterior()).kind == MapKind::Exterior);
  CHECK(classify_map(exterior()).at_infinity.value() == Complex(2.0));
  CHECK(classify_map(interior()).kind == MapKind::Interior);
  CHECK(std::abs(classify_map(interior()).at_infinity.value() - 0.5) < 1e-15);
  CHECK(classify_map(boundary()).kind == MapKind::Boundary);
  CHECK(classify_map(RationalMap::polynomial(Poly::monomial(2))).kind == MapKind::Infinity);
  CHECK(classify_map(RationalMap::polynomial(Poly::monomial(2))).at_infinity.is_infinite());
  CHECK(classify_map(bourdon()).kind == MapKind::Boundary);
  CHECK(classify_map(RationalMap::constant(0.3)).kind == MapKind::Constant);
  CHECK(classify_map(RationalMap::identity()).kind == MapKind::Infinity);
  CHECK_THROWS_WITH_AS(classify_map(RationalMap::polynomial(Poly({0.0, 2.0}))), doctest::Contains("NotSelfMap"), Error);
  CHECK_THROWS_AS(classify_map(RationalMap::constant(1.5)), Error);
  CHECK_THROWS_AS(CompositionAdjoint(RationalMap(Poly({1.0}), Poly({-0.5, 1.0}))), Error);
}

TEST_CASE("branches of 2z/(z+4)") {
  const Complex z(0.3, 0.1);
  const BranchSet set = branch_solve(exterior(), z);
  REQUIRE(set.branches.size() == 1);
  CHECK(set.degree_deficit == 0);
  CHECK(std::abs(set.branches[0].sigma - (2.0 * z - 1.0) / 4.0) < 1e-14);
  CHECK(std::abs(set.branches[0].psi - 2.0 * z / (2.0 * z - 1.0)) < 1e-14);
  CHECK(set.branches[0].residual < 1e-14);
}

TEST_CASE("branches of monomials") {
  for (int m = 2; m <= 5; ++m) {
    const Complex z(-0.2, 0.45);
    const BranchSet set = branch_solve(RationalMap::polynomial(Poly::monomial(m)), z);
    REQUIRE(set.branches.size() == static_cast<std::size_t>(m));
    for (const Branch& b : set.branches) {
      CHECK(std::abs(b.psi - 1.0 / m) < 1e-13);
      CHECK(std::abs(std::pow(b.sigma, m) - z) < 1e-13);
    }
    // Distinct m-th roots.
    for (std::size_t i = 0; i < set.branches.size(); ++i)
      for (std::size_t j = i + 1; j < set.branches.size(); ++j)
        CHECK(std::abs(set.branches[i].sigma - set.branches[j].sigma) > 0.1);
  }
}

TEST_CASE("branches of a quadratic") {
  const Complex a(0.25), b(1.0 / 3.0, 0.2);
  const Complex z(0.4, -0.3);
  // s^2 - conj(b) z s - conj(a) z = 0.
  const Complex disc = std::sqrt(std::conj(b) * std::conj(b) * z * z + 4.0 * std::conj(a) * z);
  std::vector<Complex> expected = {(std::conj(b) * z + disc) / 2.0, (std::conj(b) * z - disc) / 2.0};
  const BranchSet set = branch_solve(quadratic(a, b), z);
  REQUIRE(set.branches.size() == 2);
  for (const Complex& e : expected) {
    const auto it = std::find_if(set.branches.begin(), set.branches.end(),
                                 [&](const Branch& br) { return std::abs(br.sigma - e) < 1e-13; });
    REQUIRE(it != set.branches.end());
    // psi = z sigma' / sigma from implicit differentiation.
    const Complex dsigma = (std::conj(b) * e + std::conj(a)) / (2.0 * e - std::conj(b) * z);
    CHECK(std::abs(it->psi - z * dsigma / e) < 1e-12);
  }
}

TEST_CASE("branch errors") {
  CHECK_THROWS_WITH_AS(branch_solve(exterior(), 0.0), doctest::Contains("OriginNotSupported"), Error);
  const BranchSet constant = branch_solve(RationalMap::constant(0.2), 0.3);
  CHECK(constant.branches.empty());
  CHECK(constant.degree_deficit == 0);
  // a z^2 + b z has a double branch at z = -4a/b^2.
  const Complex zb = -4.0 * 0.1 / (0.9 * 0.9);
  CHECK_THROWS_WITH_AS(branch_solve(quadratic(0.1, 0.9), zb), doctest::Contains("BranchPointProximity"), Error);
}

TEST_CASE("zero branch of exterior maps") {
  // For 2z/(z+4) the branch sits at 0 when z = 1/2.
  const BranchSet set = branch_solve(exterior(), 0.5);
  CHECK(set.branches.empty());
  CHECK(set.degree_deficit == 1);
  CHECK_FALSE(set.warnings.empty());
  const CompositionAdjoint adj(exterior());
  CHECK_THROWS_AS(adj.branch_sum(RationalMap::constant(1.0), 0.5), Error);
}

TEST_CASE("property: branch count plus deficit is the degree") {
  std::mt19937_64 rng(31);
  for (const RationalMap& phi : all_maps()) {
    for (int k = 0; k < 25; ++k) {
      const Complex z = in_disk(rng, 0.95);
      const BranchSet set = branch_solve(phi, z);
      int total = set.degree_deficit;
      for (const Branch& b : set.branches) total += b.multiplicity;
      CHECK(total == phi.degree());
    }
  }
}

TEST_CASE("property: branches solve the branch equation") {
  std::mt19937_64 rng(37);
  for (const RationalMap& phi : all_maps()) {
    const RationalMap reflected = phi.tilde();
    for (int k = 0; k < 25; ++k) {
      const Complex z = in_disk(rng, 0.95);
      for (const Branch& b : branch_solve(phi, z).branches) {
        CHECK(b.residual <= 1e-9 * std::abs(z));
        CHECK(std::abs(reflected.finite_at(b.sigma) * z - 1.0) <= 1e-9);
      }
    }
  }
}

TEST_CASE("property: weights match implicit differentiation") {
  std::mt19937_64 rng(41);
  for (const RationalMap& phi : all_maps()) {
    const RationalMap reflected = phi.tilde();
    const RationalMap dreflected = reflected.derivative();
    for (int k = 0; k < 50; ++k) {
      const Complex z = in_disk(rng, 0.95);
      for (const Branch& b : branch_solve(phi, z).branches) {
        const Complex expected = -1.0 / (z * b.sigma * dreflected.finite_at(b.sigma));
        CHECK(std::abs(b.psi - expected) <= 1e-9 * (1.0 + std::abs(expected)));
      }
    }
  }
}

TEST_CASE("property: branch sets do not depend on the seed") {
  std::mt19937_64 rng(43);
  AdjointConfig other;
  other.seed = 12345;
  for (const RationalMap& phi : all_maps()) {
    const Complex z = in_disk(rng, 0.9);
    const BranchSet a = branch_solve(phi, z);
    const BranchSet b = branch_solve(phi, z, other);
    REQUIRE(a.branches.size() == b.branches.size());
    for (const Branch& x : a.branches) {
      const auto it = std::find_if(b.branches.begin(), b.branches.end(),
                                   [&](const Branch& y) { return std::abs(x.sigma - y.sigma) < 1e-12; });
      REQUIRE(it != b.branches.end());
      CHECK(std::abs(x.psi - it->psi) < 1e-10);
    }
  }
}

TEST_CASE("adjoint evaluation examples") {
  const Complex z(0.3, -0.2);
  // C*_phi 1 = K_{phi(0)}; phi(0) = 0 fixes constants.
  for (const RationalMap& phi : all_maps()) {
    const Complex p0 = phi.finite_at(0.0);
    CHECK(std::abs(adjoint_eval(phi, RationalMap::constant(1.0), z) - 1.0 / (1.0 - std::conj(p0) * z)) < 1e-10);
  }
  CHECK(std::abs(adjoint_eval(RationalMap::identity(), RationalMap::polynomial(Poly({1.0, 2.0, 3.0})), z) -
                 (1.0 + 2.0 * z + 3.0 * z * z)) < 1e-13);
  // z^2 sends z^2 to z.
  CHECK(std::abs(adjoint_eval(RationalMap::polynomial(Poly::monomial(2)), RationalMap::polynomial(Poly::monomial(2)), z) - z) <
        1e-13);
  CHECK(std::abs(adjoint_eval(RationalMap::polynomial(Poly::monomial(2)), RationalMap::identity(), z)) < 1e-13);

  CHECK_THROWS_WITH_AS(adjoint_eval(exterior(), RationalMap(Poly({1.0}), Poly({-0.5, 1.0})), z),
                       doctest::Contains("PoleInDisk"), Error);
  // z = 0 goes through coefficients.
  const RationalMap f = RationalMap::polynomial(Poly({0.5, 1.0, -2.0}));
  CHECK(std::abs(adjoint_eval(bourdon(), f, 0.0) - adjoint_eval(bourdon(), f, 1e-3)) < 1e-2);
  CHECK(std::abs(adjoint_eval(exterior(), f, 0.0) - inner_product(TruncatedSeries::from_poly(f.num(), 64),
                                                                  kernel_at(KernelPoint(exterior().finite_at(0.0)), 64))) <
        1e-10);
}

TEST_CASE("property: kernel functions go to kernel functions") {
  std::mt19937_64 rng(47);
  for (const RationalMap& phi : all_maps()) {
    const CompositionAdjoint adj(phi);
    for (int k = 0; k < 15; ++k) {
      const Complex w = in_disk(rng, 0.9);
      const Complex z = in_disk(rng, 0.9);
      const Complex expected = 1.0 / (1.0 - std::conj(phi.finite_at(w)) * z);
      try {
        CHECK(std::abs(adj.apply(kernel(w), z) - expected) <= 1e-8 * std::abs(expected));
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BranchPointProximity);
      }
    }
  }
}

TEST_CASE("property: adjoint identity on random polynomials") {
  std::mt19937_64 rng(53);
  AdjointConfig cfg;
  for (const RationalMap& phi : all_maps()) {
    const CompositionAdjoint adj(phi, cfg);
    const OperatorMatrix m = comp_op_matrix(phi, cfg.series());
    for (int k = 0; k < 5; ++k) {
      const RationalMap f = random_poly(rng, 8);
      const RationalMap g = random_poly(rng, 8);
      const TruncatedSeries fs = TruncatedSeries::from_poly(f.num(), cfg.n_terms);
      const TruncatedSeries gs = TruncatedSeries::from_poly(g.num(), cfg.n_terms);
      const Complex lhs = inner_product(m.apply(fs), gs);
      const Complex rhs = inner_product(fs, adj.coefficients(g));
      CHECK(std::abs(lhs - rhs) <= 1e-8 * (1.0 + fs.norm() * gs.norm()));
    }
  }
}

TEST_CASE("adjoint coefficients") {
  // z^m relocates coefficients: (C* g)_n = g_{mn}.
  std::mt19937_64 rng(59);
  const RationalMap g = random_poly(rng, 12);
  for (int m : {2, 3}) {
    const TruncatedSeries c = adjoint_coeffs(RationalMap::polynomial(Poly::monomial(m)), g);
    for (std::size_t n = 0; n < 20; ++n) {
      const std::size_t src = n * static_cast<std::size_t>(m);
      const Complex expected = src <= 12 ? g.num()[src] : Complex{};
      CHECK(std::abs(c[n] - expected) < 1e-10);
    }
  }
  const TruncatedSeries cube = adjoint_coeffs(RationalMap::identity(), RationalMap::polynomial(Poly::monomial(3)));
  for (std::size_t n = 0; n < 20; ++n) CHECK(std::abs(cube[n] - (n == 3 ? 1.0 : 0.0)) < 1e-10);
  const TruncatedSeries one = adjoint_coeffs(quadratic(0.5, 0.5), RationalMap::constant(1.0));
  for (std::size_t n = 0; n < 20; ++n) CHECK(std::abs(one[n] - (n == 0 ? 1.0 : 0.0)) < 1e-10);
  // Jitter steps off the zero branch at r = 1/2.
  CHECK_NOTHROW(adjoint_coeffs(exterior(), RationalMap::constant(1.0)));
  AdjointConfig bad;
  bad.radius = 1.5;
  CHECK_THROWS_AS(adjoint_coeffs(exterior(), RationalMap::constant(1.0), bad), Error);
}

TEST_CASE("closed forms agree with the engine") {
  std::mt19937_64 rng(61);
  for (int k = 0; k < 20; ++k) {
    const Complex z = in_disk(rng, 0.9);
    const RationalMap f = random_poly(rng, 5);
    for (const RationalMap& phi : {exterior(), interior(), boundary()})
      CHECK(std::abs(lfm_adjoint_eval(phi, f, z) - adjoint_eval(phi, f, z)) < 1e-10);
    for (int m = 2; m <= 4; ++m)
      CHECK(std::abs(monomial_adjoint_eval(m, f, z) - adjoint_eval(RationalMap::polynomial(Poly::monomial(m)), f, z)) <
            1e-12);
    CHECK(std::abs(quadratic_adjoint_eval(0.5, 0.5, f, z) - adjoint_eval(quadratic(0.5, 0.5), f, z)) < 1e-9);
    CHECK(std::abs(bourdon_adjoint_eval(f, z) - adjoint_eval(bourdon(), f, z)) < 1e-6);
  }
  CHECK_THROWS_WITH_AS(lfm_adjoint_eval(RationalMap::polynomial(Poly::monomial(2)), RationalMap::constant(1.0), 0.2),
                       doctest::Contains("NotLFM"), Error);
  CHECK_THROWS_AS(lfm_adjoint_eval(RationalMap::constant(0.2), RationalMap::constant(1.0), 0.2), Error);
}

TEST_CASE("uncorrected formula") {
  const RationalMap one = RationalMap::constant(1.0);
  CHECK(std::abs(uncorrected_cg_eval(exterior(), one, 0.25) - (-1.0)) < 1e-10);
  CHECK(std::abs(uncorrected_cg_eval(interior(), one, 0.25) - (-1.0 / 7.0)) < 1e-10);
  CHECK(std::abs(adjoint_eval(exterior(), one, 0.25) - 1.0) < 1e-10);
  CHECK(std::abs(adjoint_eval(interior(), one, 0.25) - 1.0) < 1e-10);
  // Polynomial symbols need no correction.
  std::mt19937_64 rng(67);
  for (int k = 0; k < 10; ++k) {
    const Complex z = in_disk(rng, 0.9);
    const RationalMap f = random_poly(rng, 4);
    CHECK(std::abs(uncorrected_cg_eval(quadratic(0.5, 0.5), f, z) - adjoint_eval(quadratic(0.5, 0.5), f, z)) < 1e-10);
  }
  CHECK_THROWS_AS(uncorrected_cg_eval(exterior(), one, 0.0), Error);
  CHECK_THROWS_AS(uncorrected_cg_eval(RationalMap::constant(0.1), one, 0.2), Error);
}

TEST_CASE("constant symbols") {
  const Complex c(0.3, 0.4);
  const RationalMap phi = RationalMap::constant(c);
  const RationalMap f = RationalMap::polynomial(Poly({2.0, 1.0, 1.0}));
  const Complex z(0.1, -0.6);
  CHECK(std::abs(adjoint_eval(phi, f, z) - 2.0 / (1.0 - std::conj(c) * z)) < 1e-14);
  const TruncatedSeries s = adjoint_coeffs(phi, f);
  for (std::size_t n = 0; n < 10; ++n) CHECK(std::abs(s[n] - 2.0 * std::pow(std::conj(c), n)) < 1e-10);
}

TEST_CASE("configuration validation") {
  AdjointConfig cfg;
  cfg.samples = 100;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.n_terms = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.tol_root = -1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  CHECK_NOTHROW(AdjointConfig{}.validate());
}
