#include <doctest.h>

#include <random>

#include "hardy/error.hpp"
#include "hardy/expression.hpp"
#include "hardy/verification.hpp"

using namespace hardy;

namespace {

std::size_t syntax_position(std::string_view text) {
  try {
    parse_map(text);
  } catch (const SyntaxError& e) {
    return e.position();
  }
  FAIL("no syntax error for " << text);
  return 0;
}

}  // namespace

TEST_CASE("parsing maps") {
  const RationalMap a = parse_map("(2*z)/(z+4)");
  CHECK(a == RationalMap(Poly({0.0, 2.0}), Poly({4.0, 1.0})));
  CHECK(a.num() == Poly({0.0, 2.0}));
  CHECK(a.den() == Poly({4.0, 1.0}));

  CHECK(parse_map("z^2").num() == Poly::monomial(2));
  CHECK(parse_map("0.5*z^2 + 0.5*z").num() == Poly({0.0, 0.5, 0.5}));
  CHECK(parse_map("(z^2-6*z+9)/(z^2-10*z+13)").num() == Poly({9.0, -6.0, 1.0}));
  CHECK(parse_map("(1/3+0.2i)*z").num()[1] == Complex(1.0 / 3.0, 0.2));
  CHECK(parse_map("i*z").num() == Poly({0.0, Complex(0.0, 1.0)}));
  CHECK(parse_map("-z").num() == Poly({0.0, -1.0}));
  CHECK(parse_map("  z  *  z ").num() == Poly::monomial(2));
  CHECK(parse_map("(z+1)^2").num() == Poly({1.0, 2.0, 1.0}));
  CHECK(parse_map("z^0").num() == Poly::constant(1.0));
  CHECK(parse_map("1e-3*z").num()[1] == Complex(1e-3));
  // Common factors cancel.
  const RationalMap r = parse_map("(z^2-1)/(z-1)");
  CHECK(r.den().degree() == 0);
  CHECK(std::abs(r.num()[0] - 1.0) < 1e-12);
  CHECK(std::abs(r.num()[1] - 1.0) < 1e-12);
}

TEST_CASE("syntax errors") {
  CHECK(syntax_position("z +") == 3);
  CHECK(syntax_position("2**z") == 2);
  CHECK(syntax_position("(z+1") == 4);
  CHECK(syntax_position("z^-1") == 2);
  CHECK(syntax_position("z^1.5") == 3);
  CHECK(syntax_position("w") == 0);
  CHECK(syntax_position("z)") == 1);
  CHECK(syntax_position("") == 0);
  CHECK_THROWS_WITH_AS(parse_map("z + $"), doctest::Contains("SyntaxError"), SyntaxError);
  CHECK_THROWS_WITH_AS(parse_map("z/(z-z)"), doctest::Contains("ZeroDenominator"), Error);
  CHECK_THROWS_AS(parse_map("1/0"), Error);
}

TEST_CASE("complex constants") {
  CHECK(parse_complex("0.25") == Complex(0.25));
  CHECK(parse_complex("0.1-0.3i") == Complex(0.1, -0.3));
  CHECK(parse_complex("-i") == Complex(0.0, -1.0));
  CHECK(parse_complex("(1+i)/2") == Complex(0.5, 0.5));
  CHECK_THROWS_AS(parse_complex("z"), Error);
  CHECK(format_complex(Complex(0.1, -0.3)) == "0.1-0.3i");
  CHECK(format_complex(Complex(2.0, 0.0)) == "2");
  CHECK(parse_complex(format_complex(Complex(1.0 / 3.0, -1e-17))) == Complex(1.0 / 3.0, -1e-17));
}

TEST_CASE("round trip of catalog maps") {
  for (const TestMap& m : catalog()) {
    CAPTURE(m.name);
    const RationalMap parsed = parse_map(m.expression);
    CHECK(parsed == m.map);
    CHECK(parse_map(format_map(parsed)) == parsed);
  }
}

TEST_CASE("property: format then parse is exact") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Complex> num, den;
    for (int k = 0; k < 3; ++k) num.emplace_back(u(rng), u(rng));
    for (int k = 0; k < 2; ++k) den.emplace_back(u(rng), u(rng));
    const RationalMap map{Poly(num), Poly(den)};
    CHECK(parse_map(format_map(map)) == map);
  }
}
