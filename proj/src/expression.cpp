#include "hardy/expression.hpp"

#include <cctype>
#include <charconv>
#include <limits>

#include "hardy/error.hpp"

namespace hardy {

namespace {

constexpr int kMaxExponent = 64;

// Unreduced quotient; reduction happens once, after parsing.
struct Fraction {
  Poly num;
  Poly den;
};

Fraction operator+(const Fraction& a, const Fraction& b) {
  if (a.den == b.den) return {a.num + b.num, a.den};
  return {a.num * b.den + b.num * a.den, a.den * b.den};
}

Fraction operator-(const Fraction& a) { return {-a.num, a.den}; }

Fraction operator*(const Fraction& a, const Fraction& b) { return {a.num * b.num, a.den * b.den}; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Fraction parse_all() {
    Fraction f = expr();
    skip_space();
    if (pos_ != text_.size()) throw SyntaxError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    return f;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Fraction expr() {
    Fraction acc = term();
    for (;;) {
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc + -term();
      else return acc;
    }
  }

  Fraction term() {
    Fraction acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        Fraction divisor = unary();
        if (divisor.num.is_zero()) throw Error(ErrorCode::ZeroDenominator, "division by zero at position " + std::to_string(at));
        acc = acc * Fraction{divisor.den, divisor.num};
      } else {
        return acc;
      }
    }
  }

  Fraction unary() {
    if (accept('+')) return unary();
    if (accept('-')) return -unary();
    return power();
  }

  Fraction power() {
    Fraction base = primary();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw SyntaxError(start, "expected a nonnegative integer exponent");
    int exponent = 0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, exponent);
    if (res.ec != std::errc{} || exponent > kMaxExponent) throw SyntaxError(start, "exponent out of range");
    Fraction out{Poly::constant(1.0), Poly::constant(1.0)};
    for (int k = 0; k < exponent; ++k) out = out * base;
    return out;
  }

  Fraction primary() {
    skip_space();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Fraction inner = expr();
      if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
      return inner;
    }
    if (c == 'z') {
      ++pos_;
      return {Poly({0.0, 1.0}), Poly::constant(1.0)};
    }
    if (c == 'i') {
      ++pos_;
      return constant(Complex(0.0, 1.0));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const double value = number();
      if (pos_ < text_.size() && text_[pos_] == 'i') {
        ++pos_;
        return constant(Complex(0.0, value));
      }
      return constant(Complex(value, 0.0));
    }
    throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
  }

  static Fraction constant(Complex c) { return {Poly::constant(c), Poly::constant(1.0)}; }

  double number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t from = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ - from;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw SyntaxError(start, "malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) throw SyntaxError(pos_, "malformed exponent");
    }
    double value = 0.0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (res.ec != std::errc{} || res.ptr != text_.data() + pos_) throw SyntaxError(start, "malformed number");
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_poly(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
    const Complex c = p[k];
    if (c == Complex{}) continue;
    if (!out.empty()) out += " + ";
    out += "(" + format_complex(c) + ")";
    if (k == 1) out += "*z";
    else if (k > 1) out += "*z^" + std::to_string(k);
  }
  return out;
}

}  // namespace

RationalMap parse_map(std::string_view text, double coprime_tol) {
  Fraction f = Parser(text).parse_all();
  if (f.den.is_zero()) throw Error(ErrorCode::ZeroDenominator, "denominator is identically zero");
  return RationalMap(std::move(f.num), std::move(f.den), coprime_tol);
}

Complex parse_complex(std::string_view text) {
  const RationalMap r = parse_map(text);
  if (!r.is_constant() || !r.is_polynomial()) throw SyntaxError(0, "expected a complex constant");
  return r.num()[0] / r.den()[0];
}

std::string format_complex(Complex c) {
  // Negative zero keeps its sign through the "-0i" spelling only if the
  // parser negates; normalise it away.
  const double re = c.real() == 0.0 ? 0.0 : c.real();
  const double im = c.imag() == 0.0 ? 0.0 : c.imag();
  std::string out = shortest(re);
  if (im != 0.0) {
    if (std::signbit(im)) out += "-" + shortest(-im) + "i";
    else out += "+" + shortest(im) + "i";
  }
  return out;
}

std::string format_map(const RationalMap& map) {
  const std::string num = format_poly(map.num());
  if (map.is_polynomial() && map.den()[0] == Complex(1.0)) return num;
  return "(" + num + ")/(" + format_poly(map.den()) + ")";
}

}  // namespace hardy
