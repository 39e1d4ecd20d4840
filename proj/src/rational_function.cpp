#include "nugrass/rational_function.hpp"

namespace nugrass {

RationalFunction::RationalFunction(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw AlgebraError("rational function with zero denominator");
  if (num.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (!den.is_constant()) {
    Polynomial g = gcd(num, den);
    if (!g.is_constant()) {
      num = exact_divide(num, g);
      den = exact_divide(den, g);
    }
  }
  Rational lc = den.leading_coefficient();
  num_ = num.scaled(1 / lc);
  den_ = den.scaled(1 / lc);
}

Rational RationalFunction::constant_value() const {
  if (!is_constant()) throw AlgebraError("rational function is not constant");
  return num_.constant_term() / den_.constant_term();
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  if (a.den_.is_constant() && b.den_.is_constant()) return RationalFunction(a.num_ + b.num_);
  // Both operands are reduced, so only the common denominator factor can
  // cancel against the new numerator.
  Polynomial d = gcd(a.den_, b.den_);
  Polynomial da = exact_divide(a.den_, d), db = exact_divide(b.den_, d);
  Polynomial t = a.num_ * db + b.num_ * da;
  if (t.is_zero()) return {};
  Polynomial den = a.den_ * db;
  if (!d.is_constant()) {
    Polynomial g = gcd(t, d);
    if (!g.is_constant()) {
      t = exact_divide(t, g);
      den = exact_divide(den, g);
    }
  }
  Rational lc = den.leading_coefficient();
  return RationalFunction(t.scaled(1 / lc), den.scaled(1 / lc), RationalFunction::Canonical{});
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_polynomial() && b.is_polynomial()) return RationalFunction(a.num_ * b.num_);
  // Cross-cancel before multiplying; the result is then already reduced.
  Polynomial g1 = gcd(a.num_, b.den_);
  Polynomial g2 = gcd(b.num_, a.den_);
  Polynomial n = exact_divide(a.num_, g1) * exact_divide(b.num_, g2);
  Polynomial d = exact_divide(a.den_, g2) * exact_divide(b.den_, g1);
  Rational lc = d.leading_coefficient();
  return RationalFunction(n.scaled(1 / lc), d.scaled(1 / lc), RationalFunction::Canonical{});
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw AlgebraError("inverse of zero rational function");
  Rational lc = num_.leading_coefficient();
  return RationalFunction(den_.scaled(1 / lc), num_.scaled(1 / lc), Canonical{});
}

RationalFunction RationalFunction::derivative(std::size_t var) const {
  if (den_.is_constant()) return RationalFunction(num_.derivative(var).scaled(1 / den_.constant_term()));
  return RationalFunction(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

std::string RationalFunction::to_string(std::span<const std::string> names) const {
  if (den_.is_constant()) {
    if (den_.constant_term() == 1) return num_.to_string(names);
    return nugrass::to_string(num_.constant_term() / den_.constant_term());
  }
  return "(" + num_.to_string(names) + ")/(" + den_.to_string(names) + ")";
}

RationalFunction parse_rational_function(const std::string& text, std::span<const std::string> names) {
  // "(N)/(D)" is the only form with a top-level '/' between parentheses.
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(') ++depth;
    else if (c == ')') --depth;
    else if (c == '/' && depth == 0 && i > 0 && text[i - 1] == ')') {
      return RationalFunction(parse_polynomial(text.substr(0, i), names), parse_polynomial(text.substr(i + 1), names));
    }
  }
  return RationalFunction(parse_polynomial(text, names));
}

}  // namespace nugrass
