#pragma once

#include <span>
#include <string>

#include "nugrass/polynomial.hpp"

namespace nugrass {

/// Quotient of polynomials over Q kept in canonical form: coprime numerator
/// and denominator, denominator monic in lex order. Two rational functions are
/// equal iff their representations are equal.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(long c) : RationalFunction(Rational(c)) {}  // NOLINT
  RationalFunction(Polynomial p) : num_(std::move(p)), den_(1) {}  // NOLINT
  RationalFunction(Polynomial num, Polynomial den);

  static RationalFunction variable(std::size_t index) { return RationalFunction(Polynomial::variable(index)); }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  Rational constant_value() const;

  RationalFunction operator-() const { return RationalFunction(-num_, den_, Canonical{}); }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalFunction inverse() const;
  RationalFunction derivative(std::size_t var) const;

  /// Substitutes ring values for the variables; `one` fixes the target ring,
  /// `invert` performs the division in that ring.
  template <class R, class Invert>
  R evaluate(std::span<const R> values, const R& one, Invert invert) const {
    R n = num_.evaluate(values, one);
    if (den_.is_constant()) return n * Rational(1 / den_.constant_term());
    return n * invert(den_.evaluate(values, one));
  }

  /// "p/q" for constants, "N" for polynomials, "(N)/(D)" otherwise.
  std::string to_string(std::span<const std::string> names) const;

 private:
  struct Canonical {};
  RationalFunction(Polynomial num, Polynomial den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}
  Polynomial num_;
  Polynomial den_;
};

RationalFunction parse_rational_function(const std::string& text, std::span<const std::string> names);

}  // namespace nugrass
