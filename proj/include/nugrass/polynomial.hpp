#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace nugrass {

using Rational = mpq_class;

/// Canonical text of an exact rational: "p" or "p/q" with q > 0.
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

struct AlgebraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Sparse multivariate polynomial over Q.
///
/// Variables are identified by index. Exponent vectors carry no trailing
/// zeros, so lexicographic comparison of the vectors is the lex monomial
/// order with variable 0 most significant. The leading term is the largest
/// key of the map.
class Polynomial {
 public:
  using Exponents = std::vector<unsigned>;
  using Terms = std::map<Exponents, Rational>;

  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT

  static Polynomial variable(std::size_t index, unsigned power = 1);
  static Polynomial monomial(Exponents exps, const Rational& coeff);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  /// Number of variable slots used (one past the largest variable index present).
  std::size_t num_vars() const;
  unsigned degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const { return degree_in(var) > 0; }
  std::size_t total_terms() const { return terms_.size(); }

  const Exponents& leading_exponents() const;
  const Rational& leading_coefficient() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  Polynomial scaled(const Rational& c) const;
  Polynomial derivative(std::size_t var) const;
  /// Divides by the leading coefficient; zero stays zero.
  Polynomial monic() const;

  /// Evaluates with values[i] substituted for variable i. `one` fixes the ring.
  template <class R>
  R evaluate(std::span<const R> values, const R& one) const {
    R acc = one * Rational(0);
    for (const auto& [exps, c] : terms_) {
      R t = one * c;
      for (std::size_t v = 0; v < exps.size(); ++v) {
        if (exps[v] == 0) continue;
        if (v >= values.size()) throw AlgebraError("polynomial evaluation: missing variable value");
        for (unsigned p = 0; p < exps[v]; ++p) t = t * values[v];
      }
      acc = acc + t;
    }
    return acc;
  }

  /// Human-readable form using the given variable names, e.g. "x1^2 - 3/2*x2".
  std::string to_string(std::span<const std::string> names) const;

 private:
  void add_term(const Exponents& e, const Rational& c);
  Terms terms_;
};

/// Exact quotient; throws AlgebraError when b does not divide a.
Polynomial exact_divide(const Polynomial& a, const Polynomial& b);

/// Monic greatest common divisor over Q. gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

Polynomial parse_polynomial(const std::string& text, std::span<const std::string> names);

}  // namespace nugrass
