#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "nugrass/grassmann.hpp"

namespace nugrass {

struct ZeroBody : AlgebraError {
  ZeroBody() : AlgebraError("element has zero body and is not invertible") {}
};
struct NoOddGenerators : AlgebraError {
  NoOddGenerators() : AlgebraError("nu needs at least one odd generator") {}
};
struct ContextMismatch : AlgebraError {
  ContextMismatch() : AlgebraError("operands live in different generator contexts") {}
};
struct UnknownVariable : AlgebraError {
  explicit UnknownVariable(const std::string& n) : AlgebraError("unknown variable '" + n + "'") {}
};
struct NameClash : AlgebraError {
  explicit NameClash(const std::string& n) : AlgebraError("generator name already in use: '" + n + "'") {}
};

/// Generator context of a structure ring: named even indeterminates (the
/// polynomial variables of the coefficients) and named odd generators. The
/// first `nu_generators` odd generators form the chart's exterior algebra; the
/// involution toggles generator 0 and never looks at the rest (auxiliaries).
struct SuperContext {
  std::vector<std::string> even_names;
  std::vector<std::string> odd_names;
  int nu_generators = 0;

  int even_index(const std::string& name) const;  // -1 if absent
  int odd_index(const std::string& name) const;   // -1 if absent
  bool operator==(const SuperContext&) const = default;
};
using ContextPtr = std::shared_ptr<const SuperContext>;

ContextPtr make_context(std::vector<std::string> even, std::vector<std::string> odd);
/// Appends fresh odd generators that nu ignores. Throws NameClash.
ContextPtr adjoin_nilpotent(const ContextPtr& ctx, const std::vector<std::string>& names);
/// Appends fresh even indeterminates (formal symbols). Throws NameClash.
ContextPtr adjoin_even(const ContextPtr& ctx, const std::vector<std::string>& names);

/// Element of (rational functions in the even indeterminates) tensor (exterior
/// algebra on the odd generators).
class SuperFunction {
 public:
  using Context = ContextPtr;
  using Algebra = Grassmann<RationalFunction>;

  SuperFunction() = default;
  SuperFunction(ContextPtr ctx, Algebra g) : ctx_(std::move(ctx)), g_(std::move(g)) {}

  static SuperFunction zero(const ContextPtr& ctx) { return {ctx, Algebra{}}; }
  static SuperFunction one(const ContextPtr& ctx) { return constant(ctx, 1); }
  static SuperFunction constant(const ContextPtr& ctx, const Rational& c) { return {ctx, Algebra(RationalFunction(c))}; }
  static SuperFunction coefficient(const ContextPtr& ctx, const RationalFunction& f) { return {ctx, Algebra(f)}; }
  static SuperFunction even_var(const ContextPtr& ctx, int i);
  static SuperFunction odd_gen(const ContextPtr& ctx, int i);
  /// Looks the name up among even then odd generators.
  static SuperFunction var(const ContextPtr& ctx, const std::string& name);

  const ContextPtr& context() const { return ctx_; }
  const Algebra& algebra() const { return g_; }
  bool is_zero() const { return g_.is_zero(); }
  int parity() const { return g_.parity(); }
  RationalFunction body() const { return g_.body(); }
  bool body_is_zero() const { return g_.body().is_zero(); }

  SuperFunction operator-() const { return {ctx_, -g_}; }
  friend SuperFunction operator+(const SuperFunction& a, const SuperFunction& b);
  friend SuperFunction operator-(const SuperFunction& a, const SuperFunction& b);
  friend SuperFunction operator*(const SuperFunction& a, const SuperFunction& b);
  friend SuperFunction operator*(const SuperFunction& a, const Rational& q) { return {a.ctx_, a.g_.scaled(RationalFunction(q))}; }
  friend SuperFunction operator*(const Rational& q, const SuperFunction& a) { return a * q; }
  friend bool operator==(const SuperFunction& a, const SuperFunction& b);

  /// Throws ZeroBody.
  SuperFunction inverse() const;
  /// The odd involution; throws NoOddGenerators.
  SuperFunction nu() const;
  /// Partial derivative; odd variables use the left derivative. Throws UnknownVariable.
  SuperFunction partial(const std::string& name) const;
  SuperFunction partial_even(int i) const;
  SuperFunction partial_odd(int i) const;
  /// Left coefficient of an odd generator: coefficient_of(t, a + t*b) = b for t-free a, b.
  SuperFunction coefficient_of(const std::string& odd_name) const { return partial(odd_name); }
  /// Same element viewed in a context that extends this one by appended generators.
  SuperFunction lifted(const ContextPtr& ext) const;

  std::string to_string() const;

 private:
  ContextPtr ctx_;
  Algebra g_;
};

/// Element of the finite Grassmann algebra Lambda_r over Q (generators theta_1..theta_r).
class GrassmannNumber {
 public:
  using Context = int;
  using Algebra = Grassmann<Rational>;

  GrassmannNumber() = default;
  GrassmannNumber(int r, Algebra g) : r_(r), g_(std::move(g)) {}

  static GrassmannNumber zero(int r) { return {r, Algebra{}}; }
  static GrassmannNumber one(int r) { return constant(r, 1); }
  static GrassmannNumber constant(int r, const Rational& c) { return {r, Algebra(c)}; }
  /// theta_i, 1-based.
  static GrassmannNumber theta(int r, int i);

  int context() const { return r_; }
  const Algebra& algebra() const { return g_; }
  bool is_zero() const { return g_.is_zero(); }
  int parity() const { return g_.parity(); }
  Rational body() const { return g_.body(); }
  bool body_is_zero() const { return g_.body() == 0; }
  GrassmannNumber soul() const { return {r_, g_.soul()}; }

  GrassmannNumber operator-() const { return {r_, -g_}; }
  friend GrassmannNumber operator+(const GrassmannNumber& a, const GrassmannNumber& b);
  friend GrassmannNumber operator-(const GrassmannNumber& a, const GrassmannNumber& b);
  friend GrassmannNumber operator*(const GrassmannNumber& a, const GrassmannNumber& b);
  friend GrassmannNumber operator*(const GrassmannNumber& a, const Rational& q) { return {a.r_, a.g_.scaled(q)}; }
  friend GrassmannNumber operator*(const Rational& q, const GrassmannNumber& a) { return a * q; }
  friend bool operator==(const GrassmannNumber& a, const GrassmannNumber& b) { return a.r_ == b.r_ && a.g_ == b.g_; }

  /// Throws ZeroBody.
  GrassmannNumber inverse() const;
  /// Toggles theta_1 by left insertion; throws NoOddGenerators when r = 0.
  GrassmannNumber nu() const;

  std::string to_string() const;

 private:
  int r_ = 0;
  Algebra g_;
};

/// Evaluates a SuperFunction at even/odd values in Lambda_r (indexed like the
/// context's even and odd generators). Throws ZeroBody if a denominator
/// evaluates to a non-invertible element.
GrassmannNumber evaluate(const SuperFunction& f, std::span<const GrassmannNumber> even_values,
                         std::span<const GrassmannNumber> odd_values, int r);

/// Seeded source of random algebra elements with small integer coefficients.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  long small_int(long lo, long hi);
  long small_nonzero(long lo, long hi);
  /// Parity-homogeneous element of Lambda_r; even samples have a nonzero body.
  GrassmannNumber grassmann(int r, int parity);
  /// Random element of the context's ring; coefficients are low-degree
  /// polynomials, sometimes divided by a polynomial with nonzero constant term.
  /// parity -1 gives a mixed element.
  SuperFunction super_function(const ContextPtr& ctx, int parity, bool body_nonzero = false);
  RationalFunction rational_function(std::size_t nvars, bool allow_denominator);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Deterministic in seed.
GrassmannNumber lambda_sample(int r, int parity, std::uint64_t seed);

/// Deterministic child seed for (seed, a, b, c) tuples.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

nlohmann::json to_json(const GrassmannNumber& g);
GrassmannNumber grassmann_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SuperFunction& f);
SuperFunction super_function_from_json(const nlohmann::json& j);

}  // namespace nugrass
