#include "nugrass/superalgebra.hpp"

#include <algorithm>
#include <sstream>

namespace nugrass {

std::vector<int> mask_indices(OddMask m) {
  std::vector<int> out;
  for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

OddMask mask_from_indices(const std::vector<int>& idx) {
  OddMask m = 0;
  for (int i : idx) {
    if (i < 0 || i >= 64) throw AlgebraError("odd generator index out of range");
    OddMask bit = OddMask{1} << i;
    if (m & bit) throw AlgebraError("repeated odd generator in monomial");
    m |= bit;
  }
  return m;
}

int SuperContext::even_index(const std::string& name) const {
  auto it = std::find(even_names.begin(), even_names.end(), name);
  return it == even_names.end() ? -1 : static_cast<int>(it - even_names.begin());
}

int SuperContext::odd_index(const std::string& name) const {
  auto it = std::find(odd_names.begin(), odd_names.end(), name);
  return it == odd_names.end() ? -1 : static_cast<int>(it - odd_names.begin());
}

ContextPtr make_context(std::vector<std::string> even, std::vector<std::string> odd) {
  auto ctx = std::make_shared<SuperContext>();
  ctx->nu_generators = static_cast<int>(odd.size());
  ctx->even_names = std::move(even);
  ctx->odd_names = std::move(odd);
  if (ctx->odd_names.size() > 64) throw AlgebraError("at most 64 odd generators are supported");
  return ctx;
}

namespace {

void check_fresh(const SuperContext& c, const std::string& n) {
  if (c.even_index(n) >= 0 || c.odd_index(n) >= 0) throw NameClash(n);
}

bool same_context(const ContextPtr& a, const ContextPtr& b) { return a == b || (a && b && *a == *b); }

const ContextPtr& common(const SuperFunction& a, const SuperFunction& b) {
  if (!same_context(a.context(), b.context())) throw ContextMismatch();
  return a.context();
}

}  // namespace

ContextPtr adjoin_nilpotent(const ContextPtr& ctx, const std::vector<std::string>& names) {
  auto ext = std::make_shared<SuperContext>(*ctx);
  for (const auto& n : names) {
    check_fresh(*ext, n);
    ext->odd_names.push_back(n);
  }
  if (ext->odd_names.size() > 64) throw AlgebraError("at most 64 odd generators are supported");
  return ext;
}

ContextPtr adjoin_even(const ContextPtr& ctx, const std::vector<std::string>& names) {
  auto ext = std::make_shared<SuperContext>(*ctx);
  for (const auto& n : names) {
    check_fresh(*ext, n);
    ext->even_names.push_back(n);
  }
  return ext;
}

// ---------------------------------------------------------------- SuperFunction

SuperFunction SuperFunction::even_var(const ContextPtr& ctx, int i) {
  if (i < 0 || i >= static_cast<int>(ctx->even_names.size())) throw AlgebraError("even variable index out of range");
  return coefficient(ctx, RationalFunction::variable(static_cast<std::size_t>(i)));
}

SuperFunction SuperFunction::odd_gen(const ContextPtr& ctx, int i) {
  if (i < 0 || i >= static_cast<int>(ctx->odd_names.size())) throw AlgebraError("odd generator index out of range");
  return {ctx, Algebra::monomial(OddMask{1} << i, RationalFunction(1))};
}

SuperFunction SuperFunction::var(const ContextPtr& ctx, const std::string& name) {
  if (int i = ctx->even_index(name); i >= 0) return even_var(ctx, i);
  if (int i = ctx->odd_index(name); i >= 0) return odd_gen(ctx, i);
  throw UnknownVariable(name);
}

SuperFunction operator+(const SuperFunction& a, const SuperFunction& b) { return {common(a, b), a.g_ + b.g_}; }
SuperFunction operator-(const SuperFunction& a, const SuperFunction& b) { return {common(a, b), a.g_ - b.g_}; }
SuperFunction operator*(const SuperFunction& a, const SuperFunction& b) { return {common(a, b), a.g_ * b.g_}; }
bool operator==(const SuperFunction& a, const SuperFunction& b) {
  return same_context(a.ctx_, b.ctx_) && a.g_ == b.g_;
}

SuperFunction SuperFunction::inverse() const {
  if (body_is_zero()) throw ZeroBody();
  return {ctx_, g_.inverse()};
}

SuperFunction SuperFunction::nu() const {
  if (!ctx_ || ctx_->nu_generators < 1) throw NoOddGenerators();
  return {ctx_, g_.toggle_first()};
}

SuperFunction SuperFunction::partial(const std::string& name) const {
  if (int i = ctx_->even_index(name); i >= 0) return partial_even(i);
  if (int i = ctx_->odd_index(name); i >= 0) return partial_odd(i);
  throw UnknownVariable(name);
}

SuperFunction SuperFunction::partial_even(int i) const {
  return {ctx_, g_.map_coefficients([i](const RationalFunction& c) { return c.derivative(static_cast<std::size_t>(i)); })};
}

SuperFunction SuperFunction::partial_odd(int i) const { return {ctx_, g_.odd_derivative(i)}; }

SuperFunction SuperFunction::lifted(const ContextPtr& ext) const {
  const auto& a = *ctx_;
  const auto& b = *ext;
  bool prefix = a.even_names.size() <= b.even_names.size() && a.odd_names.size() <= b.odd_names.size() &&
                std::equal(a.even_names.begin(), a.even_names.end(), b.even_names.begin()) &&
                std::equal(a.odd_names.begin(), a.odd_names.end(), b.odd_names.begin()) &&
                a.nu_generators == b.nu_generators;
  if (!prefix) throw ContextMismatch();
  return {ext, g_};
}

namespace {

std::vector<std::pair<OddMask, const RationalFunction*>> sorted_terms(const Grassmann<RationalFunction>& g) {
  std::vector<std::pair<OddMask, const RationalFunction*>> v;
  for (const auto& [m, c] : g.terms()) v.emplace_back(m, &c);
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
    int dx = mask_degree(x.first), dy = mask_degree(y.first);
    if (dx != dy) return dx < dy;
    return mask_indices(x.first) < mask_indices(y.first);
  });
  return v;
}

bool bare_power(const Polynomial& p) {
  if (p.total_terms() != 1 || p.leading_coefficient() != 1) return false;
  const auto& e = p.leading_exponents();
  return std::count_if(e.begin(), e.end(), [](unsigned x) { return x != 0; }) == 1;
}

std::string format_term(const RationalFunction& c, const std::string& mono, std::span<const std::string> names) {
  const Polynomial& num = c.numerator();
  const Polynomial& den = c.denominator();
  std::string core;
  if (mono.empty()) {
    core = num.to_string(names);
    if (num.total_terms() > 1 && !den.is_constant()) core = "(" + core + ")";
  } else if (num == Polynomial(1)) {
    core = mono;
  } else if (num == Polynomial(-1)) {
    core = "-" + mono;
  } else if (num.total_terms() == 1) {
    core = num.to_string(names) + "*" + mono;
  } else {
    core = "(" + num.to_string(names) + ")*" + mono;
  }
  if (!den.is_constant()) {
    std::string d = den.to_string(names);
    core += "/" + (bare_power(den) ? d : "(" + d + ")");
  }
  return core;
}

}  // namespace

std::string SuperFunction::to_string() const {
  if (g_.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : sorted_terms(g_)) {
    std::string mono;
    for (int i : mask_indices(m)) mono += ctx_->odd_names[static_cast<std::size_t>(i)];
    std::string t = format_term(*c, mono, ctx_->even_names);
    if (out.empty()) out = t;
    else if (t.front() == '-') out += " - " + t.substr(1);
    else out += " + " + t;
  }
  return out;
}

// -------------------------------------------------------------- GrassmannNumber

namespace {

int common_r(const GrassmannNumber& a, const GrassmannNumber& b) {
  if (a.context() != b.context()) throw ContextMismatch();
  return a.context();
}

}  // namespace

GrassmannNumber GrassmannNumber::theta(int r, int i) {
  if (i < 1 || i > r) throw AlgebraError("theta index out of range");
  return {r, Algebra::monomial(OddMask{1} << (i - 1), Rational(1))};
}

GrassmannNumber operator+(const GrassmannNumber& a, const GrassmannNumber& b) { return {common_r(a, b), a.g_ + b.g_}; }
GrassmannNumber operator-(const GrassmannNumber& a, const GrassmannNumber& b) { return {common_r(a, b), a.g_ - b.g_}; }
GrassmannNumber operator*(const GrassmannNumber& a, const GrassmannNumber& b) { return {common_r(a, b), a.g_ * b.g_}; }

GrassmannNumber GrassmannNumber::inverse() const {
  if (body_is_zero()) throw ZeroBody();
  return {r_, g_.inverse()};
}

GrassmannNumber GrassmannNumber::nu() const {
  if (r_ < 1) throw NoOddGenerators();
  return {r_, g_.toggle_first()};
}

std::string GrassmannNumber::to_string() const {
  if (g_.is_zero()) return "0";
  std::vector<std::pair<OddMask, Rational>> v(g_.terms().begin(), g_.terms().end());
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
    int dx = mask_degree(x.first), dy = mask_degree(y.first);
    if (dx != dy) return dx < dy;
    return mask_indices(x.first) < mask_indices(y.first);
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : v) {
    Rational mag = abs(c);
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    bool wrote = false;
    if (mag != 1 || m == 0) {
      os << nugrass::to_string(mag);
      wrote = true;
    }
    for (int i : mask_indices(m)) {
      if (wrote) os << "*";
      os << "θ" << (i + 1);
      wrote = true;
    }
  }
  return os.str();
}

GrassmannNumber evaluate(const SuperFunction& f, std::span<const GrassmannNumber> even_values,
                         std::span<const GrassmannNumber> odd_values, int r) {
  const auto& ctx = *f.context();
  if (even_values.size() < ctx.even_names.size() || odd_values.size() < ctx.odd_names.size())
    throw AlgebraError("evaluate: not enough values for the generator context");
  const GrassmannNumber one = GrassmannNumber::one(r);
  GrassmannNumber acc = GrassmannNumber::zero(r);
  for (const auto& [m, c] : f.algebra().terms()) {
    GrassmannNumber coeff = c.evaluate<GrassmannNumber>(even_values, one, [](const GrassmannNumber& d) { return d.inverse(); });
    GrassmannNumber mono = one;
    for (int i : mask_indices(m)) mono = mono * odd_values[static_cast<std::size_t>(i)];
    acc = acc + coeff * mono;
  }
  return acc;
}

// ---------------------------------------------------------------------- Sampler

long Sampler::small_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

long Sampler::small_nonzero(long lo, long hi) {
  while (true) {
    long v = small_int(lo, hi);
    if (v != 0) return v;
  }
}

GrassmannNumber Sampler::grassmann(int r, int parity) {
  Grassmann<Rational> g;
  const OddMask full = r >= 64 ? ~OddMask{0} : ((OddMask{1} << r) - 1);
  for (OddMask m = 0;; ++m) {
    if ((mask_degree(m) & 1) == parity) {
      long v = (m == 0) ? small_nonzero(-4, 4) : small_int(-3, 3);
      g.add_term(m, Rational(v));
    }
    if (m == full) break;
  }
  return {r, g};
}

RationalFunction Sampler::rational_function(std::size_t nvars, bool allow_denominator) {
  Polynomial num(Rational(small_int(-3, 3)));
  for (std::size_t v = 0; v < nvars; ++v) {
    if (small_int(0, 2) == 0) continue;
    num += Polynomial::variable(v).scaled(Rational(small_int(-2, 2)));
    if (small_int(0, 4) == 0) num += Polynomial::variable(v, 2).scaled(Rational(small_nonzero(-2, 2)));
  }
  if (allow_denominator && nvars > 0 && small_int(0, 3) == 0) {
    std::size_t v = static_cast<std::size_t>(small_int(0, static_cast<long>(nvars) - 1));
    Polynomial den = Polynomial(Rational(small_nonzero(1, 3))) + Polynomial::variable(v).scaled(Rational(small_nonzero(-2, 2)));
    return RationalFunction(num, den);
  }
  return RationalFunction(num);
}

SuperFunction Sampler::super_function(const ContextPtr& ctx, int parity, bool body_nonzero) {
  const int n = static_cast<int>(ctx->odd_names.size());
  const std::size_t nv = ctx->even_names.size();
  Grassmann<RationalFunction> g;
  const OddMask count = OddMask{1} << n;
  for (OddMask m = 0; m < count; ++m) {
    int p = mask_degree(m) & 1;
    if (parity >= 0 && p != parity) continue;
    if (m == 0 && body_nonzero) {
      RationalFunction b;
      while (b.is_zero()) b = rational_function(nv, true);
      g.add_term(m, b);
      continue;
    }
    if (small_int(0, 1) == 0) continue;
    g.add_term(m, rational_function(nv, true));
  }
  return {ctx, g};
}

GrassmannNumber lambda_sample(int r, int parity, std::uint64_t seed) {
  Sampler s(seed);
  return s.grassmann(r, parity);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(seed);
  h = mix(h ^ a);
  h = mix(h ^ b);
  h = mix(h ^ c);
  return h;
}

// ------------------------------------------------------------------ JSON

namespace {

std::string index_key(OddMask m) {
  std::string k;
  for (int i : mask_indices(m)) {
    if (!k.empty()) k += ",";
    k += std::to_string(i + 1);
  }
  return k;
}

OddMask parse_index_key(const std::string& k) {
  std::vector<int> idx;
  std::stringstream ss(k);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) throw AlgebraError("bad monomial key '" + k + "'");
    idx.push_back(std::stoi(part) - 1);
  }
  if (!std::is_sorted(idx.begin(), idx.end())) throw AlgebraError("monomial key not increasing: '" + k + "'");
  return mask_from_indices(idx);
}

}  // namespace

nlohmann::json to_json(const GrassmannNumber& g) {
  nlohmann::json terms = nlohmann::json::object();
  for (const auto& [m, c] : g.algebra().terms()) terms[index_key(m)] = to_string(c);
  return {{"r", g.context()}, {"terms", terms}};
}

GrassmannNumber grassmann_from_json(const nlohmann::json& j) {
  int r = j.at("r").get<int>();
  Grassmann<Rational> g;
  for (const auto& [k, v] : j.at("terms").items()) {
    OddMask m = parse_index_key(k);
    if (r < 64 && (m >> r) != 0) throw AlgebraError("monomial uses a generator beyond r");
    g.add_term(m, parse_rational(v.get<std::string>()));
  }
  return {r, g};
}

nlohmann::json to_json(const SuperFunction& f) {
  const auto& ctx = *f.context();
  nlohmann::json terms = nlohmann::json::object();
  for (const auto& [m, c] : f.algebra().terms()) terms[index_key(m)] = c.to_string(ctx.even_names);
  return {{"even", ctx.even_names}, {"odd", ctx.odd_names}, {"nu_generators", ctx.nu_generators}, {"terms", terms}};
}

SuperFunction super_function_from_json(const nlohmann::json& j) {
  auto ctx = std::make_shared<SuperContext>();
  ctx->even_names = j.at("even").get<std::vector<std::string>>();
  ctx->odd_names = j.at("odd").get<std::vector<std::string>>();
  ctx->nu_generators = j.at("nu_generators").get<int>();
  Grassmann<RationalFunction> g;
  for (const auto& [k, v] : j.at("terms").items())
    g.add_term(parse_index_key(k), parse_rational_function(v.get<std::string>(), ctx->even_names));
  return {ctx, g};
}

}  // namespace nugrass
