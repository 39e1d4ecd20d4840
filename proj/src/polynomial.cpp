#include "nugrass/polynomial.hpp"

#include <optional>

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

namespace nugrass {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0) throw AlgebraError("bad rational literal: '" + text + "'");
  if (q.get_den() == 0) throw AlgebraError("zero denominator in rational literal: '" + text + "'");
  q.canonicalize();
  return q;
}

namespace {

void trim(Polynomial::Exponents& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

bool divides(const Polynomial::Exponents& d, const Polynomial::Exponents& e) {
  if (d.size() > e.size()) return false;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > e[i]) return false;
  return true;
}

Polynomial::Exponents sub_exps(const Polynomial::Exponents& e, const Polynomial::Exponents& d) {
  Polynomial::Exponents r = e;
  for (std::size_t i = 0; i < d.size(); ++i) r[i] -= d[i];
  trim(r);
  return r;
}

Polynomial::Exponents add_exps(const Polynomial::Exponents& a, const Polynomial::Exponents& b) {
  Polynomial::Exponents r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

}  // namespace

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.emplace(Exponents{}, c);
}

Polynomial Polynomial::variable(std::size_t index, unsigned power) {
  Exponents e(index + 1, 0);
  e[index] = power;
  trim(e);
  return monomial(std::move(e), Rational(1));
}

Polynomial Polynomial::monomial(Exponents exps, const Rational& coeff) {
  trim(exps);
  Polynomial p;
  if (coeff != 0) p.terms_.emplace(std::move(exps), coeff);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Exponents{});
  return it == terms_.end() ? Rational(0) : it->second;
}

std::size_t Polynomial::num_vars() const {
  std::size_t n = 0;
  for (const auto& [e, c] : terms_) n = std::max(n, e.size());
  return n;
}

unsigned Polynomial::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_)
    if (var < e.size()) d = std::max(d, e[var]);
  return d;
}

const Polynomial::Exponents& Polynomial::leading_exponents() const {
  if (terms_.empty()) throw AlgebraError("leading term of zero polynomial");
  return terms_.rbegin()->first;
}

const Rational& Polynomial::leading_coefficient() const {
  if (terms_.empty()) throw AlgebraError("leading term of zero polynomial");
  return terms_.rbegin()->second;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  if (a.is_zero() || b.is_zero()) return r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(add_exps(ea, eb), ca * cb);
  return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  if (c == 0) return {};
  Polynomial r = *this;
  for (auto& [e, v] : r.terms_) v *= c;
  return r;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  Polynomial r;
  for (const auto& [e, c] : terms_) {
    if (var >= e.size() || e[var] == 0) continue;
    Exponents d = e;
    d[var] -= 1;
    trim(d);
    r.add_term(d, c * e[var]);
  }
  return r;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return {};
  return scaled(1 / leading_coefficient());
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Print in descending lex order.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || e.empty()) {
      os << nugrass::to_string(mag);
      wrote = true;
    }
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (wrote) os << "*";
      if (v >= names.size()) throw AlgebraError("polynomial printing: unnamed variable");
      os << names[v];
      if (e[v] > 1) os << "^" << e[v];
      wrote = true;
    }
  }
  return os.str();
}

Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw AlgebraError("division by zero polynomial");
  if (b.is_constant()) return a.scaled(1 / b.constant_term());
  Polynomial q;
  Polynomial r = a;
  const auto& lb = b.leading_exponents();
  const Rational& cb = b.leading_coefficient();
  while (!r.is_zero()) {
    const auto& lr = r.leading_exponents();
    if (!divides(lb, lr)) throw AlgebraError("inexact polynomial division");
    Polynomial t = Polynomial::monomial(sub_exps(lr, lb), r.leading_coefficient() / cb);
    q += t;
    r -= t * b;
  }
  return q;
}

namespace {

// Univariate view in variable v: index = degree, entries free of v.
using UniPoly = std::vector<Polynomial>;

UniPoly split(const Polynomial& p, std::size_t v) {
  UniPoly out(p.degree_in(v) + 1);
  for (const auto& [e, c] : p.terms()) {
    Polynomial::Exponents rest = e;
    unsigned d = 0;
    if (v < rest.size()) {
      d = rest[v];
      rest[v] = 0;
    }
    out[d] += Polynomial::monomial(rest, c);
  }
  return out;
}

Polynomial join(const UniPoly& u, std::size_t v) {
  Polynomial r;
  for (std::size_t d = 0; d < u.size(); ++d) {
    if (u[d].is_zero()) continue;
    r += u[d] * Polynomial::variable(v, static_cast<unsigned>(d));
  }
  return r;
}

void strip(UniPoly& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

Polynomial content(const UniPoly& u) {
  Polynomial g;
  for (const auto& c : u) {
    g = gcd(g, c);
    if (g.is_constant() && !g.is_zero()) return Polynomial(1);
  }
  return g;
}

UniPoly divide_all(const UniPoly& u, const Polynomial& c) {
  UniPoly r;
  r.reserve(u.size());
  for (const auto& x : u) r.push_back(exact_divide(x, c));
  return r;
}

// Scales u to integer coefficients with gcd 1, keeping PRS coefficients small.
void make_integer_primitive(UniPoly& u) {
  mpz_class g = 0, l = 1;
  for (const auto& c : u)
    for (const auto& [e, q] : c.terms()) {
      mpz_class n = abs(q.get_num());
      g = gcd(g, n);
      l = lcm(l, q.get_den());
    }
  if (g == 0) return;
  Rational f(l, g);
  f.canonicalize();
  if (f == 1) return;
  for (auto& c : u) c = c.scaled(f);
}

// Sparse pseudo-remainder of a by b (deg b >= 0, b nonzero).
UniPoly prem(UniPoly a, const UniPoly& b) {
  strip(a);
  const std::size_t m = b.size() - 1;
  const Polynomial& lb = b.back();
  while (!a.empty() && a.size() - 1 >= m) {
    const std::size_t shift = a.size() - 1 - m;
    Polynomial la = a.back();
    for (auto& c : a) c = c * lb;
    for (std::size_t i = 0; i <= m; ++i) a[i + shift] -= la * b[i];
    strip(a);
  }
  return a;
}

std::size_t lowest_variable(const Polynomial& a, const Polynomial& b) {
  std::size_t best = static_cast<std::size_t>(-1);
  for (const Polynomial* p : {&a, &b})
    for (const auto& [e, c] : p->terms())
      for (std::size_t v = 0; v < e.size() && v < best; ++v)
        if (e[v] != 0) {
          best = v;
          break;
        }
  return best;
}

}  // namespace

namespace {

// Heuristic gcd over Z (evaluate one variable at a large integer, recurse,
// rebuild by symmetric xi-adic expansion, confirm by trial division). Inputs
// and output have integer coefficients; nullopt means the heuristic gave up.

mpz_class integer_content(const Polynomial& p) {
  mpz_class g = 0;
  for (const auto& [e, c] : p.terms()) g = gcd(g, mpz_class(abs(c.get_num())));
  return g;
}

mpz_class max_norm(const Polynomial& p) {
  mpz_class m = 0;
  for (const auto& [e, c] : p.terms()) m = std::max(m, mpz_class(abs(c.get_num())));
  return m;
}

Polynomial to_integer_primitive(const Polynomial& p) {
  mpz_class g = 0, l = 1;
  for (const auto& [e, c] : p.terms()) {
    g = gcd(g, mpz_class(abs(c.get_num())));
    l = lcm(l, mpz_class(c.get_den()));
  }
  Rational f(l, g);
  f.canonicalize();
  Polynomial r = p.scaled(f);
  return r.leading_coefficient() < 0 ? -r : r;
}

Polynomial substitute(const Polynomial& p, std::size_t v, const mpz_class& xi) {
  Polynomial r;
  for (const auto& [e, c] : p.terms()) {
    Polynomial::Exponents rest = e;
    mpz_class pw = 1;
    if (v < rest.size()) {
      mpz_pow_ui(pw.get_mpz_t(), xi.get_mpz_t(), rest[v]);
      rest[v] = 0;
    }
    r += Polynomial::monomial(rest, c * pw);
  }
  return r;
}

mpz_class symmetric_mod(const mpz_class& c, const mpz_class& xi) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
  if (2 * r > xi) r -= xi;
  return r;
}

Polynomial interpolate(Polynomial h, std::size_t v, const mpz_class& xi) {
  Polynomial g;
  unsigned i = 0;
  while (!h.is_zero()) {
    Polynomial part;
    for (const auto& [e, c] : h.terms()) {
      mpz_class r = symmetric_mod(c.get_num(), xi);
      if (r != 0) part += Polynomial::monomial(e, Rational(r));
    }
    g += part * Polynomial::variable(v, i);
    h = (h - part).scaled(Rational(1) / Rational(xi));
    ++i;
  }
  return g;
}

bool divides_exactly(const Polynomial& d, const Polynomial& a) {
  try {
    exact_divide(a, d);
    return true;
  } catch (const AlgebraError&) {
    return false;
  }
}

std::optional<Polynomial> heuristic_gcd(const Polynomial& a, const Polynomial& b, int depth) {
  const mpz_class ca = integer_content(a), cb = integer_content(b);
  const mpz_class c = gcd(ca, cb);
  if (a.is_constant() || b.is_constant()) return Polynomial(Rational(c));
  const Polynomial pa = a.scaled(Rational(1) / Rational(ca));
  const Polynomial pb = b.scaled(Rational(1) / Rational(cb));
  const std::size_t v = std::max(pa.num_vars(), pb.num_vars()) - 1;
  if (depth > 12) return std::nullopt;

  mpz_class xi = 2 * std::min(max_norm(pa), max_norm(pb)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    Polynomial ea = substitute(pa, v, xi), eb = substitute(pb, v, xi);
    if (!ea.is_zero() && !eb.is_zero()) {
      auto h = heuristic_gcd(ea, eb, depth + 1);
      if (h) {
        Polynomial g = interpolate(*h, v, xi);
        if (!g.is_zero()) {
          g = to_integer_primitive(g);
          if (divides_exactly(g, pa) && divides_exactly(g, pb)) return g.scaled(Rational(c));
        }
      }
    }
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

Polynomial prs_gcd(const Polynomial& a, const Polynomial& b);

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (a == b) return a.monic();
  if (auto h = heuristic_gcd(to_integer_primitive(a), to_integer_primitive(b), 0)) return h->monic();
  return prs_gcd(a, b);
}

namespace {

Polynomial prs_gcd(const Polynomial& a, const Polynomial& b) {

  const std::size_t v = lowest_variable(a, b);
  UniPoly ua = split(a, v);
  UniPoly ub = split(b, v);
  if (ua.size() == 1) return gcd(a, content(ub));
  if (ub.size() == 1) return gcd(content(ua), b);

  Polynomial ca = content(ua);
  Polynomial cb = content(ub);
  Polynomial cont = gcd(ca, cb);
  UniPoly pa = divide_all(ua, ca);
  UniPoly pb = divide_all(ub, cb);
  if (pa.size() < pb.size()) std::swap(pa, pb);
  make_integer_primitive(pa);
  make_integer_primitive(pb);

  while (true) {
    UniPoly r = prem(pa, pb);
    pa = std::move(pb);
    if (r.empty()) break;
    if (r.size() == 1) {
      pa = UniPoly{Polynomial(1)};
      break;
    }
    pb = divide_all(r, content(r));
    make_integer_primitive(pb);
  }
  Polynomial prim = join(divide_all(pa, content(pa)), v);
  return (cont * prim).monic();
}

}  // namespace

namespace {

class PolyParser {
 public:
  PolyParser(const std::string& s, std::span<const std::string> names) : s_(s), names_(names) {}

  Polynomial parse_all() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw AlgebraError("polynomial parse error (" + what + ") at " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc;
    bool neg = eat('-');
    if (!neg) eat('+');
    Polynomial t = term();
    acc = neg ? -t : t;
    while (true) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else break;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial t = factor();
    while (eat('*')) t = t * factor();
    return t;
  }

  Polynomial factor() {
    skip();
    if (eat('(')) {
      Polynomial p = expr();
      if (!eat(')')) fail("expected ')'");
      return power(p);
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ + 1 < s_.size() && s_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
        ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
      return Polynomial(parse_rational(s_.substr(start, pos_ - start)));
    }
    if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      auto it = std::find(names_.begin(), names_.end(), name);
      if (it == names_.end()) fail("unknown variable '" + name + "'");
      return power(Polynomial::variable(static_cast<std::size_t>(it - names_.begin())));
    }
    fail("unexpected character");
  }

  Polynomial power(Polynomial base) {
    if (!eat('^')) return base;
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    unsigned e = static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start)));
    Polynomial r(1);
    for (unsigned i = 0; i < e; ++i) r = r * base;
    return r;
  }

  const std::string& s_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, std::span<const std::string> names) {
  return PolyParser(text, names).parse_all();
}

}  // namespace nugrass
