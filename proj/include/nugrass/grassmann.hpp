#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <vector>

#include "nugrass/rational_function.hpp"

namespace nugrass {

/// Odd monomial as a bitmask: bit i set means generator i is present.
/// Generators are ordered by index, so the mask is the sorted index list.
using OddMask = std::uint64_t;

inline int mask_degree(OddMask m) { return std::popcount(m); }

/// Sign (+1/-1) of e_a * e_b reordered to sorted form; 0 when they share a generator.
inline int monomial_product_sign(OddMask a, OddMask b) {
  if (a & b) return 0;
  int swaps = 0;
  for (OddMask rest = b; rest; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    OddMask above = (j >= 63) ? 0 : (~OddMask{0} << (j + 1));
    swaps += std::popcount(a & above);
  }
  return (swaps & 1) ? -1 : 1;
}

std::vector<int> mask_indices(OddMask m);
OddMask mask_from_indices(const std::vector<int>& idx);

inline bool coeff_is_zero(const Rational& q) { return q == 0; }
inline bool coeff_is_zero(const RationalFunction& f) { return f.is_zero(); }
inline Rational coeff_inverse(const Rational& q) { return 1 / q; }
inline RationalFunction coeff_inverse(const RationalFunction& f) { return f.inverse(); }

/// Exterior algebra over a commutative coefficient field: a finite sum of
/// coefficient * odd monomial. Zero coefficients are never stored.
template <class Coeff>
class Grassmann {
 public:
  using Terms = std::map<OddMask, Coeff>;

  Grassmann() = default;
  explicit Grassmann(const Coeff& body) {
    if (!coeff_is_zero(body)) terms_.emplace(OddMask{0}, body);
  }
  static Grassmann monomial(OddMask m, const Coeff& c) {
    Grassmann g;
    if (!coeff_is_zero(c)) g.terms_.emplace(m, c);
    return g;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Coeff body() const {
    auto it = terms_.find(0);
    return it == terms_.end() ? Coeff{} : it->second;
  }
  Coeff coefficient(OddMask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff{} : it->second;
  }
  Grassmann soul() const {
    Grassmann s = *this;
    s.terms_.erase(0);
    return s;
  }

  /// 0 even, 1 odd, -1 mixed; zero counts as even.
  int parity() const {
    int p = -2;
    for (const auto& [m, c] : terms_) {
      int q = mask_degree(m) & 1;
      if (p == -2) p = q;
      else if (p != q) return -1;
    }
    return p == -2 ? 0 : p;
  }

  OddMask support() const {
    OddMask s = 0;
    for (const auto& [m, c] : terms_) s |= m;
    return s;
  }

  void add_term(OddMask m, const Coeff& c) {
    if (coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  Grassmann operator-() const {
    Grassmann r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  Grassmann& operator+=(const Grassmann& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Grassmann& operator-=(const Grassmann& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Grassmann operator+(Grassmann a, const Grassmann& b) { return a += b; }
  friend Grassmann operator-(Grassmann a, const Grassmann& b) { return a -= b; }
  friend Grassmann operator*(const Grassmann& a, const Grassmann& b) {
    Grassmann r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        int s = monomial_product_sign(ma, mb);
        if (s == 0) continue;
        Coeff c = ca * cb;
        r.add_term(ma | mb, s > 0 ? c : -c);
      }
    return r;
  }
  friend bool operator==(const Grassmann& a, const Grassmann& b) { return a.terms_ == b.terms_; }

  Grassmann scaled(const Coeff& k) const {
    Grassmann r;
    for (const auto& [m, c] : terms_) r.add_term(m, k * c);
    return r;
  }

  /// body^-1 * sum_i (-soul/body)^i; finite because the soul is nilpotent.
  /// Precondition: body nonzero (checked by callers).
  Grassmann inverse() const {
    Coeff b = body();
    Coeff binv = coeff_inverse(b);
    Grassmann n = soul().scaled(-binv);
    Grassmann acc(Coeff(1));
    Grassmann pw(Coeff(1));
    while (true) {
      pw = pw * n;
      if (pw.is_zero()) break;
      acc += pw;
    }
    return acc.scaled(binv);
  }

  /// Toggles generator `g` by left insertion / left removal. With g = 0 no
  /// sign ever arises because generator 0 sorts first.
  Grassmann toggle_first() const {
    Grassmann r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m ^ OddMask{1}, c);
    return r;
  }

  /// Left derivative by odd generator g.
  Grassmann odd_derivative(int g) const {
    const OddMask bit = OddMask{1} << g;
    Grassmann r;
    for (const auto& [m, c] : terms_) {
      if (!(m & bit)) continue;
      int pos = std::popcount(m & (bit - 1));
      r.add_term(m & ~bit, (pos & 1) ? -c : c);
    }
    return r;
  }

  template <class F>
  Grassmann map_coefficients(F f) const {
    Grassmann r;
    for (const auto& [m, c] : terms_) r.add_term(m, f(c));
    return r;
  }

  /// Keeps only monomials inside `allowed`.
  Grassmann restricted(OddMask allowed) const {
    Grassmann r;
    for (const auto& [m, c] : terms_)
      if ((m & ~allowed) == 0) r.terms_.emplace(m, c);
    return r;
  }

 private:
  Terms terms_;
};

}  // namespace nugrass
