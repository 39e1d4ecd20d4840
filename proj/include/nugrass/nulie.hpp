#pragma once

#include "nugrass/atlas.hpp"
#include "nugrass/linalg.hpp"

namespace nugrass {

struct Inhomogeneous : AlgebraError {
  Inhomogeneous() : AlgebraError("element mixes even and odd parts") {}
};

/// Element of gl(m|n) in the elementary basis E_uv (0-based u, v).
struct GlElement {
  int m = 0, n = 0;
  QMatrix c;  // (m+n) x (m+n)

  static GlElement zero(int m, int n);
  static GlElement basis(int m, int n, int u, int v);
  int size() const { return m + n; }
  static int entry_parity(int m, int u, int v) { return (u >= m) != (v >= m) ? 1 : 0; }
  bool is_zero() const;
  /// 0 or 1; zero counts as even. Throws Inhomogeneous.
  int parity() const;

  GlElement operator+(const GlElement& o) const;
  GlElement operator*(const Rational& q) const;
  bool operator==(const GlElement&) const = default;

  /// "E11 - 2 E23", 1-based indices.
  std::string to_string() const;
  nlohmann::json to_json() const;
  static GlElement from_json(const nlohmann::json& j);
};

/// All E_uv of the given parity, row-major.
std::vector<GlElement> gl_basis(int m, int n, int parity);

/// Y1 Y2 - (-1)^{|Y1||Y2|} Y2 Y1.
GlElement superbracket(const GlElement& a, const GlElement& b);

/// Derivation of a chart's structure ring, stored by its values on the coordinates.
struct ChartVectorField {
  IndexPair chart;
  ContextPtr ctx;
  int parity = 0;
  std::vector<SuperFunction> even, odd;

  bool is_zero() const;
  bool operator==(const ChartVectorField& o) const;
  ChartVectorField operator-() const;
  /// "x ∂_x + e ∂_e" style; "0" for the zero field.
  std::string to_string() const;
};

/// Applies the field to g, whose context extends the chart context. With
/// `formal` set, even symbol "f" is treated as a function of the even
/// coordinates whose partials are the symbols "f_<name>".
SuperFunction apply_field(const ChartVectorField& x, const SuperFunction& g, bool formal = false);

/// rho(Y) on a chart: the first-order part of X(Id + tY) with t odd (odd Y)
/// or t = t1 t2 (even Y), kept in the same chart.
ChartVectorField fundamental_field(const Chart& chart, const GlElement& y);

/// X(nu(f e_S)) - nu(X(f e_S)) for every odd monomial e_S of the chart, over
/// the chart ring extended by f and its formal first partials.
std::vector<SuperFunction> nu_defect(const ChartVectorField& x);

/// [X, Y](c) = X(Y(c)) - (-1)^{|X||Y|} Y(X(c)).
ChartVectorField field_bracket(const ChartVectorField& a, const ChartVectorField& b);

struct HResult {
  std::vector<GlElement> even, odd;
};

/// Basis of { Y in gl(m|n) : rho(Y) nu-commutes on every chart }, per parity.
HResult compute_h(const Dimensions& d);

/// Whether y lies in the span of `basis` (all of one parity).
bool in_span(const std::vector<GlElement>& basis, const GlElement& y);

/// Full h report: dimensions, basis, bracket table, defect re-check, closure,
/// super Jacobi, and the rho morphism sign.
Report h_report(const Dimensions& d);

/// field_bracket(rho Y1, rho Y2) = s rho([Y1, Y2]) over all basis pairs and charts.
Report verify_rho_morphism(const Dimensions& d);

}  // namespace nugrass
