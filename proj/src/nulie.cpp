#include "nugrass/nulie.hpp"

#include <map>
#include <sstream>

namespace nugrass {

// ---------------------------------------------------------------- gl(m|n)

GlElement GlElement::zero(int m, int n) {
  const auto s = static_cast<std::size_t>(m + n);
  return {m, n, QMatrix(s, QVector(s, Rational(0)))};
}

GlElement GlElement::basis(int m, int n, int u, int v) {
  GlElement e = zero(m, n);
  e.c.at(static_cast<std::size_t>(u)).at(static_cast<std::size_t>(v)) = 1;
  return e;
}

bool GlElement::is_zero() const {
  for (const auto& row : c)
    for (const auto& q : row)
      if (q != 0) return false;
  return true;
}

int GlElement::parity() const {
  int p = -1;
  for (int u = 0; u < size(); ++u)
    for (int v = 0; v < size(); ++v) {
      if (c[u][v] == 0) continue;
      const int q = entry_parity(m, u, v);
      if (p >= 0 && p != q) throw Inhomogeneous();
      p = q;
    }
  return p < 0 ? 0 : p;
}

GlElement GlElement::operator+(const GlElement& o) const {
  if (m != o.m || n != o.n) throw DimensionMismatch("gl elements of different shapes");
  GlElement r = *this;
  for (int u = 0; u < size(); ++u)
    for (int v = 0; v < size(); ++v) r.c[u][v] += o.c[u][v];
  return r;
}

GlElement GlElement::operator*(const Rational& q) const {
  GlElement r = *this;
  for (auto& row : r.c)
    for (auto& x : row) x *= q;
  return r;
}

std::string GlElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int u = 0; u < size(); ++u)
    for (int v = 0; v < size(); ++v) {
      Rational q = c[u][v];
      if (q == 0) continue;
      if (first) {
        if (q < 0) os << "-";
      } else {
        os << (q < 0 ? " - " : " + ");
      }
      q = abs(q);
      if (q != 1) os << q.get_str() << " ";
      os << "E" << u + 1 << v + 1;
      first = false;
    }
  return first ? "0" : os.str();
}

nlohmann::json GlElement::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : c) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& q : row) r.push_back(q.get_str());
    rows.push_back(r);
  }
  return {{"m", m}, {"n", n}, {"entries", rows}, {"text", to_string()}};
}

GlElement GlElement::from_json(const nlohmann::json& j) {
  GlElement e = zero(j.at("m").get<int>(), j.at("n").get<int>());
  const auto& rows = j.at("entries");
  if (rows.size() != e.c.size()) throw DimensionMismatch("gl element has the wrong number of rows");
  for (std::size_t u = 0; u < rows.size(); ++u) {
    if (rows[u].size() != e.c.size()) throw DimensionMismatch("gl element has a row of the wrong length");
    for (std::size_t v = 0; v < rows[u].size(); ++v) e.c[u][v] = parse_rational(rows[u][v].get<std::string>());
  }
  return e;
}

std::vector<GlElement> gl_basis(int m, int n, int parity) {
  std::vector<GlElement> out;
  for (int u = 0; u < m + n; ++u)
    for (int v = 0; v < m + n; ++v)
      if (GlElement::entry_parity(m, u, v) == parity) out.push_back(GlElement::basis(m, n, u, v));
  return out;
}

GlElement superbracket(const GlElement& a, const GlElement& b) {
  if (a.m != b.m || a.n != b.n) throw DimensionMismatch("gl elements of different shapes");
  const int pa = a.parity(), pb = b.parity();
  const Rational sign = (pa * pb) % 2 ? -1 : 1;
  GlElement r = GlElement::zero(a.m, a.n);
  const int s = a.size();
  for (int u = 0; u < s; ++u)
    for (int v = 0; v < s; ++v) {
      Rational acc = 0;
      for (int w = 0; w < s; ++w) acc += a.c[u][w] * b.c[w][v] - sign * b.c[u][w] * a.c[w][v];
      r.c[u][v] = acc;
    }
  return r;
}

// ----------------------------------------------------------- vector fields

bool ChartVectorField::is_zero() const {
  for (const auto& f : even)
    if (!f.is_zero()) return false;
  for (const auto& f : odd)
    if (!f.is_zero()) return false;
  return true;
}

bool ChartVectorField::operator==(const ChartVectorField& o) const {
  return chart == o.chart && even == o.even && odd == o.odd && (parity == o.parity || is_zero());
}

ChartVectorField ChartVectorField::operator-() const {
  ChartVectorField r = *this;
  for (auto& f : r.even) f = -f;
  for (auto& f : r.odd) f = -f;
  return r;
}

std::string ChartVectorField::to_string() const {
  std::vector<std::string> terms;
  auto add = [&](const SuperFunction& comp, const std::string& name) {
    if (comp.is_zero()) return;
    std::string s = comp.to_string();
    const bool compound = s.find_first_of("+", 1) != std::string::npos || s.find(" - ", 1) != std::string::npos;
    if (compound) s = "(" + s + ")";
    terms.push_back(s + " ∂_" + name);
  };
  for (std::size_t i = 0; i < even.size(); ++i) add(even[i], ctx->even_names[i]);
  for (std::size_t i = 0; i < odd.size(); ++i) add(odd[i], ctx->odd_names[i]);
  if (terms.empty()) return "0";
  std::string out = terms[0];
  for (std::size_t i = 1; i < terms.size(); ++i) out += " + " + terms[i];
  return out;
}

namespace {

ChartVectorField combine(const std::vector<std::pair<Rational, const ChartVectorField*>>& parts,
                         const ChartVectorField& shape, int parity) {
  ChartVectorField r;
  r.chart = shape.chart;
  r.ctx = shape.ctx;
  r.parity = parity;
  r.even.assign(shape.even.size(), SuperFunction::zero(shape.ctx));
  r.odd.assign(shape.odd.size(), SuperFunction::zero(shape.ctx));
  for (const auto& [q, f] : parts) {
    if (q == 0) continue;
    for (std::size_t i = 0; i < r.even.size(); ++i) r.even[i] = r.even[i] + f->even[i] * q;
    for (std::size_t i = 0; i < r.odd.size(); ++i) r.odd[i] = r.odd[i] + f->odd[i] * q;
  }
  return r;
}

}  // namespace

SuperFunction apply_field(const ChartVectorField& x, const SuperFunction& g, bool formal) {
  const ContextPtr& gc = g.context();
  SuperFunction out = SuperFunction::zero(gc);
  const SuperFunction df = formal ? g.partial("f") : SuperFunction::zero(gc);
  for (std::size_t a = 0; a < x.even.size(); ++a) {
    if (x.even[a].is_zero()) continue;
    const std::string& name = x.ctx->even_names[a];
    SuperFunction d = g.partial(name);
    if (formal) d = d + df * SuperFunction::var(gc, "f_" + name);
    out = out + x.even[a].lifted(gc) * d;
  }
  for (std::size_t b = 0; b < x.odd.size(); ++b) {
    if (x.odd[b].is_zero()) continue;
    out = out + x.odd[b].lifted(gc) * g.partial(x.ctx->odd_names[b]);
  }
  return out;
}

ChartVectorField fundamental_field(const Chart& chart, const GlElement& y) {
  const Dimensions& d = chart.dims;
  if (y.m != d.m || y.n != d.n) throw DimensionMismatch("gl element does not match the chart");
  const int par = y.parity();
  const ContextPtr ext = adjoin_nilpotent(chart.ctx, {"t1", "t2"});
  const SuperFunction t1 = SuperFunction::var(ext, "t1"), t2 = SuperFunction::var(ext, "t2");
  const SuperFunction t = par ? t1 : t1 * t2;

  SuperMatrix<SuperFunction> p(ext, {d.m, d.n}, {d.m, d.n});
  for (int u = 0; u < y.size(); ++u)
    for (int v = 0; v < y.size(); ++v) {
      // An odd scalar enters a supermatrix with the sign of the row parity.
      const Rational sign = par && u >= d.m ? -1 : 1;
      SuperFunction e = t * (y.c[u][v] * sign);
      if (u == v) e = e + SuperFunction::one(ext);
      p.set(u, v, e);
    }
  SuperMatrix<SuperFunction> a(ext, chart.label.row_split(), chart.label.col_split());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const auto& e = chart.label.at(i, j);
      if (is_nu(e))
        a.set(i, j, NuSymbol{});
      else
        a.set(i, j, std::get<SuperFunction>(e).lifted(ext));
    }
  const auto xp = smat_mul(a, p);
  const auto moved = smat_mul(smat_inv(minor_Mprime(xp, chart.index.I, chart.index.R)), xp);

  ChartVectorField f;
  f.chart = chart.index;
  f.ctx = chart.ctx;
  f.parity = par;
  f.even.assign(static_cast<std::size_t>(chart.alpha()), SuperFunction::zero(chart.ctx));
  f.odd.assign(static_cast<std::size_t>(chart.beta()), SuperFunction::zero(chart.ctx));
  for (std::size_t r = 0; r < chart.layout.size(); ++r)
    for (std::size_t c = 0; c < chart.layout[r].size(); ++c) {
      const Slot& s = chart.layout[r][c];
      if (s.kind != SlotKind::Coord && s.kind != SlotKind::NuCoord) continue;
      SuperFunction v = moved.plain(static_cast<int>(r), static_cast<int>(c));
      if (s.kind == SlotKind::NuCoord) v = v.nu();
      SuperFunction lin = par ? v.partial("t1") : v.partial("t1").partial("t2");
      (s.odd ? f.odd : f.even)[static_cast<std::size_t>(s.index)] = SuperFunction(chart.ctx, lin.algebra());
    }
  return f;
}

std::vector<SuperFunction> nu_defect(const ChartVectorField& x) {
  const int beta = static_cast<int>(x.ctx->odd_names.size());
  if (beta == 0) throw NoOddGenerators();
  std::vector<std::string> symbols{"f"};
  for (const auto& name : x.ctx->even_names) symbols.push_back("f_" + name);
  const ContextPtr fc = adjoin_even(x.ctx, symbols);
  const SuperFunction f = SuperFunction::var(fc, "f");
  std::vector<SuperFunction> out;
  for (OddMask s = 0; s < (OddMask{1} << beta); ++s) {
    const SuperFunction g = f * SuperFunction(fc, SuperFunction::Algebra::monomial(s, RationalFunction(1)));
    out.push_back(apply_field(x, g.nu(), true) - apply_field(x, g, true).nu());
  }
  return out;
}

ChartVectorField field_bracket(const ChartVectorField& a, const ChartVectorField& b) {
  if (a.chart != b.chart || !(*a.ctx == *b.ctx)) throw DimensionMismatch("fields on different charts");
  const Rational sign = (a.parity * b.parity) % 2 ? -1 : 1;
  ChartVectorField r;
  r.chart = a.chart;
  r.ctx = a.ctx;
  r.parity = (a.parity + b.parity) % 2;
  for (std::size_t i = 0; i < a.even.size(); ++i)
    r.even.push_back(apply_field(a, b.even[i]) - apply_field(b, a.even[i]) * sign);
  for (std::size_t i = 0; i < a.odd.size(); ++i)
    r.odd.push_back(apply_field(a, b.odd[i]) - apply_field(b, a.odd[i]) * sign);
  return r;
}

// ---------------------------------------------------------------------- h

namespace {

Polynomial lcm(const Polynomial& a, const Polynomial& b) { return exact_divide(a * b, gcd(a, b)); }

/// Rows expressing sum_j c_j expr_j == 0 identically, by matching
/// coefficients of each odd monomial and each polynomial monomial after
/// clearing denominators.
void append_identity_rows(const std::vector<SuperFunction>& exprs, QMatrix& rows) {
  std::map<OddMask, std::vector<RationalFunction>> by_mask;
  for (std::size_t j = 0; j < exprs.size(); ++j)
    for (const auto& [mask, coeff] : exprs[j].algebra().terms()) {
      auto& slot = by_mask[mask];
      slot.resize(exprs.size());
      slot[j] = coeff;
    }
  for (auto& [mask, coeffs] : by_mask) {
    coeffs.resize(exprs.size());
    Polynomial common(1);
    for (const auto& q : coeffs) common = lcm(common, q.denominator());
    std::map<Polynomial::Exponents, QVector> eqs;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (coeffs[j].is_zero()) continue;
      const Polynomial scaled = coeffs[j].numerator() * exact_divide(common, coeffs[j].denominator());
      for (const auto& [exps, q] : scaled.terms()) {
        auto& row = eqs[exps];
        row.resize(exprs.size(), Rational(0));
        row[j] += q;
      }
    }
    for (auto& [e, row] : eqs) rows.push_back(std::move(row));
  }
}

QVector flatten(const GlElement& y) {
  QVector v;
  for (const auto& row : y.c) v.insert(v.end(), row.begin(), row.end());
  return v;
}

}  // namespace

HResult compute_h(const Dimensions& d) {
  d.validate();
  const Atlas atlas(d);
  HResult h;
  for (int par : {0, 1}) {
    const auto basis = gl_basis(d.m, d.n, par);
    QMatrix rows;
    for (const Chart& c : atlas.charts()) {
      std::vector<std::vector<SuperFunction>> defects;
      for (const auto& e : basis) defects.push_back(nu_defect(fundamental_field(c, e)));
      for (std::size_t s = 0; s < defects.front().size(); ++s) {
        std::vector<SuperFunction> exprs;
        for (const auto& dv : defects) exprs.push_back(dv[s]);
        append_identity_rows(exprs, rows);
      }
    }
    auto& out = par ? h.odd : h.even;
    for (const QVector& v : nullspace(rows, basis.size())) {
      GlElement y = GlElement::zero(d.m, d.n);
      for (std::size_t j = 0; j < basis.size(); ++j) y = y + basis[j] * v[j];
      out.push_back(y);
    }
  }
  return h;
}

bool in_span(const std::vector<GlElement>& basis, const GlElement& y) {
  if (y.is_zero()) return true;
  if (basis.empty()) return false;
  QMatrix a;
  for (const auto& b : basis) a.push_back(flatten(b));
  const std::size_t n = a.front().size();
  const std::size_t r0 = rref(a, n).rows.size();
  a.push_back(flatten(y));
  return rref(a, n).rows.size() == r0;
}

namespace {

struct RhoTable {
  std::vector<GlElement> basis;                           // all E_uv, row-major
  std::vector<std::vector<ChartVectorField>> per_chart;  // [chart][basis index]
};

RhoTable rho_table(const Atlas& atlas) {
  const Dimensions& d = atlas.dims();
  RhoTable t;
  for (int u = 0; u < d.m + d.n; ++u)
    for (int v = 0; v < d.m + d.n; ++v) t.basis.push_back(GlElement::basis(d.m, d.n, u, v));
  for (const Chart& c : atlas.charts()) {
    std::vector<ChartVectorField> row;
    for (const auto& e : t.basis) row.push_back(fundamental_field(c, e));
    t.per_chart.push_back(std::move(row));
  }
  return t;
}

/// rho(y) on chart `ci` by linearity over the basis fields.
ChartVectorField rho_of(const RhoTable& t, std::size_t ci, const GlElement& y) {
  std::vector<std::pair<Rational, const ChartVectorField*>> parts;
  std::size_t idx = 0;
  for (const auto& row : y.c)
    for (const auto& q : row) {
      parts.emplace_back(q, &t.per_chart[ci][idx]);
      ++idx;
    }
  return combine(parts, t.per_chart[ci][0], y.parity());
}

}  // namespace

Report verify_rho_morphism(const Dimensions& d) {
  d.validate();
  const Atlas atlas(d);
  const RhoTable t = rho_table(atlas);
  Report rep;
  rep.check_name = "verify_rho_morphism";
  rep.instance = d.to_json();

  int sign = 0;
  bool consistent = true;
  nlohmann::json chart_signs = nlohmann::json::object();
  for (std::size_t ci = 0; ci < atlas.charts().size(); ++ci) {
    int local = 0;
    bool local_ok = true;
    CaseResult cr;
    cr.name = "chart " + atlas.charts()[ci].index.to_string();
    for (std::size_t a = 0; a < t.basis.size(); ++a)
      for (std::size_t b = 0; b < t.basis.size(); ++b) {
        const auto lhs = field_bracket(t.per_chart[ci][a], t.per_chart[ci][b]);
        const auto rhs = rho_of(t, ci, superbracket(t.basis[a], t.basis[b]));
        ++cr.samples;
        int s = 0;
        if (rhs.is_zero()) {
          s = lhs.is_zero() ? 2 : 0;  // 2: holds for either sign
        } else if (lhs == rhs) {
          s = 1;
        } else if (lhs == -rhs) {
          s = -1;
        }
        const bool ok = s == 2 || (s != 0 && (sign == 0 || sign == s));
        if (s == 1 || s == -1) {
          if (sign == 0) sign = s;
          if (local == 0) local = s;
        }
        if (s == 0 || (s != 2 && s != local)) local_ok = false;
        if (ok) {
          ++cr.passed;
        } else {
          ++cr.failed;
          consistent = false;
          if (cr.counterexamples.size() < 3)
            cr.counterexamples.push_back({{"Y1", t.basis[a].to_string()},
                                          {"Y2", t.basis[b].to_string()},
                                          {"field_bracket", lhs.to_string()},
                                          {"rho_of_bracket", rhs.to_string()}});
        }
      }
    if (cr.failed) cr.status = "fail";
    chart_signs[atlas.charts()[ci].index.to_string()] =
        local_ok && local != 0 ? nlohmann::json(local) : nlohmann::json(nullptr);
    rep.add(std::move(cr));
  }
  rep.extra["chart_signs"] = chart_signs;
  rep.extra["sign_s"] = consistent && sign != 0 ? nlohmann::json(sign) : nlohmann::json(nullptr);
  rep.extra["pairs"] = t.basis.size() * t.basis.size();
  return rep;
}

Report h_report(const Dimensions& d) {
  const HResult h = compute_h(d);
  const Atlas atlas(d);
  Report rep;
  rep.check_name = "compute_h";
  rep.instance = d.to_json();
  rep.extra["dim_even"] = h.even.size();
  rep.extra["dim_odd"] = h.odd.size();
  nlohmann::json basis = nlohmann::json::array();
  std::vector<std::pair<int, GlElement>> all;
  for (const auto& y : h.even) all.emplace_back(0, y);
  for (const auto& y : h.odd) all.emplace_back(1, y);
  for (const auto& [p, y] : all) {
    auto j = y.to_json();
    j["parity"] = p;
    basis.push_back(j);
  }
  rep.extra["basis"] = basis;

  CaseResult nontrivial;
  nontrivial.name = "even part is nonzero";
  nontrivial.samples = 1;
  (h.even.empty() ? nontrivial.failed : nontrivial.passed) = 1;
  if (h.even.empty()) nontrivial.status = "fail";
  rep.add(std::move(nontrivial));

  CaseResult defects;
  defects.name = "basis fields nu-commute on every chart";
  std::string residual = "0";
  for (const auto& [p, y] : all)
    for (const Chart& c : atlas.charts()) {
      ++defects.samples;
      bool zero = true;
      for (const auto& e : nu_defect(fundamental_field(c, y)))
        if (!e.is_zero()) {
          zero = false;
          residual = e.to_string();
        }
      if (zero) {
        ++defects.passed;
      } else {
        ++defects.failed;
        defects.counterexamples.push_back({{"element", y.to_string()}, {"chart", c.index.to_string()}});
      }
    }
  if (defects.failed) defects.status = "fail";
  rep.add(std::move(defects));
  rep.extra["defect_residual"] = residual;

  CaseResult closure;
  closure.name = "bracket closure";
  nlohmann::json table = nlohmann::json::array();
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) {
      const GlElement br = superbracket(all[i].second, all[j].second);
      const int p = (all[i].first + all[j].first) % 2;
      const bool inside = in_span(p ? h.odd : h.even, br);
      table.push_back({{"i", i}, {"j", j}, {"bracket", br.to_string()}, {"in_h", inside}});
      ++closure.samples;
      if (inside) {
        ++closure.passed;
      } else {
        ++closure.failed;
        closure.counterexamples.push_back({{"i", i}, {"j", j}, {"bracket", br.to_string()}});
      }
    }
  if (closure.failed) closure.status = "fail";
  rep.add(std::move(closure));
  rep.extra["bracket_table"] = table;

  CaseResult jacobi;
  jacobi.name = "super Jacobi";
  for (const auto& [px, x] : all)
    for (const auto& [py, y] : all)
      for (const auto& [pz, z] : all) {
        const Rational s = (px * py) % 2 ? -1 : 1;
        const GlElement lhs = superbracket(x, superbracket(y, z));
        const GlElement rhs = superbracket(superbracket(x, y), z) + superbracket(y, superbracket(x, z)) * s;
        ++jacobi.samples;
        if (lhs == rhs) {
          ++jacobi.passed;
        } else {
          ++jacobi.failed;
          if (jacobi.counterexamples.size() < 3)
            jacobi.counterexamples.push_back({{"x", x.to_string()}, {"y", y.to_string()}, {"z", z.to_string()}});
        }
      }
  if (jacobi.failed) jacobi.status = "fail";
  rep.add(std::move(jacobi));

  const Report rho = verify_rho_morphism(d);
  CaseResult morph;
  morph.name = "rho is a morphism up to one global sign";
  morph.samples = 1;
  (rho.extra["sign_s"].is_null() ? morph.failed : morph.passed) = 1;
  if (morph.failed) {
    morph.status = "fail";
    for (const auto& c : rho.cases)
      for (const auto& ce : c.counterexamples)
        if (morph.counterexamples.size() < 3) morph.counterexamples.push_back(ce);
  }
  rep.add(std::move(morph));
  rep.extra["sign_s"] = rho.extra["sign_s"];
  rep.extra["chart_signs"] = rho.extra["chart_signs"];
  return rep;
}

}  // namespace nugrass
