#include "nugrass/atlas.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

#include "nugrass/linalg.hpp"

namespace nugrass {

// ------------------------------------------------------------------ indices

void Dimensions::validate() const {
  if (k < 0 || l < 0 || m < 0 || n < 0) throw InvalidDimensions("dimensions must be non-negative");
  if (k > m || l > n) throw InvalidDimensions("need k <= m and l <= n");
  if (m + n > 16) throw InvalidDimensions("m + n too large for desk-scale computation");
}

std::string Dimensions::to_string() const {
  std::ostringstream os;
  os << "νG_{" << k << "|" << l << "}(" << m << "|" << n << ")";
  return os.str();
}

nlohmann::json Dimensions::to_json() const { return {{"k", k}, {"l", l}, {"m", m}, {"n", n}}; }

namespace {

std::string set_string(const std::vector<int>& s) {
  if (s.empty()) return "∅";
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

std::vector<int> parse_set(std::string t) {
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
  if (t == "∅" || t == "{}" || t.empty()) return {};
  if (t.front() != '{' || t.back() != '}') throw AlgebraError("index set must look like {1,2}: '" + t + "'");
  std::vector<int> out;
  std::stringstream ss(t.substr(1, t.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw AlgebraError("bad index '" + item + "'");
    out.push_back(std::stoi(item));
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1]) throw AlgebraError("index set must be strictly increasing");
  return out;
}

}  // namespace

std::string IndexPair::to_string() const { return set_string(I) + "|" + set_string(R); }

IndexPair IndexPair::parse(const std::string& text) {
  const auto bar = text.find('|');
  if (bar == std::string::npos || text.find('|', bar + 1) != std::string::npos)
    throw AlgebraError("index must look like {i,j}|{r,s}: '" + text + "'");
  return {parse_set(text.substr(0, bar)), parse_set(text.substr(bar + 1))};
}

// ------------------------------------------------------------------- charts

ContextPtr chart_context(const Dimensions& d) {
  std::vector<std::string> even, odd;
  const int a = d.alpha(), b = d.beta();
  for (int i = 1; i <= a; ++i) even.push_back(a == 1 ? "x" : "x" + std::to_string(i));
  for (int i = 1; i <= b; ++i) odd.push_back(b == 1 ? "e" : "e" + std::to_string(i));
  return make_context(even, odd);
}

namespace {

Chart build_chart(const Dimensions& d, const IndexPair& index, const ContextPtr& ctx) {
  d.validate();
  const int k = d.k, l = d.l, m = d.m, n = d.n;
  if (index.p() + index.q() != k + l) throw UnknownChart("index size must be k+l: " + index.to_string());
  for (int i : index.I)
    if (i < 1 || i > m) throw UnknownChart("even index out of range: " + index.to_string());
  for (int i : index.R)
    if (i < 1 || i > n) throw UnknownChart("odd index out of range: " + index.to_string());

  Chart c;
  c.dims = d;
  c.index = index;
  c.ctx = ctx;
  const int rows = k + l, cols = m + n;
  c.layout.assign(static_cast<std::size_t>(rows), std::vector<Slot>(static_cast<std::size_t>(cols)));

  // Identity columns, in minor order: even I then odd R; diagonal r.
  std::vector<int> id_cols;
  for (int i : index.I) id_cols.push_back(i - 1);
  for (int j : index.R) id_cols.push_back(m + j - 1);
  const int p = index.p();
  for (int r = 0; r < rows; ++r) {
    const bool row_odd = r >= k, col_odd = r >= p;
    c.layout[r][id_cols[r]].kind = row_odd == col_odd ? SlotKind::One : SlotKind::NuOne;
  }

  // Remaining columns left to right. The first m-k take k even then l odd
  // coordinates top to bottom; the rest take k odd then l even.
  int next_x = 0, next_e = 0, ordinal = 0;
  for (int col = 0; col < cols; ++col) {
    if (std::find(id_cols.begin(), id_cols.end(), col) != id_cols.end()) continue;
    ++ordinal;
    const bool even_pattern = ordinal <= m - k;
    const bool col_odd = col >= m;
    for (int r = 0; r < rows; ++r) {
      const bool top = r < k;
      const bool coord_odd = even_pattern ? !top : top;
      const bool block_odd = (r >= k) != col_odd;
      Slot& s = c.layout[r][col];
      s.odd = coord_odd;
      s.index = coord_odd ? next_e++ : next_x++;
      s.kind = coord_odd == block_odd ? SlotKind::Coord : SlotKind::NuCoord;
    }
  }

  c.label = SuperMatrix<SuperFunction>(ctx, {k, l}, {m, n});
  for (int r = 0; r < rows; ++r)
    for (int col = 0; col < cols; ++col) {
      const Slot& s = c.layout[r][col];
      switch (s.kind) {
        case SlotKind::Zero:
          break;
        case SlotKind::One:
          c.label.set(r, col, SuperFunction::one(ctx));
          break;
        case SlotKind::NuOne:
          c.label.set(r, col, NuSymbol{});
          break;
        case SlotKind::Coord:
        case SlotKind::NuCoord: {
          SuperFunction v = s.odd ? SuperFunction::odd_gen(ctx, s.index) : SuperFunction::even_var(ctx, s.index);
          c.label.set(r, col, s.kind == SlotKind::Coord ? v : v.nu());
          break;
        }
      }
    }
  return c;
}

}  // namespace

Chart build_label(const Dimensions& d, const IndexPair& index) {
  d.validate();
  return build_chart(d, index, chart_context(d));
}

std::vector<Chart> enumerate_charts(const Dimensions& d) {
  d.validate();
  const ContextPtr ctx = chart_context(d);
  std::vector<IndexPair> all;
  for (unsigned im = 0; im < (1u << d.m); ++im)
    for (unsigned rm = 0; rm < (1u << d.n); ++rm) {
      if (std::popcount(im) + std::popcount(rm) != d.k + d.l) continue;
      IndexPair ip;
      for (int i = 0; i < d.m; ++i)
        if (im >> i & 1u) ip.I.push_back(i + 1);
      for (int j = 0; j < d.n; ++j)
        if (rm >> j & 1u) ip.R.push_back(j + 1);
      all.push_back(std::move(ip));
    }
  std::sort(all.begin(), all.end());
  std::vector<Chart> out;
  for (const auto& ip : all) out.push_back(build_chart(d, ip, ctx));
  return out;
}

Atlas::Atlas(const Dimensions& d) : dims_(d), ctx_(chart_context(d)), charts_(enumerate_charts(d)) {
  for (auto& c : charts_) c.ctx = ctx_;
}

std::size_t Atlas::position(const IndexPair& idx) const {
  for (std::size_t i = 0; i < charts_.size(); ++i)
    if (charts_[i].index == idx) return i;
  throw UnknownChart("no chart " + idx.to_string() + " in " + dims_.to_string());
}

const Chart& Atlas::chart(const IndexPair& idx) const { return charts_[position(idx)]; }

std::vector<std::vector<std::string>> label_tokens(const Chart& c) {
  std::vector<std::vector<std::string>> t;
  for (const auto& row : c.layout) {
    std::vector<std::string> r;
    for (const Slot& s : row) {
      switch (s.kind) {
        case SlotKind::Zero: r.emplace_back("0"); break;
        case SlotKind::One: r.emplace_back("1"); break;
        case SlotKind::NuOne: r.emplace_back("1ν"); break;
        case SlotKind::Coord: r.push_back(s.odd ? c.odd_name(s.index) : c.even_name(s.index)); break;
        case SlotKind::NuCoord:
          r.push_back("ν(" + (s.odd ? c.odd_name(s.index) : c.even_name(s.index)) + ")");
          break;
      }
    }
    t.push_back(std::move(r));
  }
  return t;
}

std::string pretty_label(const Chart& c) {
  return format_grid(label_tokens(c), {c.dims.k, c.dims.l}, {c.dims.m, c.dims.n});
}

nlohmann::json to_json(const Chart& c) {
  return {{"index", c.index.to_string()},
          {"standard", c.standard()},
          {"alpha", c.alpha()},
          {"beta", c.beta()},
          {"even_coordinates", c.ctx->even_names},
          {"odd_coordinates", c.ctx->odd_names},
          {"label", label_tokens(c)},
          {"label_matrix", to_json(c.label)}};
}

// -------------------------------------------------------- symbolic transitions

namespace {

/// Reads coordinate values off a matrix laid out like chart c. nu_fn is
/// applied at positions that hold nu(coordinate).
template <class S>
void read_coordinates(const Chart& c, const SuperMatrix<S>& m, std::vector<S>& even, std::vector<S>& odd) {
  even.assign(static_cast<std::size_t>(c.alpha()), S{});
  odd.assign(static_cast<std::size_t>(c.beta()), S{});
  for (std::size_t r = 0; r < c.layout.size(); ++r)
    for (std::size_t col = 0; col < c.layout[r].size(); ++col) {
      const Slot& s = c.layout[r][col];
      if (s.kind != SlotKind::Coord && s.kind != SlotKind::NuCoord) continue;
      const S& v = m.plain(static_cast<int>(r), static_cast<int>(col));
      (s.odd ? odd : even)[static_cast<std::size_t>(s.index)] = s.kind == SlotKind::Coord ? v : v.nu();
    }
}

/// The square minor used to move from a matrix laid out like `src` into
/// chart `dst`: M for a standard target, M' otherwise.
template <class S>
SuperMatrix<S> transition_minor(const SuperMatrix<S>& a, const Chart& src, const Chart& dst) {
  if (!src.standard() && dst.standard() && src.index != dst.index)
    throw UncoveredCase("no formula from non-standard " + src.index.to_string() + " to standard " +
                        dst.index.to_string());
  if (dst.standard()) return minor_M(a, dst.index.I, dst.index.R);
  return minor_Mprime(a, dst.index.I, dst.index.R);
}

}  // namespace

TransitionMap transition_symbolic(const Chart& src, const Chart& dst) {
  if (!(src.dims == dst.dims)) throw UnknownChart("charts belong to different atlases");
  TransitionMap t;
  t.source = src.index;
  t.target = dst.index;
  t.ctx = src.ctx;
  t.primed = !dst.standard();
  t.minor = transition_minor(src.label, src, dst);
  SuperMatrix<SuperFunction> inv;
  try {
    inv = smat_inv(t.minor);
  } catch (const NotInvertible&) {
    throw GenericallySingular();
  }
  read_coordinates(dst, smat_mul(inv, src.label), t.even_images, t.odd_images);
  return t;
}

std::string TransitionMap::to_text() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < even_images.size(); ++i)
    os << ctx->even_names[i] << " ↦ " << even_images[i].to_string() << "\n";
  for (std::size_t i = 0; i < odd_images.size(); ++i)
    os << ctx->odd_names[i] << " ↦ " << odd_images[i].to_string() << "\n";
  return os.str();
}

nlohmann::json TransitionMap::to_json() const {
  nlohmann::json ev = nlohmann::json::object(), od = nlohmann::json::object();
  nlohmann::json evs = nlohmann::json::object(), ods = nlohmann::json::object();
  for (std::size_t i = 0; i < even_images.size(); ++i) {
    ev[ctx->even_names[i]] = nugrass::to_json(even_images[i]);
    evs[ctx->even_names[i]] = even_images[i].to_string();
  }
  for (std::size_t i = 0; i < odd_images.size(); ++i) {
    od[ctx->odd_names[i]] = nugrass::to_json(odd_images[i]);
    ods[ctx->odd_names[i]] = odd_images[i].to_string();
  }
  return {{"source", source.to_string()}, {"target", target.to_string()}, {"primed_minor", primed},
          {"images_text", {{"even", evs}, {"odd", ods}}}, {"images", {{"even", ev}, {"odd", od}}},
          {"minor", nugrass::to_json(minor)}};
}

// ------------------------------------------------------------ points

nlohmann::json GrassPoint::to_json() const {
  nlohmann::json ev = nlohmann::json::array(), od = nlohmann::json::array();
  for (const auto& g : even) ev.push_back(nugrass::to_json(g));
  for (const auto& g : odd) od.push_back(nugrass::to_json(g));
  return {{"chart", chart.to_string()}, {"r", r}, {"even", ev}, {"odd", od}};
}

GrassPoint GrassPoint::from_json(const nlohmann::json& j) {
  GrassPoint p;
  p.chart = IndexPair::parse(j.at("chart").get<std::string>());
  p.r = j.at("r").get<int>();
  for (const auto& g : j.at("even")) p.even.push_back(grassmann_from_json(g));
  for (const auto& g : j.at("odd")) p.odd.push_back(grassmann_from_json(g));
  return p;
}

std::string GrassPoint::to_string(const Chart& c) const {
  std::ostringstream os;
  os << "chart " << chart.to_string() << ":";
  for (std::size_t i = 0; i < even.size(); ++i) os << " " << c.even_name(static_cast<int>(i)) << "↦" << even[i].to_string();
  for (std::size_t i = 0; i < odd.size(); ++i) os << " " << c.odd_name(static_cast<int>(i)) << "↦" << odd[i].to_string();
  return os.str();
}

SuperMatrix<GrassmannNumber> realize(const Chart& c, const GrassPoint& x) {
  if (static_cast<int>(x.even.size()) != c.alpha() || static_cast<int>(x.odd.size()) != c.beta())
    throw DimensionMismatch("point does not match the chart's coordinate counts");
  SuperMatrix<GrassmannNumber> m(x.r, {c.dims.k, c.dims.l}, {c.dims.m, c.dims.n});
  for (std::size_t r = 0; r < c.layout.size(); ++r)
    for (std::size_t col = 0; col < c.layout[r].size(); ++col) {
      const Slot& s = c.layout[r][col];
      const int i = static_cast<int>(r), j = static_cast<int>(col);
      switch (s.kind) {
        case SlotKind::Zero: break;
        case SlotKind::One: m.set(i, j, GrassmannNumber::one(x.r)); break;
        case SlotKind::NuOne: m.set(i, j, NuSymbol{}); break;
        case SlotKind::Coord:
        case SlotKind::NuCoord: {
          const GrassmannNumber& v = (s.odd ? x.odd : x.even)[static_cast<std::size_t>(s.index)];
          m.set(i, j, s.kind == SlotKind::Coord ? v : v.nu());
          break;
        }
      }
    }
  return m;
}

GrassPoint read_point(const Chart& c, const SuperMatrix<GrassmannNumber>& m) {
  GrassPoint p;
  p.chart = c.index;
  p.r = m.context();
  read_coordinates(c, m, p.even, p.odd);
  return p;
}

GrassPoint sample_point(const Chart& c, int r, Sampler& s) {
  GrassPoint p;
  p.chart = c.index;
  p.r = r;
  for (int i = 0; i < c.alpha(); ++i) p.even.push_back(s.grassmann(r, 0));
  for (int i = 0; i < c.beta(); ++i) p.odd.push_back(s.grassmann(r, 1));
  return p;
}

GrassPoint point_transition(const Atlas& atlas, const GrassPoint& x, const IndexPair& dst_idx) {
  const Chart& src = atlas.chart(x.chart);
  const Chart& dst = atlas.chart(dst_idx);
  if (!src.standard() && dst.standard()) return newton_invert_transition(atlas, x, dst.index, src.index);
  const auto bx = realize(src, x);
  const auto z = transition_minor(bx, src, dst);
  SuperMatrix<GrassmannNumber> zinv;
  try {
    zinv = smat_inv(z);
  } catch (const NotInvertible&) {
    throw MinorNotInvertible();
  }
  return read_point(dst, smat_mul(zinv, bx));
}

// ---------------------------------------------------------- inverse transition

namespace {

int degree_without_first(OddMask m) { return std::popcount(m & ~OddMask{1}); }

}  // namespace

GrassPoint newton_invert_transition(const Atlas& atlas, const GrassPoint& target, const IndexPair& src_idx,
                                    const IndexPair& dst_idx) {
  if (target.chart != dst_idx) throw UnknownChart("target point is not in the destination chart");
  const Chart& src = atlas.chart(src_idx);
  const Chart& dst = atlas.chart(dst_idx);
  if (src_idx == dst_idx) return target;
  if (!src.standard()) throw UncoveredCase("inverse transition needs a standard unknown chart");

  const int r = target.r;
  const int k = atlas.dims().k, l = atlas.dims().l, m = atlas.dims().m;
  const int N = k + l;
  const auto w = realize(dst, target);
  const auto plan = mprime_plan(k, m, dst.index.I, dst.index.R);
  std::vector<bool> in_minor(static_cast<std::size_t>(w.cols()), false);
  for (const auto& pc : plan) in_minor[static_cast<std::size_t>(pc.source)] = true;

  // Unknowns: components of Z (the minor of the sought point) of the right parity.
  struct Unknown {
    int i, c;
    OddMask mask;
  };
  std::vector<Unknown> unknowns;
  const OddMask full = r >= 64 ? ~OddMask{0} : (OddMask{1} << r);
  for (int i = 0; i < N; ++i)
    for (int c = 0; c < N; ++c) {
      const int parity = (i >= k) != (c >= k) ? 1 : 0;
      for (OddMask mk = 0; mk < full; ++mk)
        if (std::popcount(mk) % 2 == parity) unknowns.push_back({i, c, mk});
    }

  // Equations: the source chart's identity positions of B, component by component.
  struct Equation {
    int i, col;
    OddMask mask;
    Rational rhs;
  };
  std::vector<Equation> equations;
  for (int i = 0; i < N; ++i)
    for (int col = 0; col < w.cols(); ++col) {
      const Slot& s = src.layout[i][col];
      const bool identity_col = std::any_of(src.layout.begin(), src.layout.end(), [&](const auto& row) {
        return row[col].kind == SlotKind::One || row[col].kind == SlotKind::NuOne;
      });
      if (!identity_col) continue;
      for (OddMask mk = 0; mk < full; ++mk)
        equations.push_back({i, col, mk, s.kind == SlotKind::One && mk == 0 ? Rational(1) : Rational(0)});
    }

  auto build_z = [&](const QVector& z) {
    SuperMatrix<GrassmannNumber> zm(r, {k, l}, {k, l});
    std::vector<GrassmannNumber::Algebra> acc(static_cast<std::size_t>(N * N));
    for (std::size_t u = 0; u < unknowns.size(); ++u)
      if (z[u] != 0) acc[static_cast<std::size_t>(unknowns[u].i * N + unknowns[u].c)].add_term(unknowns[u].mask, z[u]);
    for (int i = 0; i < N; ++i)
      for (int c = 0; c < N; ++c) zm.set(i, c, GrassmannNumber(r, acc[static_cast<std::size_t>(i * N + c)]));
    return zm;
  };
  auto build_b = [&](const SuperMatrix<GrassmannNumber>& zm) {
    SuperMatrix<GrassmannNumber> b(r, {k, l}, w.col_split());
    for (int c = 0; c < N; ++c) {
      const auto& pc = plan[static_cast<std::size_t>(c)];
      for (int i = 0; i < N; ++i) {
        const GrassmannNumber& v = zm.plain(i, c);
        b.set(i, pc.source, pc.moved ? v.nu() : v);
      }
    }
    for (int col = 0; col < w.cols(); ++col) {
      if (in_minor[static_cast<std::size_t>(col)]) continue;
      for (int i = 0; i < N; ++i) {
        GrassmannNumber acc = GrassmannNumber::zero(r);
        for (int c = 0; c < N; ++c) acc = acc + zm.plain(i, c) * w.plain(c, col);
        b.set(i, col, acc);
      }
    }
    return b;
  };
  auto residual = [&](const QVector& z) {
    const auto b = build_b(build_z(z));
    QVector out;
    out.reserve(equations.size());
    for (const auto& e : equations) out.push_back(b.plain(e.i, e.col).algebra().coefficient(e.mask) - e.rhs);
    return out;
  };

  // The residual is affine in z. Its constant part is -rhs; the column of an
  // unknown theta^mask at Z(i,c) is read off theta^mask (or its nu) in a minor
  // column and theta^mask * W(c, col) elsewhere.
  const std::size_t nu = unknowns.size(), ne = equations.size();
  QVector base(ne);
  for (std::size_t q = 0; q < ne; ++q) base[q] = -equations[q].rhs;
  std::vector<int> minor_slot(static_cast<std::size_t>(w.cols()), -1);
  for (int c = 0; c < N; ++c) minor_slot[static_cast<std::size_t>(plan[static_cast<std::size_t>(c)].source)] = c;
  QMatrix jac(ne, QVector(nu, Rational(0)));
  for (std::size_t u = 0; u < nu; ++u) {
    const Unknown& un = unknowns[u];
    GrassmannNumber::Algebra mono;
    mono.add_term(un.mask, Rational(1));
    const GrassmannNumber t(r, mono);
    for (std::size_t q = 0; q < ne; ++q) {
      const Equation& e = equations[q];
      if (e.i != un.i) continue;
      const int slot = minor_slot[static_cast<std::size_t>(e.col)];
      if (slot >= 0) {
        if (slot != un.c) continue;
        jac[q][u] = (plan[static_cast<std::size_t>(slot)].moved ? t.nu() : t).algebra().coefficient(e.mask);
      } else {
        jac[q][u] = (t * w.plain(un.c, e.col)).algebra().coefficient(e.mask);
      }
    }
  }

  // Body first, then one linear correction per nilpotent degree.
  QVector z(nu, Rational(0));
  for (int d = 0; d < std::max(r, 1); ++d) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t q = 0; q < ne; ++q)
      if (degree_without_first(equations[q].mask) == d) rows.push_back(q);
    for (std::size_t u = 0; u < nu; ++u)
      if (degree_without_first(unknowns[u].mask) == d) cols.push_back(u);
    if (rows.empty() && cols.empty()) continue;
    QMatrix a;
    QVector rhs;
    for (std::size_t q : rows) {
      QVector row;
      for (std::size_t u : cols) row.push_back(jac[q][u]);
      Rational v = -base[q];
      for (std::size_t u = 0; u < nu; ++u)
        if (degree_without_first(unknowns[u].mask) < d) v -= jac[q][u] * z[u];
      a.push_back(std::move(row));
      rhs.push_back(v);
    }
    const LinearSolution sol = solve_linear(a, rhs, cols.size());
    if (!sol.consistent || sol.rank < cols.size()) {
      if (d == 0) throw BodySolveFailed();
      throw SingularJacobian();
    }
    for (std::size_t t = 0; t < cols.size(); ++t) z[cols[t]] = sol.x[t];
  }
  for (const Rational& v : residual(z))
    if (v != 0) throw SingularJacobian();

  const auto zm = build_z(z);
  if (!smat_invertible(zm)) throw BodySolveFailed();
  GrassPoint q = read_point(src, build_b(zm));
  if (!(point_transition(atlas, q, dst_idx) == target)) throw AlgebraError("inverse transition failed its post-check");
  return q;
}

// ------------------------------------------------------------ cocycle checks

namespace {

bool is_structural(const std::exception_ptr& ep) {
  try {
    std::rethrow_exception(ep);
  } catch (const UncoveredCase&) {
    return true;
  } catch (const ResidualNuSymbol&) {
    return true;
  } catch (const DoubleNu&) {
    return true;
  } catch (...) {
    return false;
  }
}

/// Samples points of `start` and checks that the loop of transitions through
/// `path` (ending back at start) returns each point unchanged.
CaseResult check_loop(const Atlas& atlas, const std::string& name, const std::vector<IndexPair>& path, int r,
                      int samples, std::uint64_t seed) {
  CaseResult cr;
  cr.name = name;
  Sampler s(seed);
  const Chart& start = atlas.chart(path.front());
  const int max_draws = samples * 20 + 20;
  int draws = 0;
  // An overlap that yields nothing in the first 60 draws is treated as empty.
  while (cr.samples < samples && draws < max_draws && !(cr.samples == 0 && draws >= 60)) {
    ++draws;
    GrassPoint x = sample_point(start, r, s);
    GrassPoint y = x;
    try {
      for (std::size_t i = 1; i < path.size(); ++i) y = point_transition(atlas, y, path[i]);
      y = point_transition(atlas, y, path.front());
    } catch (const MinorNotInvertible&) {
      ++cr.skipped;
      continue;
    } catch (const BodySolveFailed&) {
      ++cr.skipped;
      continue;
    } catch (const SingularJacobian&) {
      ++cr.skipped;
      continue;
    } catch (const AlgebraError& e) {
      if (is_structural(std::current_exception())) {
        cr.status = "undefined";
        cr.note = e.what();
        cr.samples = cr.passed = cr.failed = 0;
        cr.counterexamples.clear();
        return cr;
      }
      throw;
    }
    ++cr.samples;
    if (y == x) {
      ++cr.passed;
    } else {
      ++cr.failed;
      if (cr.counterexamples.size() < 3) cr.counterexamples.push_back({{"start", x.to_json()}, {"end", y.to_json()}});
    }
  }
  if (cr.samples == 0) {
    cr.status = "undefined";
    cr.note = "no sampled point lies in the common overlap";
  } else if (cr.failed > 0) {
    cr.status = "fail";
  }
  return cr;
}

bool is_identity_map(const TransitionMap& t) {
  for (std::size_t i = 0; i < t.even_images.size(); ++i)
    if (!(t.even_images[i] == SuperFunction::even_var(t.ctx, static_cast<int>(i)))) return false;
  for (std::size_t i = 0; i < t.odd_images.size(); ++i)
    if (!(t.odd_images[i] == SuperFunction::odd_gen(t.ctx, static_cast<int>(i)))) return false;
  return true;
}

}  // namespace

Report verify_cocycle(const Dimensions& d, int r, int samples, std::uint64_t seed) {
  d.validate();
  if (r < 1) throw InvalidDimensions("cocycle sampling needs r >= 1");
  Atlas atlas(d);
  Report rep;
  rep.check_name = "verify_cocycle";
  rep.instance = d.to_json();
  rep.instance["r"] = r;
  rep.instance["seed"] = std::to_string(seed);
  rep.instance["samples_per_case"] = samples;
  const auto& charts = atlas.charts();
  const std::size_t nc = charts.size();

  int item_fail[4] = {0, 0, 0, 0}, item_undef[4] = {0, 0, 0, 0}, item_cases[4] = {0, 0, 0, 0};
  for (const auto& c : charts) {
    CaseResult cr;
    cr.name = "item1 " + c.index.to_string();
    cr.samples = 1;
    if (is_identity_map(transition_symbolic(c, c))) {
      cr.passed = 1;
    } else {
      cr.failed = 1;
      cr.status = "fail";
    }
    ++item_cases[1];
    item_fail[1] += cr.failed;
    rep.add(std::move(cr));
  }
  for (std::size_t a = 0; a < nc; ++a)
    for (std::size_t b = 0; b < nc; ++b) {
      if (a == b) continue;
      auto cr = check_loop(atlas, "item2 " + charts[a].index.to_string() + " -> " + charts[b].index.to_string(),
                           {charts[a].index, charts[b].index}, r, samples, derive_seed(seed, 2, a, b));
      ++item_cases[2];
      if (cr.status == "fail") ++item_fail[2];
      if (cr.status == "undefined") ++item_undef[2];
      rep.add(std::move(cr));
    }
  for (std::size_t a = 0; a < nc; ++a)
    for (std::size_t b = 0; b < nc; ++b)
      for (std::size_t c = 0; c < nc; ++c) {
        if (a == b || b == c || a == c) continue;
        auto cr = check_loop(atlas,
                             "item3 " + charts[a].index.to_string() + " -> " + charts[b].index.to_string() + " -> " +
                                 charts[c].index.to_string(),
                             {charts[a].index, charts[b].index, charts[c].index}, r, samples,
                             derive_seed(seed, 3, a * nc + b, c));
        ++item_cases[3];
        if (cr.status == "fail") ++item_fail[3];
        if (cr.status == "undefined") ++item_undef[3];
        rep.add(std::move(cr));
      }
  for (int item = 1; item <= 3; ++item)
    rep.extra["summary"]["item" + std::to_string(item)] = {
        {"cases", item_cases[item]}, {"failing_cases", item_fail[item]}, {"undefined_cases", item_undef[item]}};
  return rep;
}

}  // namespace nugrass
