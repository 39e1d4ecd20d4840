#include "nugrass/action.hpp"

#include <map>

namespace nugrass {

// ------------------------------------------------------------------ GLPoint

void GLPoint::validate() const {
  if (mat.row_split() != mat.col_split()) throw NotInGroup("GL point must be square with matching splits");
  if (mat.has_nu() || !mat.is_parity_valid()) throw NotInGroup("GL point must be an even plain supermatrix");
  if (!smat_invertible(mat)) throw NotInGroup("GL point has a singular body");
}

GLPoint GLPoint::identity(int r, int m, int n) { return {SuperMatrix<GrassmannNumber>::identity(r, {m, n})}; }

nlohmann::json GLPoint::to_json() const { return {{"r", r()}, {"matrix", nugrass::to_json(mat)}}; }

GLPoint GLPoint::from_json(const nlohmann::json& j) {
  GLPoint g{supermatrix_from_json<GrassmannNumber>(j.at("matrix"), j.at("r").get<int>(),
                                                   [](const nlohmann::json& e) { return grassmann_from_json(e); })};
  g.validate();
  return g;
}

GLPoint sample_gl(int r, int m, int n, Sampler& s, bool unit_triangular) {
  const int size = m + n;
  for (;;) {
    GLPoint g{SuperMatrix<GrassmannNumber>(r, {m, n}, {m, n})};
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) {
        const bool odd = (i >= m) != (j >= m);
        GrassmannNumber v = s.grassmann(r, odd ? 1 : 0);
        if (unit_triangular && !odd) {
          const Rational body = i == j ? Rational(1) : (i < j ? v.body() : Rational(0));
          v = GrassmannNumber::constant(r, body) + v.soul();
        }
        g.mat.set(i, j, v);
      }
    if (smat_invertible(g.mat)) return g;
  }
}

// --------------------------------------------------------------- base point

SuperMatrix<GrassmannNumber> BasePoint::hat(const Dimensions& d, int r) const {
  const int k = d.k, l = d.l, m = d.m, n = d.n;
  if (p1.size() != static_cast<std::size_t>(k) || p2.size() != static_cast<std::size_t>(l))
    throw DimensionMismatch("base point does not match the dimensions");
  SuperMatrix<GrassmannNumber> h(r, {k, l}, {m, n});
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < m; ++j) h.set(i, j, GrassmannNumber::constant(r, p1[i][j]));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < n; ++j) h.set(k + i, m + j, GrassmannNumber::constant(r, p2[i][j]));
  return h;
}

namespace {

nlohmann::json qmatrix_json(const QMatrix& a) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : a) {
    nlohmann::json jr = nlohmann::json::array();
    for (const auto& q : row) jr.push_back(q.get_str());
    out.push_back(jr);
  }
  return out;
}

QMatrix qmatrix_from_json(const nlohmann::json& j) {
  QMatrix a;
  for (const auto& row : j) {
    QVector r;
    for (const auto& v : row) r.push_back(parse_rational(v.get<std::string>()));
    a.push_back(std::move(r));
  }
  return a;
}

}  // namespace

nlohmann::json BasePoint::to_json() const { return {{"p1", qmatrix_json(p1)}, {"p2", qmatrix_json(p2)}}; }

BasePoint BasePoint::from_json(const nlohmann::json& j) {
  return {qmatrix_from_json(j.at("p1")), qmatrix_from_json(j.at("p2"))};
}

// ------------------------------------------------------------------- action

GrassPoint act_to(const Atlas& atlas, const GrassPoint& x, const GLPoint& p, const IndexPair& dst_idx) {
  const Chart& src = atlas.chart(x.chart);
  const Chart& dst = atlas.chart(dst_idx);
  if (p.mat.row_split() != std::array<int, 2>{atlas.dims().m, atlas.dims().n})
    throw DimensionMismatch("GL point does not match the atlas");
  const auto xp = smat_mul(realize(src, x), p.mat);
  const auto z = minor_Mprime(xp, dst.index.I, dst.index.R);
  if (!smat_invertible(z)) throw MinorNotInvertible();
  return read_point(dst, smat_mul(smat_inv(z), xp));
}

GrassPoint point_of_matrix(const Atlas& atlas, const SuperMatrix<GrassmannNumber>& mat,
                           const std::optional<IndexPair>& prefer) {
  auto try_chart = [&](const Chart& c) -> std::optional<GrassPoint> {
    const auto z = minor_Mprime(mat, c.index.I, c.index.R);
    if (!smat_invertible(z)) return std::nullopt;
    return read_point(c, smat_mul(smat_inv(z), mat));
  };
  if (prefer)
    if (auto q = try_chart(atlas.chart(*prefer))) return *q;
  for (bool standard : {true, false})
    for (const Chart& c : atlas.charts())
      if (c.standard() == standard)
        if (auto q = try_chart(c)) return *q;
  throw NoChartFound();
}

GrassPoint act(const Atlas& atlas, const GrassPoint& x, const GLPoint& p) {
  const Chart& src = atlas.chart(x.chart);
  return point_of_matrix(atlas, smat_mul(realize(src, x), p.mat), x.chart);
}

namespace {

// Leg failures that only mean "outside the domain of this composite".
template <class F>
auto defined(F&& f) -> std::optional<decltype(f())> {
  try {
    return f();
  } catch (const MinorNotInvertible&) {
  } catch (const BodySolveFailed&) {
  } catch (const SingularJacobian&) {
  } catch (const UncoveredCase&) {
  } catch (const ResidualNuSymbol&) {
  }
  return std::nullopt;
}

}  // namespace

std::optional<bool> same_point(const Atlas& atlas, const GrassPoint& a, const GrassPoint& b) {
  if (a.chart == b.chart) return a == b;
  if (auto b2 = defined([&] { return point_transition(atlas, b, a.chart); })) return *b2 == a;
  if (auto a2 = defined([&] { return point_transition(atlas, a, b.chart); })) return *a2 == b;
  return std::nullopt;
}

// ------------------------------------------------------------ gluing check

Report verify_action_gluing(const Dimensions& d, int r, int samples, std::uint64_t seed, bool standard_only) {
  d.validate();
  if (r < 1) throw InvalidDimensions("action sampling needs r >= 1");
  Atlas atlas(d);
  std::vector<IndexPair> idx;
  for (const auto& c : atlas.charts())
    if (!standard_only || c.standard()) idx.push_back(c.index);
  const std::size_t nc = idx.size();

  Report rep;
  rep.check_name = "verify_action_gluing";
  rep.instance = d.to_json();
  rep.instance["r"] = r;
  rep.instance["seed"] = std::to_string(seed);
  rep.instance["samples_per_case"] = samples;
  rep.instance["charts"] = standard_only ? "standard" : "all";

  int failing = 0, undefined = 0, total = 0;
  for (std::size_t i = 0; i < nc; ++i) {
    // cases[(j * nc + kk) * nc + h]: X in I, act into J then move to H, versus
    // move to K then act into H.
    std::vector<CaseResult> cases(nc * nc * nc);
    for (std::size_t j = 0; j < nc; ++j)
      for (std::size_t kk = 0; kk < nc; ++kk)
        for (std::size_t h = 0; h < nc; ++h)
          cases[(j * nc + kk) * nc + h].name = "X in " + idx[i].to_string() + ": act->" + idx[j].to_string() +
                                               " then ->" + idx[h].to_string() + " vs ->" + idx[kk].to_string() +
                                               " then act->" + idx[h].to_string();
    Sampler s(derive_seed(seed, 17, i));
    const int max_draws = 4 * samples + 60;
    for (int draw = 0; draw < max_draws; ++draw) {
      bool any = false, short_of_target = false;
      for (const auto& c : cases) {
        any = any || c.samples > 0;
        short_of_target = short_of_target || (c.samples > 0 && c.samples < samples);
      }
      if (draw >= samples && !short_of_target) break;
      if (draw >= 60 && !any) break;

      const GrassPoint x = sample_point(atlas.chart(idx[i]), r, s);
      const GLPoint p = sample_gl(r, d.m, d.n, s);
      std::vector<std::optional<GrassPoint>> acted(nc), moved(nc);
      for (std::size_t j = 0; j < nc; ++j) {
        acted[j] = defined([&] { return act_to(atlas, x, p, idx[j]); });
        moved[j] = defined([&] { return point_transition(atlas, x, idx[j]); });
      }
      std::vector<std::optional<GrassPoint>> left(nc * nc), right(nc * nc);
      for (std::size_t a = 0; a < nc; ++a)
        for (std::size_t h = 0; h < nc; ++h) {
          if (acted[a]) left[a * nc + h] = defined([&] { return point_transition(atlas, *acted[a], idx[h]); });
          if (moved[a]) right[a * nc + h] = defined([&] { return act_to(atlas, *moved[a], p, idx[h]); });
        }
      for (std::size_t j = 0; j < nc; ++j)
        for (std::size_t kk = 0; kk < nc; ++kk)
          for (std::size_t h = 0; h < nc; ++h) {
            auto& cr = cases[(j * nc + kk) * nc + h];
            const auto& lv = left[j * nc + h];
            const auto& rv = right[kk * nc + h];
            if (!lv || !rv) {
              ++cr.skipped;
              continue;
            }
            if (cr.samples >= samples) continue;
            ++cr.samples;
            if (*lv == *rv) {
              ++cr.passed;
            } else {
              ++cr.failed;
              if (cr.counterexamples.size() < 2)
                cr.counterexamples.push_back(
                    {{"x", x.to_json()}, {"p", p.to_json()}, {"left", lv->to_json()}, {"right", rv->to_json()}});
            }
          }
    }
    for (auto& cr : cases) {
      ++total;
      if (cr.samples == 0) {
        cr.status = "undefined";
        cr.note = "no sampled (X, P) has all four legs defined";
        ++undefined;
      } else if (cr.failed > 0) {
        cr.status = "fail";
        ++failing;
      }
      rep.add(std::move(cr));
    }
  }
  rep.extra["summary"] = {{"cases", total}, {"failing_cases", failing}, {"undefined_cases", undefined}};
  return rep;
}

// ------------------------------------------------------------ action axioms

Report verify_action_axioms(const Dimensions& d, int r, int samples, std::uint64_t seed) {
  d.validate();
  if (r < 1) throw InvalidDimensions("action sampling needs r >= 1");
  Atlas atlas(d);
  Report rep;
  rep.check_name = "verify_action_axioms";
  rep.instance = d.to_json();
  rep.instance["r"] = r;
  rep.instance["seed"] = std::to_string(seed);
  rep.instance["samples_per_case"] = samples;

  const GLPoint id = GLPoint::identity(r, d.m, d.n);
  std::map<std::string, std::array<int, 2>> law_totals;  // failing, undefined
  for (std::size_t c = 0; c < atlas.charts().size(); ++c) {
    const Chart& chart = atlas.charts()[c];
    CaseResult unit, assoc, inv;
    unit.name = "unit " + chart.index.to_string();
    assoc.name = "associativity " + chart.index.to_string();
    inv.name = "inverse " + chart.index.to_string();
    Sampler s(derive_seed(seed, 23, c));
    auto record = [&](CaseResult& cr, const std::optional<bool>& ok, const GrassPoint& x) {
      if (!ok) {
        ++cr.skipped;
        return;
      }
      ++cr.samples;
      if (*ok) {
        ++cr.passed;
      } else {
        ++cr.failed;
        if (cr.counterexamples.size() < 2) cr.counterexamples.push_back({{"x", x.to_json()}});
      }
    };
    auto compare = [&](auto&& lhs, auto&& rhs) -> std::optional<bool> {
      auto a = defined(lhs);
      auto b = a ? defined(rhs) : std::nullopt;
      if (!a || !b) return std::nullopt;
      return same_point(atlas, *a, *b);
    };
    for (int draw = 0; draw < 4 * samples + 60; ++draw) {
      if (unit.samples >= samples && assoc.samples >= samples && inv.samples >= samples) break;
      if (draw >= 60 && unit.samples + assoc.samples + inv.samples == 0) break;
      const GrassPoint x = sample_point(chart, r, s);
      const GLPoint p1 = sample_gl(r, d.m, d.n, s), p2 = sample_gl(r, d.m, d.n, s);
      if (unit.samples < samples)
        record(unit, compare([&] { return act(atlas, x, id); }, [&] { return x; }), x);
      if (assoc.samples < samples)
        record(assoc,
               compare([&] { return act(atlas, act(atlas, x, p1), p2); }, [&] { return act(atlas, x, p1 * p2); }), x);
      if (inv.samples < samples)
        record(inv, compare([&] { return act(atlas, act(atlas, x, p1), p1.inverse()); }, [&] { return x; }), x);
    }
    for (CaseResult* cr : {&unit, &assoc, &inv}) {
      const std::string law = cr->name.substr(0, cr->name.find(' '));
      auto& tot = law_totals[law];
      if (cr->samples == 0) {
        cr->status = "undefined";
        cr->note = "no sample had both sides defined and comparable";
        ++tot[1];
      } else if (cr->failed > 0) {
        cr->status = "fail";
        ++tot[0];
      }
      rep.add(std::move(*cr));
    }
  }
  for (const auto& [law, t] : law_totals) rep.extra["summary"][law] = {{"failing_cases", t[0]}, {"undefined_cases", t[1]}};
  return rep;
}

// ------------------------------------------------------------- transitivity

namespace {

std::size_t rank_of(const QMatrix& a, std::size_t ncols) { return rref(a, ncols).rows.size(); }

/// Appends standard basis rows to `rows` (greedy by rank) until it is square
/// and invertible; returns the indices of the appended basis vectors.
std::vector<int> completion(QMatrix rows, std::size_t n) {
  std::vector<int> added;
  std::size_t rk = rank_of(rows, n);
  for (std::size_t j = 0; j < n && rows.size() < n; ++j) {
    QVector e(n, Rational(0));
    e[j] = 1;
    rows.push_back(e);
    const std::size_t next = rank_of(rows, n);
    if (next > rk) {
      rk = next;
      added.push_back(static_cast<int>(j));
    } else {
      rows.pop_back();
    }
  }
  return added;
}

QMatrix q_inverse(const QMatrix& a) {
  const std::size_t n = a.size();
  QMatrix aug = a;
  for (std::size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n, Rational(0));
    aug[i][n + i] = 1;
  }
  Rref red = rref(aug, 2 * n);
  QMatrix inv(n, QVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = red.rows[i][n + j];
  return inv;
}

using GMatrix = std::vector<std::vector<GrassmannNumber>>;

GMatrix block(const SuperMatrix<GrassmannNumber>& w, int r0, int r1, int c0, int c1) {
  GMatrix out;
  for (int i = r0; i < r1; ++i) {
    std::vector<GrassmannNumber> row;
    for (int j = c0; j < c1; ++j) row.push_back(w.plain(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

/// Solves pbar * X = target for X (size x cols) via the completion device:
/// the target is padded with basis rows (even case) or zero rows (odd case).
GMatrix complete_and_solve(const QMatrix& pbar, const GMatrix& target, std::size_t size, std::size_t cols, int r,
                           bool pad_with_basis) {
  QMatrix pt = pbar;
  for (int j : completion(pbar, size)) {
    QVector e(size, Rational(0));
    e[static_cast<std::size_t>(j)] = 1;
    pt.push_back(e);
  }
  GMatrix tt = target;
  if (pad_with_basis) {
    QMatrix body;
    for (const auto& row : target) {
      QVector b;
      for (const auto& g : row) b.push_back(g.body());
      body.push_back(std::move(b));
    }
    if (rank_of(body, cols) < target.size()) throw RankDeficient("target block has deficient body rank");
    for (int j : completion(body, cols)) {
      std::vector<GrassmannNumber> row(cols, GrassmannNumber::zero(r));
      row[static_cast<std::size_t>(j)] = GrassmannNumber::one(r);
      tt.push_back(std::move(row));
    }
  } else {
    while (tt.size() < size) tt.emplace_back(cols, GrassmannNumber::zero(r));
  }
  const QMatrix pinv = q_inverse(pt);
  GMatrix out(size, std::vector<GrassmannNumber>(cols, GrassmannNumber::zero(r)));
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t t = 0; t < size; ++t)
        if (pinv[i][t] != 0) out[i][j] = out[i][j] + tt[t][j] * pinv[i][t];
  return out;
}

}  // namespace

GLPoint transitivity_witness(const Atlas& atlas, const GrassPoint& w, const BasePoint& p) {
  const Dimensions& d = atlas.dims();
  const auto k = static_cast<std::size_t>(d.k), l = static_cast<std::size_t>(d.l);
  const auto m = static_cast<std::size_t>(d.m), n = static_cast<std::size_t>(d.n);
  if (p.p1.size() != k || p.p2.size() != l) throw RankDeficient("base point has the wrong number of rows");
  for (const auto& row : p.p1)
    if (row.size() != m) throw DimensionMismatch("p1 must be k x m");
  for (const auto& row : p.p2)
    if (row.size() != n) throw DimensionMismatch("p2 must be l x n");
  if (rank_of(p.p1, m) != k || rank_of(p.p2, n) != l) throw RankDeficient("base point blocks must have full row rank");

  GrassPoint ws = w;
  if (!atlas.chart(w.chart).standard()) {
    bool moved = false;
    for (const Chart& c : atlas.charts()) {
      if (!c.standard()) continue;
      if (auto q = defined([&] { return point_transition(atlas, w, c.index); })) {
        ws = *q;
        moved = true;
        break;
      }
    }
    if (!moved) throw NoChartFound();
  }
  const int r = ws.r;
  const auto wm = realize(atlas.chart(ws.chart), ws);
  const int K = d.k, M = d.m;
  const GMatrix A = block(wm, 0, K, 0, M), B = block(wm, 0, K, M, wm.cols());
  const GMatrix C = block(wm, K, wm.rows(), 0, M), D = block(wm, K, wm.rows(), M, wm.cols());

  const GMatrix H = complete_and_solve(p.p1, A, m, m, r, true);
  const GMatrix Mx = complete_and_solve(p.p1, B, m, n, r, false);
  const GMatrix N = complete_and_solve(p.p2, C, n, m, r, false);
  const GMatrix Q = complete_and_solve(p.p2, D, n, n, r, true);

  GLPoint v{SuperMatrix<GrassmannNumber>(r, {d.m, d.n}, {d.m, d.n})};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) v.mat.set(static_cast<int>(i), static_cast<int>(j), H[i][j]);
    for (std::size_t j = 0; j < n; ++j) v.mat.set(static_cast<int>(i), static_cast<int>(m + j), Mx[i][j]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) v.mat.set(static_cast<int>(m + i), static_cast<int>(j), N[i][j]);
    for (std::size_t j = 0; j < n; ++j) v.mat.set(static_cast<int>(m + i), static_cast<int>(m + j), Q[i][j]);
  }
  v.validate();

  const auto image = smat_mul(p.hat(d, r), v.mat);
  if (!(image == wm)) throw AlgebraError("transitivity witness failed its post-check");
  if (!(ws == w)) {
    auto back = same_point(atlas, point_of_matrix(atlas, image, w.chart), w);
    if (!back || !*back) throw AlgebraError("transitivity witness does not reach W in its own chart");
  }
  return v;
}

bool stabilizer_membership(const Atlas& atlas, const GLPoint& p, const BasePoint& base) {
  const GrassPoint x0 = point_of_matrix(atlas, base.hat(atlas.dims(), p.r()));
  auto y = defined([&] { return act_to(atlas, x0, p, x0.chart); });
  return y && *y == x0;
}

}  // namespace nugrass
