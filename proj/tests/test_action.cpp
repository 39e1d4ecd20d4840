#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nugrass/action.hpp"

using namespace nugrass;

namespace {

const Dimensions kSmall{0, 1, 1, 2};
const Dimensions kDesk{1, 2, 2, 3};

GrassmannNumber num(int r, Rational q) { return GrassmannNumber::constant(r, q); }
GrassmannNumber th(int r, int i) { return GrassmannNumber::theta(r, i); }

GrassPoint small_point(const std::string& chart, GrassmannNumber x, GrassmannNumber e) {
  GrassPoint p;
  p.chart = IndexPair::parse(chart);
  p.r = x.context();
  p.even = {x};
  p.odd = {e};
  return p;
}

GLPoint diag_gl(int r, const std::vector<std::vector<Rational>>& rows, int m, int n) {
  GLPoint g{SuperMatrix<GrassmannNumber>(r, {m, n}, {m, n})};
  for (int i = 0; i < m + n; ++i)
    for (int j = 0; j < m + n; ++j) g.mat.set(i, j, num(r, rows[i][j]));
  return g;
}

const BasePoint kBase{{}, {{1, 0}}};

}  // namespace

TEST_CASE("identity acts trivially in the same chart") {
  Atlas at(kSmall);
  Sampler s(1);
  for (const auto& c : at.charts()) {
    auto x = sample_point(c, 2, s);
    auto y = act(at, x, GLPoint::identity(2, 1, 2));
    CHECK(y.chart == x.chart);
    CHECK(y == x);
  }
}

TEST_CASE("odd column swap and odd column scaling") {
  Atlas at(kSmall);
  auto x = small_point("∅|{1}", num(2, 2), th(2, 1));
  auto swap = diag_gl(2, {{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}, 1, 2);
  CHECK(act_to(at, x, swap, IndexPair::parse("∅|{2}")) == small_point("∅|{2}", num(2, 2), th(2, 1)));
  // act keeps X's own chart when it covers the image.
  auto y = act(at, x, swap);
  CHECK(y == small_point("∅|{1}", num(2, Rational(1, 2)), th(2, 1) * Rational(1, 2)));
  CHECK(same_point(at, y, small_point("∅|{2}", num(2, 2), th(2, 1))) == true);

  // Scaling odd column 1 by the unit lambda divides both coordinates by lambda.
  const auto lambda = num(2, 3) + th(2, 1) * th(2, 2);
  auto scale = GLPoint::identity(2, 1, 2);
  scale.mat.set(1, 1, lambda);
  CHECK(act(at, x, scale) == small_point("∅|{1}", num(2, 2) * lambda.inverse(), th(2, 1) * lambda.inverse()));
}

TEST_CASE("gl points") {
  Sampler s(9);
  for (int i = 0; i < 10; ++i) {
    auto g = sample_gl(3, 2, 3, s, i % 2 == 0);
    CHECK_NOTHROW(g.validate());
    CHECK(g * g.inverse() == GLPoint::identity(3, 2, 3));
    CHECK(GLPoint::from_json(g.to_json()) == g);
  }
  auto bad = GLPoint::identity(2, 1, 2);
  bad.mat.set(0, 0, th(2, 1) * th(2, 2));
  CHECK_THROWS_AS(bad.validate(), NotInGroup);
  bad = GLPoint::identity(2, 1, 2);
  bad.mat.set(0, 1, num(2, 1));
  CHECK_THROWS_AS(bad.validate(), NotInGroup);
  CHECK(BasePoint::from_json(kBase.to_json()).p2 == kBase.p2);
}

TEST_CASE("gluing on standard charts") {
  auto small = verify_action_gluing(kSmall, 2, 20, 3, true);
  CHECK(small.ok());
  CHECK(small.extra["summary"]["cases"] == 16);
  auto desk = verify_action_gluing(kDesk, 2, 3, 3, true);
  CHECK(desk.ok());
  CHECK(desk.extra["summary"]["undefined_cases"] == 0);
}

TEST_CASE("gluing through the non-standard chart is recorded") {
  auto rep = verify_action_gluing(kSmall, 2, 10, 3);
  CHECK(rep.extra["summary"]["cases"] == 81);
  // Every failing quadruple involves the non-standard chart.
  for (const auto& c : rep.cases)
    if (c.status == "fail") CHECK(c.name.find("{1}|∅") != std::string::npos);
}

TEST_CASE("action axioms") {
  auto rep = verify_action_axioms(kSmall, 2, 20, 5);
  for (const auto& c : rep.cases) {
    if (c.name.find("{1}|∅") != std::string::npos && c.name.rfind("unit", 0) != 0) continue;
    CHECK_MESSAGE(c.status == "pass", c.name);
  }
  auto desk = verify_action_axioms(kDesk, 2, 5, 5);
  Atlas at(kDesk);
  for (const auto& c : desk.cases) {
    const bool standard = at.chart(IndexPair::parse(c.name.substr(c.name.find(' ') + 1))).standard();
    if (standard || c.name.rfind("unit", 0) == 0) CHECK_MESSAGE(c.status == "pass", c.name);
  }
}

TEST_CASE("body of the action is the classical action") {
  Atlas at(kDesk);
  Sampler s(12);
  for (int i = 0; i < 10; ++i) {
    const auto& c = at.charts()[static_cast<std::size_t>(i % 6 == 0 ? 0 : i % 10)];
    if (!c.standard()) continue;
    auto x = sample_point(c, 2, s);
    auto p = sample_gl(2, 2, 3, s);
    GrassPoint y;
    try {
      y = act(at, x, p);
    } catch (const NoChartFound&) {
      continue;
    }
    if (!at.chart(y.chart).standard()) continue;
    // Row spaces of the even and odd body blocks of [X][P] and [Y] agree.
    auto xp = smat_mul(realize(c, x), p.mat);
    auto ym = realize(at.chart(y.chart), y);
    for (auto [r0, r1, c0, c1] : {std::array<int, 4>{0, 1, 0, 2}, std::array<int, 4>{1, 3, 2, 5}}) {
      QMatrix a, b, both;
      for (int row = r0; row < r1; ++row) {
        QVector ra, rb;
        for (int col = c0; col < c1; ++col) {
          ra.push_back(xp.plain(row, col).body());
          rb.push_back(ym.plain(row, col).body());
        }
        a.push_back(ra);
        b.push_back(rb);
        both.push_back(ra);
        both.push_back(rb);
      }
      const auto w = static_cast<std::size_t>(c1 - c0);
      CHECK(rref(both, w).rows.size() == rref(a, w).rows.size());
      CHECK(rref(a, w).rows.size() == rref(b, w).rows.size());
    }
  }
}

TEST_CASE("transitivity witness") {
  Atlas at(kSmall);
  auto base_point = point_of_matrix(at, kBase.hat(kSmall, 4));
  CHECK(transitivity_witness(at, base_point, kBase) == GLPoint::identity(4, 1, 2));

  auto w = small_point("∅|{1}", num(4, 3) + th(4, 1) * th(4, 2), th(4, 1));
  auto v = transitivity_witness(at, w, kBase);
  CHECK_NOTHROW(v.validate());
  CHECK(smat_mul(kBase.hat(kSmall, 4), v.mat) == realize(at.chart(w.chart), w));

  Sampler s(77);
  int verified = 0;
  for (int i = 0; i < 50; ++i) {
    auto wi = sample_point(at.charts()[static_cast<std::size_t>(i % 3)], 4, s);
    auto vi = transitivity_witness(at, wi, kBase);
    auto reached = point_of_matrix(at, smat_mul(kBase.hat(kSmall, 4), vi.mat), wi.chart);
    if (same_point(at, reached, wi) == true) ++verified;
  }
  CHECK(verified == 50);

  CHECK_THROWS_AS(transitivity_witness(at, w, BasePoint{{}, {{0, 0}}}), RankDeficient);
  CHECK_THROWS_AS(transitivity_witness(at, w, BasePoint{{{1}}, {{1, 0}}}), RankDeficient);
}

TEST_CASE("transitivity on the desk atlas") {
  Atlas at(kDesk);
  const BasePoint base{{{1, 1}}, {{1, 0, 2}, {0, 1, 0}}};
  Sampler s(4);
  for (const auto& c : at.charts()) {
    if (!c.standard()) continue;
    auto w = sample_point(c, 2, s);
    auto v = transitivity_witness(at, w, base);
    CHECK(smat_mul(base.hat(kDesk, 2), v.mat) == realize(c, w));
  }
}

TEST_CASE("stabilizer") {
  Atlas at(kSmall);
  CHECK(stabilizer_membership(at, GLPoint::identity(2, 1, 2), kBase));
  auto w = small_point("∅|{1}", num(2, 3) + th(2, 1) * th(2, 2), th(2, 1));
  CHECK_FALSE(stabilizer_membership(at, transitivity_witness(at, w, kBase), kBase));

  auto p = diag_gl(2, {{2, 0, 0}, {0, 3, 0}, {0, 5, 7}}, 1, 2);
  auto q = diag_gl(2, {{-1, 0, 0}, {0, 1, 0}, {0, 4, 2}}, 1, 2);
  CHECK(stabilizer_membership(at, p, kBase));
  CHECK(stabilizer_membership(at, q, kBase));
  CHECK(stabilizer_membership(at, p * q, kBase));
  CHECK(stabilizer_membership(at, p.inverse(), kBase));
  CHECK_FALSE(stabilizer_membership(at, diag_gl(2, {{1, 0, 0}, {0, 1, 1}, {0, 0, 1}}, 1, 2), kBase));
}
