#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nugrass/nulie.hpp"

using namespace nugrass;

namespace {

const Dimensions kSmall{0, 1, 1, 2};
const Dimensions kTwoTwo{1, 1, 2, 2};

GlElement E(int m, int n, int u, int v) { return GlElement::basis(m, n, u - 1, v - 1); }

ChartVectorField field(const Atlas& at, const std::string& chart, const SuperFunction& ex, const SuperFunction& ee) {
  const Chart& c = at.chart(IndexPair::parse(chart));
  return {c.index, c.ctx, 0, {ex}, {ee}};
}

bool all_zero(const std::vector<SuperFunction>& v) {
  for (const auto& e : v)
    if (!e.is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("fields of the diagonal elements") {
  Atlas at(kSmall);
  const Chart& c = at.chart(IndexPair::parse("∅|{1}"));
  CHECK(fundamental_field(c, E(1, 2, 1, 1)).to_string() == "e ∂_e");
  CHECK(fundamental_field(c, E(1, 2, 2, 2)).to_string() == "-x ∂_x + -e ∂_e");
  CHECK(fundamental_field(c, E(1, 2, 3, 3)).to_string() == "x ∂_x");
  CHECK(fundamental_field(c, E(1, 2, 2, 3)).to_string() == "1 ∂_x");
  CHECK(fundamental_field(c, GlElement::zero(1, 2)).is_zero());
  // The identity acts trivially.
  const GlElement id = E(1, 2, 1, 1) + E(1, 2, 2, 2) + E(1, 2, 3, 3);
  for (const auto& ch : at.charts()) CHECK(fundamental_field(ch, id).is_zero());
}

TEST_CASE("fundamental field is linear") {
  Atlas at(kTwoTwo);
  for (const auto& c : at.charts())
    for (int p : {0, 1}) {
      const auto basis = gl_basis(2, 2, p);
      for (std::size_t i = 0; i + 1 < basis.size(); ++i) {
        const auto a = basis[i], b = basis[i + 1];
        const auto lhs = fundamental_field(c, a * Rational(3) + b * Rational(-1, 2));
        const auto fa = fundamental_field(c, a), fb = fundamental_field(c, b);
        for (std::size_t k = 0; k < lhs.even.size(); ++k)
          CHECK(lhs.even[k] == fa.even[k] * Rational(3) + fb.even[k] * Rational(-1, 2));
        for (std::size_t k = 0; k < lhs.odd.size(); ++k)
          CHECK(lhs.odd[k] == fa.odd[k] * Rational(3) + fb.odd[k] * Rational(-1, 2));
      }
    }
  CHECK_THROWS_AS(fundamental_field(at.charts()[0], E(2, 2, 1, 1) + E(2, 2, 1, 3)), Inhomogeneous);
  CHECK_THROWS_AS(fundamental_field(at.charts()[0], E(1, 2, 1, 1)), DimensionMismatch);
}

TEST_CASE("regression pair on a chart with one odd coordinate") {
  Atlas at(kSmall);
  const auto& ctx = at.chart(IndexPair::parse("∅|{1}")).ctx;
  const auto x = SuperFunction::var(ctx, "x"), e = SuperFunction::var(ctx, "e");
  const auto zero = SuperFunction::zero(ctx);

  const auto xdx = field(at, "∅|{1}", x, zero);
  CHECK(all_zero(nu_defect(xdx)));

  const auto ede = field(at, "∅|{1}", zero, e);
  const auto d = nu_defect(ede);
  REQUIRE(d.size() == 2);
  CHECK_FALSE(all_zero(d));
  // On f·1: e∂_e(f e) - ν(e∂_e f) = f e.
  const auto ext = d[0].context();
  CHECK(d[0] == SuperFunction::var(ext, "f") * SuperFunction::var(ext, "e"));
}

TEST_CASE("apply_field") {
  Atlas at(kSmall);
  const auto& ctx = at.chart(IndexPair::parse("∅|{1}")).ctx;
  const auto x = SuperFunction::var(ctx, "x"), e = SuperFunction::var(ctx, "e");
  const auto one = SuperFunction::one(ctx);
  const auto xdx = field(at, "∅|{1}", x, SuperFunction::zero(ctx));
  CHECK(apply_field(xdx, x * x * e) == x * x * e * Rational(2));
  const auto de = field(at, "∅|{1}", SuperFunction::zero(ctx), one);
  CHECK(apply_field(de, x * e) == x);
}

TEST_CASE("superbracket") {
  CHECK(superbracket(E(1, 2, 1, 1), E(1, 2, 1, 1)).is_zero());
  CHECK(superbracket(E(1, 2, 2, 3), E(1, 2, 3, 2)) == E(1, 2, 2, 2) + E(1, 2, 3, 3) * Rational(-1));
  // Odd elements anticommute into the bracket.
  CHECK(superbracket(E(1, 2, 1, 2), E(1, 2, 2, 1)) == E(1, 2, 1, 1) + E(1, 2, 2, 2));
  CHECK(superbracket(E(1, 2, 1, 2), E(1, 2, 1, 2)).is_zero());
  CHECK(superbracket(E(2, 2, 1, 3), E(2, 2, 3, 1)) == E(2, 2, 1, 1) + E(2, 2, 3, 3));

  // Super Jacobi over all basis triples of gl(1|1).
  std::vector<GlElement> all = gl_basis(1, 1, 0);
  for (const auto& y : gl_basis(1, 1, 1)) all.push_back(y);
  for (const auto& a : all)
    for (const auto& b : all)
      for (const auto& c : all) {
        const Rational s = a.parity() * b.parity() ? -1 : 1;
        CHECK(superbracket(a, superbracket(b, c)) ==
              superbracket(superbracket(a, b), c) + superbracket(b, superbracket(a, c)) * s);
      }
}

TEST_CASE("field bracket of diagonal fields") {
  Atlas at(kSmall);
  const Chart& c = at.chart(IndexPair::parse("∅|{1}"));
  const auto a = fundamental_field(c, E(1, 2, 2, 3));
  const auto b = fundamental_field(c, E(1, 2, 3, 2));
  const auto h = fundamental_field(c, superbracket(E(1, 2, 2, 3), E(1, 2, 3, 2)));
  CHECK(field_bracket(a, b) == h);
  CHECK(field_bracket(a, a).is_zero());
}

TEST_CASE("rho morphism sign") {
  auto rep = verify_rho_morphism(kSmall);
  CHECK(rep.extra["pairs"] == 81);
  CHECK(rep.extra["chart_signs"]["∅|{1}"] == 1);
  CHECK(rep.extra["chart_signs"]["∅|{2}"] == 1);
  // The chart with 1ν in its label does not satisfy the relation.
  CHECK(rep.extra["chart_signs"]["{1}|∅"].is_null());
  CHECK(rep.extra["sign_s"].is_null());

  auto two = verify_rho_morphism(kTwoTwo);
  Atlas at(kTwoTwo);
  for (const auto& c : at.charts())
    if (c.standard()) CHECK(two.extra["chart_signs"][c.index.to_string()] == 1);
}

TEST_CASE("h on the small atlas") {
  const HResult h = compute_h(kSmall);
  REQUIRE(h.even.size() == 1);
  CHECK(h.odd.empty());
  CHECK(in_span(h.even, E(1, 2, 1, 1) + E(1, 2, 2, 2) + E(1, 2, 3, 3)));
  CHECK_FALSE(in_span(h.even, E(1, 2, 3, 3)));

  auto rep = h_report(kSmall);
  CHECK(rep.extra["dim_even"] == 1);
  CHECK(rep.extra["defect_residual"] == "0");
  for (const auto& c : rep.cases)
    if (c.name != "rho is a morphism up to one global sign") CHECK_MESSAGE(c.status == "pass", c.name);
}

TEST_CASE("gl element serialization") {
  const GlElement y = E(1, 2, 1, 1) + E(1, 2, 2, 3) * Rational(-2, 3);
  CHECK(y.to_string() == "E11 - 2/3 E23");
  CHECK(GlElement::from_json(y.to_json()) == y);
  CHECK(GlElement::zero(1, 2).to_string() == "0");
  CHECK(gl_basis(1, 2, 0).size() == 5);
  CHECK(gl_basis(1, 2, 1).size() == 4);
}
