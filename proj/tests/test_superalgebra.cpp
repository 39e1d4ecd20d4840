#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nugrass/superalgebra.hpp"

using namespace nugrass;

namespace {

ContextPtr xy_e12() { return make_context({"x", "y"}, {"e1", "e2"}); }

SuperFunction V(const ContextPtr& c, const std::string& n) { return SuperFunction::var(c, n); }

int sign_of(int pa, int pb) { return (pa * pb) % 2 ? -1 : 1; }

}  // namespace

TEST_CASE("super_mul: anticommuting generators") {
  auto c = xy_e12();
  auto e1 = V(c, "e1"), e2 = V(c, "e2"), x = V(c, "x"), y = V(c, "y");
  CHECK((e2 * e1) == -(e1 * e2));
  CHECK((e1 * e1).is_zero());
  CHECK(((x + e1 * e2) * (y + e1 * e2)) == (x * y + (x + y) * e1 * e2));
  CHECK_THROWS_AS(e1 * SuperFunction::var(make_context({"x"}, {"e"}), "e"), ContextMismatch);
}

TEST_CASE("super_inv") {
  auto c = xy_e12();
  auto e1 = V(c, "e1"), e2 = V(c, "e2"), x = V(c, "x");
  CHECK(x.inverse().to_string() == "1/x");
  auto one = SuperFunction::one(c);
  CHECK((one + e1 * e2).inverse() == one - e1 * e2);
  CHECK_THROWS_AS(e1.inverse(), ZeroBody);
}

TEST_CASE("nu toggles the first generator") {
  auto c1 = make_context({"x"}, {"e"});
  auto one = SuperFunction::one(c1);
  auto e = V(c1, "e");
  CHECK(one.nu() == e);
  CHECK(e.nu() == one);

  auto c = xy_e12();
  auto e1 = V(c, "e1"), e2 = V(c, "e2"), x = V(c, "x");
  CHECK((x * e2).nu() == x * e1 * e2);
  CHECK((e1 * e2).nu() == e2);
  CHECK((x * e2).nu().nu() == x * e2);
  CHECK_THROWS_AS(SuperFunction::one(make_context({"x"}, {})).nu(), NoOddGenerators);
}

TEST_CASE("partial derivatives") {
  auto c = xy_e12();
  auto e1 = V(c, "e1"), e2 = V(c, "e2"), x = V(c, "x");
  CHECK((x * x * e1).partial("x") == Rational(2) * x * e1);
  CHECK((e1 * e2).partial("e1") == e2);
  CHECK((e1 * e2).partial("e2") == -e1);
  CHECK_THROWS_AS(x.partial("w"), UnknownVariable);
}

TEST_CASE("auxiliary nilpotents") {
  auto c = adjoin_nilpotent(xy_e12(), {"t1", "t2"});
  auto t1 = V(c, "t1"), t2 = V(c, "t2");
  CHECK((t1 * t1).is_zero());
  auto eps = t1 * t2;
  CHECK(eps.parity() == 0);
  CHECK((eps * eps).is_zero());
  Sampler s(5);
  for (int i = 0; i < 20; ++i) {
    // a, b free of t1: restrict random samples to monomials without t1.
    auto a = s.super_function(c, -1);
    auto b = s.super_function(c, -1);
    auto strip = [&](const SuperFunction& f) { return SuperFunction(c, f.algebra().restricted(~OddMask{1 << 2})); };
    a = strip(a);
    b = strip(b);
    CHECK((a + t1 * b).coefficient_of("t1") == b);
  }
  CHECK_THROWS_AS(adjoin_nilpotent(c, {"e1"}), NameClash);
}

TEST_CASE("lambda_sample") {
  auto g = lambda_sample(2, 0, 42);
  CHECK(g == lambda_sample(2, 0, 42));
  CHECK(g.parity() == 0);
  CHECK_FALSE(g.body_is_zero());
  auto o = lambda_sample(2, 1, 43);
  CHECK(o.parity() == 1);
  for (const auto& [m, q] : o.algebra().terms()) CHECK(mask_degree(m) == 1);
  auto z = lambda_sample(0, 0, 1);
  CHECK(z.algebra().terms().size() == 1);
  CHECK_FALSE(z.body_is_zero());
}

TEST_CASE("properties on random samples") {
  auto c = xy_e12();
  Sampler s(2024);
  for (int i = 0; i < 60; ++i) {
    int pa = static_cast<int>(s.small_int(0, 1)), pb = static_cast<int>(s.small_int(0, 1));
    auto a = s.super_function(c, pa);
    auto b = s.super_function(c, pb);
    CHECK((a * b) == Rational(sign_of(pa, pb)) * (b * a));
    auto inv_src = s.super_function(c, -1, true);
    CHECK((inv_src * inv_src.inverse()) == SuperFunction::one(c));
    auto m = s.super_function(c, -1);
    CHECK(m.nu().nu() == m);
    CHECK(a.nu().parity() == (a.is_zero() ? 0 : 1 - pa));
    auto coeff = SuperFunction::coefficient(c, s.rational_function(2, true));
    CHECK((coeff * m).nu() == coeff * m.nu());
    for (const char* v : {"x", "e2"}) {
      int pv = std::string(v)[0] == 'e' ? 1 : 0;
      auto lhs = (a * b).partial(v);
      auto rhs = a.partial(v) * b + Rational(sign_of(pv, pa)) * (a * b.partial(v));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("grassmann numbers: inverse and nilpotent soul") {
  Sampler s(7);
  for (int r : {1, 2, 3, 4}) {
    for (int i = 0; i < 20; ++i) {
      auto g = s.grassmann(r, 0) + s.grassmann(r, 1);
      CHECK((g * g.inverse()) == GrassmannNumber::one(r));
      CHECK((g.inverse() * g) == GrassmannNumber::one(r));
      auto soul = g.soul();
      auto p = GrassmannNumber::one(r);
      for (int k = 0; k <= r; ++k) p = p * soul;
      CHECK(p.is_zero());
    }
  }
  CHECK_THROWS_AS(GrassmannNumber::theta(2, 1).inverse(), ZeroBody);
  CHECK_THROWS_AS(GrassmannNumber::one(0).nu(), NoOddGenerators);
}

TEST_CASE("evaluation at Grassmann values") {
  auto c = make_context({"x"}, {"e"});
  auto f = V(c, "e") * V(c, "x").inverse();  // e/x
  CHECK(f.to_string() == "e/x");
  std::vector<GrassmannNumber> ev{GrassmannNumber::constant(2, 2)};
  std::vector<GrassmannNumber> ov{GrassmannNumber::theta(2, 1)};
  CHECK(evaluate(f, ev, ov, 2) == GrassmannNumber::theta(2, 1) * Rational(1, 2));
}

TEST_CASE("serialization round-trips exactly") {
  Sampler s(99);
  auto c = adjoin_even(xy_e12(), {"f"});
  for (int i = 0; i < 25; ++i) {
    auto f = s.super_function(c, -1);
    auto back = super_function_from_json(to_json(f));
    CHECK(back == f);
    CHECK(to_json(back).dump() == to_json(f).dump());
    auto g = s.grassmann(3, i % 2);
    CHECK(grassmann_from_json(to_json(g)) == g);
  }
  auto g = GrassmannNumber::constant(2, Rational(3)) + GrassmannNumber::theta(2, 1) * GrassmannNumber::theta(2, 2) * Rational(2);
  CHECK(to_json(g).dump() == R"({"r":2,"terms":{"":"3","1,2":"2"}})");
}
