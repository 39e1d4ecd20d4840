#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nugrass/rational_function.hpp"

using namespace nugrass;

namespace {

const std::vector<std::string> kNames{"x", "y", "z"};

Polynomial P(const std::string& s) { return parse_polynomial(s, kNames); }

Polynomial random_poly(std::mt19937_64& rng, int terms) {
  std::uniform_int_distribution<int> coef(-3, 3), ex(0, 2);
  Polynomial p;
  for (int i = 0; i < terms; ++i)
    p += Polynomial::monomial({unsigned(ex(rng)), unsigned(ex(rng)), unsigned(ex(rng))}, Rational(coef(rng)));
  return p;
}

}  // namespace

TEST_CASE("polynomial arithmetic and printing") {
  Polynomial p = P("(x + y)^2");
  CHECK(p == P("x^2 + 2*x*y + y^2"));
  CHECK(p.to_string(kNames) == "x^2 + 2*x*y + y^2");
  CHECK(P("3/2*x - 1").to_string(kNames) == "3/2*x - 1");
  CHECK(P("x*y - y*x").is_zero());
  CHECK(P("x^3").derivative(0) == P("3*x^2"));
  CHECK(P("x^3").derivative(1).is_zero());
}

TEST_CASE("exact division") {
  CHECK(exact_divide(P("x^2 - y^2"), P("x - y")) == P("x + y"));
  CHECK_THROWS_AS(exact_divide(P("x^2 + 1"), P("x - 1")), AlgebraError);
}

TEST_CASE("gcd of hand-built products") {
  Polynomial common = P("(x + y)*(x + 1)");
  Polynomial a = common * P("(x - y)^2");
  Polynomial b = common * P("y + 2");
  CHECK(gcd(a, b) == common.monic());
  CHECK(gcd(P("2*x + 4"), P("3*x + 6")) == P("x + 2"));
  CHECK(gcd(P("x"), P("y")) == Polynomial(1));
  CHECK(gcd(P("0"), P("2*x")) == P("x"));
  CHECK(gcd(P("x*z + y*z"), P("x^2*z^2 - y^2*z^2")) == P("x*z + y*z"));
}

TEST_CASE("gcd divides and contains the common factor on random inputs") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 60; ++it) {
    Polynomial c = random_poly(rng, 2);
    if (c.is_zero()) continue;
    Polynomial a = random_poly(rng, 3) * c;
    Polynomial b = random_poly(rng, 3) * c;
    if (a.is_zero() || b.is_zero()) continue;
    Polynomial g = gcd(a, b);
    CHECK_NOTHROW(exact_divide(a, g));
    CHECK_NOTHROW(exact_divide(b, g));
    CHECK_NOTHROW(exact_divide(g, c.monic()));
  }
}

TEST_CASE("rational functions are canonical") {
  RationalFunction f(P("x^2 - 1"), P("2*x - 2"));
  CHECK(f.numerator() == P("1/2*x + 1/2"));
  CHECK(f.denominator() == Polynomial(1));
  RationalFunction g(P("x"), P("2*x*y + 2*x"));
  CHECK(g.numerator() == P("1/2"));
  CHECK(g.denominator() == P("y + 1"));
  RationalFunction inv_x = RationalFunction(P("x")).inverse();
  CHECK(inv_x.to_string(kNames) == "(1)/(x)");
  CHECK(inv_x.derivative(0) == RationalFunction(P("-1"), P("x^2")));
  CHECK((inv_x * RationalFunction(P("x"))) == RationalFunction(1));
  CHECK((inv_x + inv_x - RationalFunction(P("2"), P("x"))).is_zero());
  CHECK_THROWS_AS(RationalFunction(P("1"), P("0")), AlgebraError);
}

TEST_CASE("rational function text round-trips") {
  for (const char* s : {"(x^2 + y)/(x - 3/2)", "x*y - 7", "5/3", "0"}) {
    RationalFunction f = parse_rational_function(s, kNames);
    CHECK(parse_rational_function(f.to_string(kNames), kNames) == f);
  }
}
