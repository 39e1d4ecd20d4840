#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nugrass/supermatrix.hpp"

using namespace nugrass;

namespace {

using SF = SuperFunction;
using SM = SuperMatrix<SF>;

ContextPtr g1223() { return make_context({"x1", "x2", "x3"}, {"e1", "e2", "e3"}); }

SM from_rows(const ContextPtr& c, SM::Split rs, SM::Split cs, const std::vector<std::vector<Entry<SF>>>& rows) {
  SM m(c, rs, cs);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m.set(i, j, rows[i][j]);
  return m;
}

// A_{I|R} for I={1}, R={1,2} in the (1|2)-in-(2|3) atlas.
SM label_1_12(const ContextPtr& c) {
  auto v = [&](const char* n) { return SF::var(c, n); };
  SF z = SF::zero(c), o = SF::one(c);
  return from_rows(c, {1, 2}, {2, 3},
                   {{o, v("x1"), z, z, v("e3")}, {z, v("e1"), o, z, v("x2")}, {z, v("e2"), z, o, v("x3")}});
}

SM random_invertible(Sampler& s, const ContextPtr& c, SM::Split split) {
  SM m(c, split, split);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      int bp = m.block_parity(i, j);
      m.set(i, j, s.super_function(c, bp, bp == 0 && i == j));
    }
  return m;
}

}  // namespace

TEST_CASE("products with the 1nu symbol") {
  auto c = make_context({"x"}, {"e"});
  auto x = SF::var(c, "x");
  SM row = from_rows(c, {1, 0}, {0, 1}, {{x.nu()}});
  SM col = from_rows(c, {0, 1}, {1, 0}, {{NuSymbol{}}});
  SM prod = smat_mul(row, col);
  CHECK(prod.plain(0, 0) == x);
  SM nrow = from_rows(c, {1, 0}, {0, 1}, {{NuSymbol{}}});
  CHECK_THROWS_AS(smat_mul(nrow, col), DoubleNu);
  CHECK(smat_mul(col, row).plain(0, 0) == x);

  auto e = SF::var(c, "e");
  SM a = from_rows(c, {1, 1}, {1, 1}, {{x, e}, {e, SF::one(c)}});
  CHECK(smat_mul(a, SM::identity(c, {1, 1})) == a);
  CHECK(smat_mul(SM::identity(c, {1, 1}), a) == a);
  CHECK_THROWS_AS(smat_mul(a, SM::identity(c, {2, 0})), DimensionMismatch);
}

TEST_CASE("inversion") {
  auto c = make_context({"x"}, {"e1", "e2"});
  auto x = SF::var(c, "x"), e1 = SF::var(c, "e1");
  SF z = SF::zero(c), o = SF::one(c);
  SM d = from_rows(c, {1, 1}, {1, 1}, {{x, z}, {z, o}});
  CHECK(smat_inv(d) == from_rows(c, {1, 1}, {1, 1}, {{x.inverse(), z}, {z, o}}));
  SM a = from_rows(c, {1, 1}, {1, 1}, {{x, e1}, {e1, o}});
  SM ai = smat_inv(a);
  CHECK(smat_mul(a, ai) == SM::identity(c, {1, 1}));
  CHECK(smat_mul(ai, a) == SM::identity(c, {1, 1}));
  CHECK(ai.is_parity_valid());
  CHECK_THROWS_AS(smat_inv(from_rows(c, {1, 0}, {1, 0}, {{e1}})), NotInvertible);
  CHECK_THROWS_AS(smat_inv(from_rows(c, {1, 1}, {1, 1}, {{o, NuSymbol{}}, {z, o}})), NuEntriesPresent);
}

TEST_CASE("inverse properties on random matrices") {
  auto c = make_context({"x", "y"}, {"e1", "e2"});
  Sampler s(31);
  for (int it = 0; it < 12; ++it) {
    SM a = random_invertible(s, c, {2, 1});
    SM b = random_invertible(s, c, {2, 1});
    if (!smat_invertible(a) || !smat_invertible(b)) continue;
    SM ai = smat_inv(a), bi = smat_inv(b);
    CHECK(smat_mul(a, ai) == SM::identity(c, {2, 1}));
    CHECK(smat_mul(ai, a) == SM::identity(c, {2, 1}));
    CHECK(smat_inv(smat_mul(a, b)) == smat_mul(bi, ai));
    CHECK(smat_mul(a, b).is_parity_valid());
  }
  for (int it = 0; it < 30; ++it) {
    using GM = SuperMatrix<GrassmannNumber>;
    GM g(3, {1, 2}, {1, 2});
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g.set(i, j, s.grassmann(3, g.block_parity(i, j)));
    if (!smat_invertible(g)) continue;
    CHECK(smat_mul(g, smat_inv(g)) == GM::identity(3, {1, 2}));
  }
}

TEST_CASE("minor, primed minor and remainder on the displayed example") {
  auto c = g1223();
  auto v = [&](const char* n) { return SF::var(c, n); };
  SF z = SF::zero(c), o = SF::one(c);
  SM a = label_1_12(c);
  CHECK(a.is_parity_valid());

  SM m = minor_M(a, {1, 2}, {3});
  CHECK(m == from_rows(c, {1, 2}, {2, 1}, {{o, v("x1"), v("e3")}, {z, v("e1"), v("x2")}, {z, v("e2"), v("x3")}}));
  CHECK(entry_tokens(m) == std::vector<std::vector<std::string>>{{"1", "x1", "e3"}, {"0", "e1", "x2"}, {"0", "e2", "x3"}});

  SM mp = minor_Mprime(a, {1, 2}, {3});
  CHECK(mp.col_split() == SM::Split{1, 2});
  CHECK(mp == from_rows(c, {1, 2}, {1, 2},
                        {{o, v("x1").nu(), v("e3")}, {z, v("e1").nu(), v("x2")}, {z, v("e2").nu(), v("x3")}}));
  CHECK(mp.is_parity_valid());

  // A standard target moves nothing.
  CHECK(minor_Mprime(a, {1}, {1, 2}) == minor_M(a, {1}, {1, 2}));
  CHECK(minor_M(a, {1}, {1, 2}) == SM::identity(c, {1, 2}));
  CHECK(minor_M(a, {1, 2}, {1, 2, 3}) == a);
  CHECK(remainder_D(a, {1}, {1, 2}) == from_rows(c, {1, 2}, {1, 1}, {{v("x1"), v("e3")}, {v("e1"), v("x2")}, {v("e2"), v("x3")}}));
  CHECK(remainder_D(a, {}, {}) == a);
  CHECK_THROWS_AS(minor_M(a, {3}, {}), DimensionMismatch);
  CHECK_THROWS_AS(minor_M(a, {2, 1}, {}), DimensionMismatch);
}

TEST_CASE("minor and remainder partition the columns") {
  auto c = g1223();
  SM a = label_1_12(c);
  for (unsigned em = 0; em < 4; ++em)
    for (unsigned om = 0; om < 8; ++om) {
      std::vector<int> J, S;
      for (int i = 0; i < 2; ++i)
        if (em >> i & 1) J.push_back(i + 1);
      for (int i = 0; i < 3; ++i)
        if (om >> i & 1) S.push_back(i + 1);
      SM m = minor_M(a, J, S), d = remainder_D(a, J, S);
      CHECK(m.cols() + d.cols() == a.cols());
      CHECK(m.col_split()[0] + d.col_split()[0] == 2);
      CHECK(m.is_parity_valid());
      CHECK(d.is_parity_valid());
    }
}

TEST_CASE("primed minor with a single odd generator") {
  auto c = make_context({"x"}, {"e"});
  auto e = SF::var(c, "e"), x = SF::var(c, "x");
  SM a1 = from_rows(c, {0, 1}, {1, 2}, {{e, SF::one(c), x}});
  SM m = minor_M(a1, {1}, {});
  CHECK(m.col_split() == SM::Split{1, 0});
  SM mp = minor_Mprime(a1, {1}, {});
  CHECK(mp.col_split() == SM::Split{0, 1});
  CHECK(mp.plain(0, 0) == SF::one(c));
  CHECK(remainder_D(a1, {}, {1}) == from_rows(c, {0, 1}, {1, 1}, {{e, x}}));

  // 1nu in a moved column becomes 1.
  SM a3 = from_rows(c, {0, 1}, {1, 2}, {{NuSymbol{}, e.nu(), x}});
  CHECK(a3.is_parity_valid());
  CHECK(minor_Mprime(a3, {1}, {}).plain(0, 0) == SF::one(c));
}

TEST_CASE("1nu left in an unmoved column is rejected") {
  auto c = g1223();
  auto v = [&](const char* n) { return SF::var(c, n); };
  SF z = SF::zero(c), o = SF::one(c);
  SM a = from_rows(c, {1, 2}, {2, 3},
                   {{o, z, v("x1").nu(), z, v("e3")},
                    {z, NuSymbol{}, v("e1").nu(), z, v("x2")},
                    {z, z, v("e2").nu(), o, v("x3")}});
  CHECK(a.is_parity_valid());
  CHECK_THROWS_AS(minor_Mprime(a, {2}, {1, 3}), ResidualNuSymbol);
  CHECK_NOTHROW(minor_Mprime(a, {1, 2}, {2}));
}

TEST_CASE("parity validation") {
  auto c = make_context({"x"}, {"e"});
  SM bad = from_rows(c, {1, 1}, {1, 1}, {{SF::var(c, "e"), SF::zero(c)}, {SF::zero(c), SF::one(c)}});
  CHECK_FALSE(bad.is_parity_valid());
  SM nu_even = from_rows(c, {1, 1}, {1, 1}, {{NuSymbol{}, SF::zero(c)}, {SF::zero(c), SF::one(c)}});
  CHECK_THROWS_AS(nu_even.validate(), ParityViolation);
}

TEST_CASE("printing and serialization") {
  auto c = g1223();
  SM a = label_1_12(c);
  const std::string expected =
      "[ 1 x1 | 0 0 e3 ]\n"
      "[---------------]\n"
      "[ 0 e1 | 1 0 x2 ]\n"
      "[ 0 e2 | 0 1 x3 ]\n";
  CHECK(pretty(a) == expected);

  SM withnu = a;
  withnu.set(1, 0, NuSymbol{});
  auto j = to_json(withnu);
  CHECK(j["entries"][1][0] == "1nu");
  CHECK(j["row_split"] == nlohmann::json::array({1, 2}));
  SM back = supermatrix_from_json<SF>(j, c, [](const nlohmann::json& e) { return super_function_from_json(e); });
  CHECK(back == withnu);
  CHECK(to_json(back).dump() == j.dump());
}
