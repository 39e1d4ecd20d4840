// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "nugrass/action.hpp"
#include "nugrass/nulie.hpp"

using namespace nugrass;

namespace {

const Dimensions kSmall{0, 1, 1, 2};
const Dimensions kDesk{1, 2, 2, 3};
constexpr std::uint64_t kSeed = 7;

struct Verdict {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string summary(const Report& r) {
  int failing = 0, undefined = 0;
  for (const auto& c : r.cases) {
    if (c.status == "fail") ++failing;
    if (c.status == "undefined") ++undefined;
  }
  std::ostringstream os;
  os << r.check_name << " " << r.instance.value("k", -1) << r.instance.value("l", -1) << r.instance.value("m", -1)
     << r.instance.value("n", -1) << ": " << r.passed << "/" << r.samples << " samples, " << failing << " of "
     << r.cases.size() << " cases failing, " << undefined << " undefined";
  return os.str();
}

void criterion1(Verdict& v) {
  const Atlas small(kSmall), desk(kDesk);
  const auto g12 = transition_symbolic(small.chart(IndexPair::parse("∅|{1}")), small.chart(IndexPair::parse("∅|{2}")));
  v.require(g12.to_text() == "x ↦ 1/x\ne ↦ e/x\n", "g12 is x ↦ 1/x, e ↦ e/x");

  using Tokens = std::vector<std::vector<std::string>>;
  v.require(label_tokens(desk.chart(IndexPair::parse("{1}|{2,3}"))) ==
                Tokens{{"1", "x1", "e3", "0", "0"}, {"0", "e1", "x2", "1", "0"}, {"0", "e2", "x3", "0", "1"}},
            "label {1}|{2,3}");
  v.require(label_tokens(desk.chart(IndexPair::parse("{1,2}|{2}"))) ==
                Tokens{{"1", "0", "ν(x1)", "0", "e3"}, {"0", "1ν", "ν(e1)", "0", "x2"}, {"0", "0", "ν(e2)", "1", "x3"}},
            "label {1,2}|{2}");
  v.require(label_tokens(small.chart(IndexPair::parse("{1}|∅"))) == Tokens{{"1ν", "ν(e)", "x"}}, "label {1}|∅");
  v.require(small.charts().size() == 3 && desk.charts().size() == 10, "chart counts 3 and 10");
  v.require(kDesk.alpha() == 3 && kDesk.beta() == 3, "α|β = 3|3");
  std::string text = g12.to_text();
  text.pop_back();
  for (auto pos = text.find('\n'); pos != std::string::npos; pos = text.find('\n')) text.replace(pos, 1, ", ");
  v.detail << " g12: " << text << "; 3 and 10 charts; α|β = 3|3";
}

void report_into(Verdict& v, const Report& r) {
  v.detail << " {" << summary(r) << "}";
  v.require(r.ok(), r.check_name + " has failing cases");
}

void criterion2(Verdict& v) {
  for (const Dimensions& d : {kSmall, kDesk}) report_into(v, verify_cocycle(d, 2, 100, kSeed));
}

void criterion3(Verdict& v) {
  for (int r : {2, 4}) report_into(v, verify_action_gluing(kSmall, r, 100, kSeed));
  report_into(v, verify_action_gluing(kDesk, 2, 100, kSeed, true));
}

void criterion4(Verdict& v) {
  for (const Dimensions& d : {kSmall, kDesk}) report_into(v, verify_action_axioms(d, 2, 100, kSeed));
}

void criterion5(Verdict& v) {
  const Atlas at(kSmall);
  const BasePoint base{{}, {{1, 0}}};
  Sampler s(kSeed);
  int reached = 0;
  for (int i = 0; i < 50; ++i) {
    const GrassPoint w = sample_point(at.charts()[static_cast<std::size_t>(i % 3)], 4, s);
    try {
      const GLPoint p = transitivity_witness(at, w, base);
      p.validate();
      const auto img = point_of_matrix(at, smat_mul(base.hat(kSmall, 4), p.mat), w.chart);
      if (img == w) ++reached;
    } catch (const AlgebraError&) {
    }
  }
  v.detail << " " << reached << "/50 random W over Λ_4 reached exactly";
  v.require(reached == 50, "every W reached");
}

void criterion6(Verdict& v) {
  Sampler s(kSeed);
  const ContextPtr ctx = Atlas(kDesk).context();
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto a = s.super_function(ctx, -1, true);
    if (!(a * a.inverse() == SuperFunction::one(ctx))) ++bad;
    const auto g = s.grassmann(4, 0);
    if (!(g * g.inverse() == GrassmannNumber::one(4))) ++bad;
  }
  v.require(bad == 0, "a·a⁻¹ = 1");
  bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const int p = i % 2;
    const auto a = s.super_function(ctx, p), b = s.super_function(ctx, p);
    const auto f = SuperFunction::coefficient(ctx, s.rational_function(ctx->even_names.size(), true));
    if (!(a.nu().nu() == a)) ++bad;
    if (!a.is_zero() && a.nu().parity() != 1 - p) ++bad;
    if (!((f * a + b).nu() == f * a.nu() + b.nu())) ++bad;
  }
  v.require(bad == 0, "ν² = id, parity flip, coefficient-linearity");
  bad = 0;
  std::vector<std::string> names = ctx->even_names;
  names.insert(names.end(), ctx->odd_names.begin(), ctx->odd_names.end());
  for (int i = 0; i < 500; ++i) {
    const int p = i % 2, q = (i / 2) % 2;
    const auto a = s.super_function(ctx, p), b = s.super_function(ctx, q);
    if (!(a * b == b * a * Rational(p * q ? -1 : 1))) ++bad;
    for (std::size_t vi = 0; vi < names.size(); ++vi) {
      const int pv = vi < ctx->even_names.size() ? 0 : 1;
      const auto lhs = (a * b).partial(names[vi]);
      const auto rhs = a.partial(names[vi]) * b + a * b.partial(names[vi]) * Rational(pv * p ? -1 : 1);
      if (!(lhs == rhs)) ++bad;
    }
  }
  v.require(bad == 0, "supercommutativity and Leibniz");
  v.detail << " 1000 inverses, 1000 ν samples, 500 product samples";
}

void criterion7(Verdict& v) {
  const Report rep = h_report(kSmall);
  v.detail << " dim h = " << rep.extra["dim_even"] << "|" << rep.extra["dim_odd"] << ", sign_s = " << rep.extra["sign_s"]
           << ", chart signs " << rep.extra["chart_signs"].dump();
  for (const auto& c : rep.cases) v.require(c.status == "pass", c.name);
}

void criterion8(Verdict& v) {
  const Atlas at(kSmall);
  const Chart& c = at.chart(IndexPair::parse("∅|{1}"));
  const auto x = SuperFunction::var(c.ctx, "x"), e = SuperFunction::var(c.ctx, "e");
  const auto zero = SuperFunction::zero(c.ctx);
  const ChartVectorField xdx{c.index, c.ctx, 0, {x}, {zero}}, ede{c.index, c.ctx, 0, {zero}, {e}};
  auto vanishes = [](const std::vector<SuperFunction>& d) {
    for (const auto& f : d)
      if (!f.is_zero()) return false;
    return true;
  };
  v.require(vanishes(nu_defect(xdx)), "x∂_x has zero defect");
  v.require(!vanishes(nu_defect(ede)), "e∂_e has a defect");
  v.detail << " defect of e∂_e on f·1: " << nu_defect(ede).at(0).to_string();
}

void criterion9(Verdict& v) {
  const Atlas at(kSmall);
  const auto g12 = transition_symbolic(at.chart(IndexPair::parse("∅|{1}")), at.chart(IndexPair::parse("∅|{2}")));
  const SuperFunction coeff = g12.odd_images.at(0).partial("e");
  const auto x = SuperFunction::var(at.context(), "x");
  v.require(coeff * x == SuperFunction::one(at.context()), "coefficient is 1/x");
  for (const Rational& pt : {Rational(-1), Rational(2)}) {
    const GrassmannNumber ev[] = {GrassmannNumber::constant(1, pt)};
    const GrassmannNumber od[] = {GrassmannNumber::zero(1)};
    const Rational val = evaluate(coeff, ev, od, 1).body();
    v.detail << " at x = " << pt.get_str() << ": " << val.get_str() << ";";
    v.require((val < 0) == (pt < 0), "sign at x = " + pt.get_str());
  }
}

}  // namespace

int main() {
  struct Item {
    int id;
    double limit;
    std::function<void(Verdict&)> run;
  };
  const Item items[] = {{1, 1, criterion1},   {2, 60, criterion2},  {3, 120, criterion3},
                        {4, 120, criterion4}, {5, 60, criterion5},  {6, 60, criterion6},
                        {7, 120, criterion7}, {8, 10, criterion8},  {9, 10, criterion9}};
  bool all = true;
  for (const auto& it : items) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      it.run(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream t;
    t.precision(2);
    t << std::fixed << secs;
    v.require(secs < it.limit, "runtime over " + std::to_string(static_cast<int>(it.limit)) + " s");
    std::cout << "criterion " << it.id << ": " << (v.ok ? "PASS" : "FAIL") << " (" << t.str() << " s)"
              << v.detail.str() << std::endl;
    all = all && v.ok;
  }
  return all ? 0 : 1;
}
