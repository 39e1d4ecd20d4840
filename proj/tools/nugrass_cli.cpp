// Batch driver: chart construction and the verification suites.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "nugrass/action.hpp"
#include "nugrass/nulie.hpp"

using namespace nugrass;

namespace {

struct Config {
  Dimensions d{0, 1, 1, 2};
  int r = 2;
  int samples = 100;
  std::uint64_t seed = 7;
  std::string format = "text";
  std::string out;
  std::string from, to;
  std::string base;
  bool standard_only = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  nlohmann::json json;
  std::string text;
  bool ok = true;
};

void add_common(CLI::App* sub, Config& cfg, bool sampled) {
  sub->add_option("-k", cfg.d.k, "even rank of the plane")->capture_default_str();
  sub->add_option("-l", cfg.d.l, "odd rank of the plane")->capture_default_str();
  sub->add_option("-m", cfg.d.m, "even dimension of the ambient space")->capture_default_str();
  sub->add_option("-n", cfg.d.n, "odd dimension of the ambient space")->capture_default_str();
  sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  sub->add_option("--out", cfg.out, "write the output to this file instead of stdout");
  if (sampled) {
    sub->add_option("-r", cfg.r, "number of odd generators of the probe algebra")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sub->add_option("--samples", cfg.samples, "samples per case")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  }
}

Dimensions dims(const Config& cfg) {
  try {
    cfg.d.validate();
  } catch (const InvalidDimensions& e) {
    throw UsageError(e.what());
  }
  return cfg.d;
}

IndexPair index_arg(const Atlas& at, const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string(flag) + " is required");
  try {
    IndexPair idx = IndexPair::parse(text);
    at.chart(idx);
    return idx;
  } catch (const AlgebraError& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

Output from_report(const Report& rep) { return {rep.to_json(), rep.to_text(), rep.ok()}; }

Output cmd_atlas(const Config& cfg) {
  const Atlas at(dims(cfg));
  Output o;
  std::ostringstream os;
  os << at.dims().to_string() << ": " << at.charts().size() << " charts, α|β = " << at.dims().alpha() << "|"
     << at.dims().beta() << "\n";
  nlohmann::json charts = nlohmann::json::array();
  for (const Chart& c : at.charts()) {
    os << "\n" << c.index.to_string() << (c.standard() ? "" : "  (non-standard)") << "\n" << pretty_label(c);
    charts.push_back(to_json(c));
  }
  o.text = os.str();
  o.json = {{"dimensions", at.dims().to_json()},
            {"alpha", at.dims().alpha()},
            {"beta", at.dims().beta()},
            {"chart_count", at.charts().size()},
            {"charts", charts}};
  return o;
}

Output cmd_transition(const Config& cfg) {
  const Atlas at(dims(cfg));
  const Chart& src = at.chart(index_arg(at, cfg.from, "--from"));
  const Chart& dst = at.chart(index_arg(at, cfg.to, "--to"));
  Output o;
  try {
    const TransitionMap t = transition_symbolic(src, dst);
    o.json = t.to_json();
    o.text = t.to_text();
  } catch (const UncoveredCase& e) {
    o.ok = false;
    o.json = {{"source", src.index.to_string()}, {"target", dst.index.to_string()}, {"error", e.what()}};
    o.text = std::string("no symbolic transition: ") + e.what() + "\n";
  } catch (const GenericallySingular& e) {
    o.ok = false;
    o.json = {{"source", src.index.to_string()}, {"target", dst.index.to_string()}, {"error", e.what()}};
    o.text = std::string("charts do not overlap: ") + e.what() + "\n";
  }
  return o;
}

Output cmd_verify_action(const Config& cfg) {
  const Dimensions d = dims(cfg);
  const Report gluing = verify_action_gluing(d, cfg.r, cfg.samples, cfg.seed, cfg.standard_only);
  const Report axioms = verify_action_axioms(d, cfg.r, cfg.samples, cfg.seed);
  return {{{"gluing", gluing.to_json()}, {"axioms", axioms.to_json()}},
          gluing.to_text() + axioms.to_text(),
          gluing.ok() && axioms.ok()};
}

BasePoint base_point(const Config& cfg, const Dimensions& d) {
  if (!cfg.base.empty()) {
    std::ifstream in(cfg.base);
    if (!in) throw UsageError("cannot read " + cfg.base);
    try {
      return BasePoint::from_json(nlohmann::json::parse(in));
    } catch (const std::exception& e) {
      throw UsageError("bad base point file: " + std::string(e.what()));
    }
  }
  // Default: the first k even and first l odd coordinate vectors.
  BasePoint b;
  for (int i = 0; i < d.k; ++i) {
    QVector row(static_cast<std::size_t>(d.m), Rational(0));
    row[static_cast<std::size_t>(i)] = 1;
    b.p1.push_back(row);
  }
  for (int i = 0; i < d.l; ++i) {
    QVector row(static_cast<std::size_t>(d.n), Rational(0));
    row[static_cast<std::size_t>(i)] = 1;
    b.p2.push_back(row);
  }
  return b;
}

Output cmd_transitivity(const Config& cfg) {
  const Dimensions d = dims(cfg);
  const Atlas at(d);
  const BasePoint base = base_point(cfg, d);
  Sampler s(cfg.seed);
  Report rep;
  rep.check_name = "transitivity";
  rep.instance = d.to_json();
  rep.instance["r"] = cfg.r;
  rep.instance["base"] = base.to_json();
  std::vector<CaseResult> per_chart(at.charts().size());
  for (std::size_t i = 0; i < per_chart.size(); ++i) per_chart[i].name = "W in " + at.charts()[i].index.to_string();
  for (int i = 0; i < cfg.samples; ++i) {
    const std::size_t ci = static_cast<std::size_t>(i) % at.charts().size();
    const GrassPoint w = sample_point(at.charts()[ci], cfg.r, s);
    CaseResult& cr = per_chart[ci];
    ++cr.samples;
    std::string why;
    try {
      const GLPoint v = transitivity_witness(at, w, base);
      v.validate();
      const GrassPoint reached = point_of_matrix(at, smat_mul(base.hat(d, cfg.r), v.mat), w.chart);
      if (same_point(at, reached, w) != true) why = "p_hat V does not reach W";
    } catch (const RankDeficient& e) {
      throw UsageError(e.what());
    } catch (const AlgebraError& e) {
      why = e.what();
    }
    if (why.empty()) {
      ++cr.passed;
    } else {
      ++cr.failed;
      cr.status = "fail";
      if (cr.counterexamples.size() < 3) cr.counterexamples.push_back({{"W", w.to_json()}, {"reason", why}});
    }
  }
  for (auto& c : per_chart)
    if (c.samples > 0) rep.add(std::move(c));
  return from_report(rep);
}

Output cmd_nulie(const Config& cfg) {
  const Report rep = h_report(dims(cfg));
  Output o = from_report(rep);
  std::ostringstream os;
  os << "dim_even=" << rep.extra["dim_even"] << " dim_odd=" << rep.extra["dim_odd"]
     << " sign_s=" << rep.extra["sign_s"] << "\n";
  for (const auto& b : rep.extra["basis"]) os << "  " << (b["parity"] == 0 ? "even " : "odd  ") << b["text"].get<std::string>() << "\n";
  os << "chart signs:";
  for (const auto& [chart, sign] : rep.extra["chart_signs"].items()) os << " " << chart << "=" << sign;
  os << "\n";
  o.text += os.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact symbolic checks for nu-Grassmannians nuG_{k|l}(m|n)."};
  app.footer(
      "Chart indices are written {i,j}|{r,s}: even column indices, then odd ones, 1-based.\n"
      "Use ∅ or {} for an empty set, e.g. --from \"∅|{1}\" --to \"{}|{2}\".\n"
      "Exit status: 0 when every check passes, 1 when an identity fails, 2 on usage errors.");
  app.require_subcommand(1);
  Config cfg;

  auto* atlas = app.add_subcommand("atlas", "list the charts and their labels");
  add_common(atlas, cfg, false);
  auto* transition = app.add_subcommand("transition", "symbolic transition map between two charts");
  add_common(transition, cfg, false);
  transition->add_option("--from", cfg.from, "source chart index")->required();
  transition->add_option("--to", cfg.to, "target chart index")->required();
  auto* cocycle = app.add_subcommand("verify-cocycle", "identity, round-trip and triple-loop checks");
  add_common(cocycle, cfg, true);
  auto* action = app.add_subcommand("verify-action", "gluing of the action and the action axioms");
  add_common(action, cfg, true);
  action->add_flag("--standard-only", cfg.standard_only, "restrict the gluing check to standard charts");
  auto* trans = app.add_subcommand("transitivity", "solve p_hat V = W for random W");
  add_common(trans, cfg, true);
  trans->add_option("--base", cfg.base, "JSON file with the base point blocks p1, p2");
  auto* nulie = app.add_subcommand("nulie", "the nu-commuting subalgebra of gl(m|n)");
  add_common(nulie, cfg, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Output o;
  try {
    if (*atlas) o = cmd_atlas(cfg);
    if (*transition) o = cmd_transition(cfg);
    if (*cocycle) o = from_report(verify_cocycle(dims(cfg), cfg.r, cfg.samples, cfg.seed));
    if (*action) o = cmd_verify_action(cfg);
    if (*trans) o = cmd_transitivity(cfg);
    if (*nulie) o = cmd_nulie(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const std::string body = cfg.format == "json" ? o.json.dump(2) + "\n" : o.text;
  if (cfg.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << cfg.out << "\n";
      return 2;
    }
    f << body;
  }
  return o.ok ? 0 : 1;
}
