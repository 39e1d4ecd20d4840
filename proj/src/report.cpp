#include "nugrass/report.hpp"

#include <sstream>

namespace nugrass {

namespace {
constexpr std::size_t kMaxCounterexamples = 5;
}

void Report::add(CaseResult c) {
  samples += c.samples;
  passed += c.passed;
  failed += c.failed;
  for (const auto& ce : c.counterexamples)
    if (counterexamples.size() < kMaxCounterexamples) counterexamples.push_back({{"case", c.name}, {"point", ce}});
  if (c.counterexamples.size() > kMaxCounterexamples) c.counterexamples.resize(kMaxCounterexamples);
  cases.push_back(std::move(c));
}

nlohmann::json Report::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : cases) {
    nlohmann::json j{{"name", c.name}, {"status", c.status}, {"samples", c.samples},
                     {"passed", c.passed}, {"failed", c.failed}, {"skipped", c.skipped}};
    if (!c.note.empty()) j["note"] = c.note;
    if (!c.counterexamples.empty()) j["counterexamples"] = c.counterexamples;
    cs.push_back(std::move(j));
  }
  nlohmann::json j{{"check_name", check_name}, {"instance", instance}, {"samples", samples},
                   {"passed", passed}, {"failed", failed}, {"counterexamples", counterexamples},
                   {"cases", cs}};
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  return j;
}

std::string Report::to_text() const {
  std::ostringstream os;
  int undefined = 0, failing = 0;
  for (const auto& c : cases) {
    if (c.status == "undefined") ++undefined;
    if (c.status == "fail") ++failing;
  }
  os << check_name << " " << instance.dump() << ": " << (ok() ? "PASS" : "FAIL") << "  samples=" << samples
     << " passed=" << passed << " failed=" << failed << " cases=" << cases.size() << " failing_cases=" << failing
     << " undefined_cases=" << undefined << "\n";
  for (const auto& c : cases) {
    if (c.status == "pass") continue;
    os << "  " << c.status << " " << c.name << " (" << c.passed << "/" << c.samples << ")";
    if (!c.note.empty()) os << " " << c.note;
    os << "\n";
  }
  return os.str();
}

}  // namespace nugrass
