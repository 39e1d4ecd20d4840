#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace nugrass {

/// Outcome of one identity on one pair, triple or other unit of a check.
/// status is "pass", "fail" or "undefined" (the construction does not give
/// the legs needed, so nothing was sampled).
struct CaseResult {
  std::string name;
  std::string status = "pass";
  int samples = 0;
  int passed = 0;
  int failed = 0;
  int skipped = 0;  // samples that fell outside the overlap and were redrawn
  std::string note;
  std::vector<nlohmann::json> counterexamples;
};

struct Report {
  std::string check_name;
  nlohmann::json instance;
  int samples = 0;
  int passed = 0;
  int failed = 0;
  std::vector<nlohmann::json> counterexamples;
  std::vector<CaseResult> cases;
  nlohmann::json extra = nlohmann::json::object();

  bool ok() const { return failed == 0; }
  /// Folds a case into the totals (keeps at most a few counterexamples).
  void add(CaseResult c);
  nlohmann::json to_json() const;
  /// One summary line plus one line per failing or undefined case.
  std::string to_text() const;
};

}  // namespace nugrass
