#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace conecert::suite {

struct Options {
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// One named sub-check of a criterion. `detail` must be deterministic: it
// goes into the manifest.
struct Check {
  std::string name;
  bool passed = false;
  nlohmann::json detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;  // reported on stderr, never stored in the manifest

  bool passed() const;
  nlohmann::json to_json() const;
};

inline constexpr int kCriterionCount = 11;

std::string title(int id);
CriterionResult run_criterion(int id, const Options& options);

struct SuiteRun {
  std::vector<CriterionResult> results;
  nlohmann::json manifest;

  bool passed() const;
};

// Runs every criterion; the manifest is byte-identical for equal seeds.
SuiteRun run_suite(const Options& options);

// "PASS  3  title" style line plus the names of failing sub-checks.
std::string summary_line(const CriterionResult& r);

}  // namespace conecert::suite
