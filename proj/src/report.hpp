#pragma once

// Run configuration, the verification suites and their JSON reports.

#include <string>

namespace qc {

inline constexpr const char* kSchema = "qc-report/1";

struct RunConfig {
  std::string curve = "rational";
  int K = 6;
  int lo = -10, hi = 10;
  int max_mode = 10;
  std::string cartan = "A1";
  std::string suite = "all";     // verify-all subset
  std::string bidegree = "all";  // gram: all, 0, a1, 2a1, empty
  std::string out;

  // K >= 2, window spans at least 2K, known curve / cartan / suite; Config error otherwise.
  void validate() const;
};

// Keys: curve, K, window [lo, hi], max_mode, cartan, suite, bidegree.  Unknown keys and
// wrong types are Config errors.  Missing keys keep the values of `base`.
RunConfig config_from_json(const std::string& text, RunConfig base = {});

struct RunResult {
  std::string json;  // pretty-printed, stable key order, trailing newline
  bool passed = false;
};

// kernels, cartan, serre, shuffle, gram, canonical, verify-all.  Validates cfg first.
// Check failures are verdicts in the report; only configuration problems throw.
RunResult run(const std::string& subcommand, const RunConfig& cfg);

bool is_subcommand(const std::string& s);

}  // namespace qc
