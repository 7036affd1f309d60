// Acceptance run: verify-all at the default configuration, one line per criterion, then a
// second run for byte-identical output.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <string>

#include "json.hpp"
#include "qc/qc.h"

namespace {

bool run_verify_all(std::string& json) {
  qc_config* cfg = nullptr;
  qc_report* rep = nullptr;
  if (qc_config_new(&cfg) != QC_OK) return false;
  const qc_status s = qc_run(cfg, "verify-all", &rep);
  qc_config_free(cfg);
  if (s != QC_OK) {
    std::fprintf(stderr, "verify-all failed to run: %s\n", qc_last_error());
    return false;
  }
  json = qc_report_json(rep);
  qc_report_free(rep);
  return true;
}

}  // namespace

int main() {
  std::string first, second;
  if (!run_verify_all(first)) return 1;
  setenv("QC_THREADS", "1", 1);  // second run single-threaded: schedule must not matter
  if (!run_verify_all(second)) return 1;
  std::ofstream("acceptance_report.json") << first;

  const auto report = nlohmann::json::parse(first);
  std::map<int, std::pair<std::string, bool>> seen;
  for (const auto& c : report.at("criteria")) seen[c.at("id").get<int>()] = {c.at("name"), c.at("passed")};
  int failures = 0;
  for (int id = 1; id <= 11; ++id) {
    const auto it = seen.find(id);
    const bool ok = it != seen.end() && it->second.second;
    failures += !ok;
    std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", it != seen.end() ? it->second.first.c_str() : "missing");
  }
  const bool same = first == second;
  failures += !same;
  std::printf("criterion 12: %s  determinism (%zu bytes)\n", same ? "PASS" : "FAIL", first.size());
  const bool schema = report.at("schema") == "qc-report/1" && report.at("passed").get<bool>() == (failures == 0);
  if (!schema) std::printf("report header inconsistent\n");
  return failures == 0 && schema ? 0 : 1;
}
