// Command-line driver over the C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qc/qc.h"

namespace {

constexpr int kExitFail = 1, kExitConfig = 2, kExitError = 3;

int exit_for(qc_status s) { return s == QC_ERR_CONFIG || s == QC_ERR_ARGUMENT ? kExitConfig : kExitError; }

int report_error(qc_status s) {
  std::cerr << "qc: " << qc_status_name(s) << " error: " << qc_last_error() << "\n";
  return exit_for(s);
}

bool parse_window(const std::string& s, int& lo, int& hi) {
  const auto colon = s.find(':', 1);
  if (colon == std::string::npos) return false;
  try {
    size_t a = 0, b = 0;
    lo = std::stoi(s.substr(0, colon), &a);
    hi = std::stoi(s.substr(colon + 1), &b);
    return a == colon && b == s.size() - colon - 1;
  } catch (const std::exception&) {
    return false;
  }
}

struct Config {
  qc_config* c = nullptr;
  ~Config() { qc_config_free(c); }
};
struct Report {
  qc_report* r = nullptr;
  ~Report() { qc_report_free(r); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact truncated checks for the rational current algebra"};
  std::string command, config_path, out_path, cartan, suite, bidegree, window;
  std::optional<int> K, max_mode;
  app.add_option("command", command, "kernels | cartan | serre | shuffle | gram | canonical | verify-all")
      ->required()
      ->check(CLI::IsMember({"kernels", "cartan", "serre", "shuffle", "gram", "canonical", "verify-all"}));
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--K", K, "hbar truncation order");
  app.add_option("--window", window, "exponent window LO:HI (use --window=-10:10 for negative LO)");
  app.add_option("--max-mode", max_mode, "largest mode index");
  app.add_option("--cartan", cartan, "A1 or A2");
  app.add_option("--suite", suite, "verify-all subset: all, kernels, serre, shuffle, pairing, canonical, cartan");
  app.add_option("--bidegree", bidegree, "gram block: all, 0, a1, 2a1, empty");
  app.add_option("--out", out_path, "write the JSON report here instead of stdout");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  Config cfg;
  qc_status s = qc_config_new(&cfg.c);
  if (s != QC_OK) return report_error(s);
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    if (!in && !in.eof()) {
      std::cerr << "qc: cannot read " << config_path << "\n";
      return kExitConfig;
    }
    if ((s = qc_config_load_json(cfg.c, buf.str().c_str())) != QC_OK) return report_error(s);
  }
  if (K) qc_config_set_K(cfg.c, *K);
  if (max_mode) qc_config_set_max_mode(cfg.c, *max_mode);
  if (!cartan.empty()) qc_config_set_cartan(cfg.c, cartan.c_str());
  if (!suite.empty()) qc_config_set_suite(cfg.c, suite.c_str());
  if (!bidegree.empty()) qc_config_set_bidegree(cfg.c, bidegree.c_str());
  if (!window.empty()) {
    int lo = 0, hi = 0;
    if (!parse_window(window, lo, hi)) {
      std::cerr << "qc: --window expects LO:HI, got '" << window << "'\n";
      return kExitConfig;
    }
    qc_config_set_window(cfg.c, lo, hi);
  }
  if ((s = qc_config_validate(cfg.c)) != QC_OK) return report_error(s);

  Report rep;
  if ((s = qc_run(cfg.c, command.c_str(), &rep.r)) != QC_OK) return report_error(s);
  const bool passed = qc_report_passed(rep.r) != 0;
  if (out_path.empty()) {
    std::fputs(qc_report_json(rep.r), stdout);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << qc_report_json(rep.r);
    if (!out) {
      std::cerr << "qc: cannot write " << out_path << "\n";
      return kExitError;
    }
    std::cerr << command << ": " << (passed ? "PASS" : "FAIL") << "\n";
  }
  return passed ? 0 : kExitFail;
}
