#include <regex>
#include <string>

#include "doctest.h"
#include "error.hpp"
#include "json.hpp"
#include "qc/qc.h"
#include "report.hpp"

using namespace qc;

namespace {

RunConfig small() {
  RunConfig c;
  c.K = 3;
  c.lo = -4;
  c.hi = 4;
  c.max_mode = 2;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_NOTHROW(RunConfig{}.validate());
  RunConfig c;
  c.K = 1;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.cartan = "G2";
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.lo = 3;
  c.hi = 3;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.lo = -2;
  c.hi = 2;  // narrower than 2K
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.curve = "elliptic";
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.suite = "nope";
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("config from JSON") {
  const RunConfig c = config_from_json(R"({"K": 4, "window": [-6, 6], "cartan": "A2"})");
  CHECK(c.K == 4);
  CHECK(c.lo == -6);
  CHECK(c.hi == 6);
  CHECK(c.cartan == "A2");
  CHECK(c.max_mode == RunConfig{}.max_mode);
  CHECK_THROWS_AS(config_from_json(R"({"k": 4})"), Error);
  CHECK_THROWS_AS(config_from_json(R"({"K": "4"})"), Error);
  CHECK_THROWS_AS(config_from_json(R"({"window": [1]})"), Error);
  CHECK_THROWS_AS(config_from_json("[1, 2]"), Error);
  CHECK_THROWS_AS(config_from_json("{"), Error);
}

TEST_CASE("reports are deterministic and schema-tagged") {
  const RunResult a = run("cartan", small()), b = run("cartan", small());
  CHECK(a.passed);
  CHECK(a.json == b.json);
  CHECK(a.json.back() == '\n');
  const auto j = nlohmann::ordered_json::parse(a.json);
  CHECK(j.begin().key() == "schema");
  CHECK(j["schema"] == kSchema);
  CHECK(j["command"] == "cartan");
  CHECK(j["passed"] == true);
  CHECK((--j.end()).key() == "passed");

  const RunResult k = run("kernels", small());
  CHECK(k.passed);
  CHECK(std::regex_search(k.json, std::regex(R"("-?[0-9]+/[0-9]+")")));
  CHECK(k.json.find("\"exponents\"") != std::string::npos);
  CHECK(k.json.find("\"hbar_coeffs\"") != std::string::npos);

  CHECK(is_subcommand("verify-all"));
  CHECK_FALSE(is_subcommand("frobnicate"));
  RunConfig bad = small();
  bad.K = 1;
  CHECK_THROWS_AS(run("cartan", bad), Error);
}

TEST_CASE("C API: configuration and runs") {
  qc_config* c = nullptr;
  REQUIRE(qc_config_new(&c) == QC_OK);
  CHECK(qc_config_validate(c) == QC_OK);
  CHECK(qc_config_set_K(c, 1) == QC_OK);
  CHECK(qc_config_validate(c) == QC_ERR_CONFIG);
  CHECK(std::string(qc_last_error()).size() > 0);
  CHECK(qc_config_load_json(c, R"({"K": 3, "window": [-4, 4], "max_mode": 2})") == QC_OK);
  CHECK(qc_config_load_json(c, R"({"bogus": 1})") == QC_ERR_CONFIG);
  CHECK(qc_config_set_cartan(c, "A2") == QC_OK);
  qc_report* r = nullptr;
  REQUIRE(qc_run(c, "cartan", &r) == QC_OK);
  CHECK(qc_report_passed(r) == 1);
  CHECK(std::string(qc_report_json(r)).find("\"qc-report/1\"") != std::string::npos);
  qc_report_free(r);
  CHECK(qc_run(c, "frobnicate", &r) != QC_OK);
  CHECK(qc_run(nullptr, "cartan", &r) == QC_ERR_ARGUMENT);
  CHECK(qc_config_set_cartan(c, "B7") == QC_OK);
  CHECK(qc_run(c, "cartan", &r) == QC_ERR_CONFIG);
  CHECK(r == nullptr);
  qc_config_free(c);
  CHECK(std::string(qc_status_name(QC_ERR_CONFIG)).size() > 0);
}

TEST_CASE("C API: hbar series") {
  qc_hseries *a = nullptr, *b = nullptr, *p = nullptr;
  REQUIRE(qc_hseries_new(4, &a) == QC_OK);
  REQUIRE(qc_hseries_new(4, &b) == QC_OK);
  CHECK(qc_hseries_order(a) == 4);
  qc_hseries_set(a, 0, "1/1");
  qc_hseries_set(a, 1, "1/1");
  qc_hseries_set(b, 0, "1");
  qc_hseries_set(b, 1, "-1");
  REQUIRE(qc_hseries_mul(a, b, &p) == QC_OK);  // (1 + h)(1 - h) = 1 - h^2
  char buf[16];
  CHECK(qc_hseries_get(p, 0, buf, sizeof buf) == 3);
  CHECK(std::string(buf) == "1/1");
  qc_hseries_get(p, 1, buf, sizeof buf);
  CHECK(std::string(buf) == "0/1");
  qc_hseries_get(p, 2, buf, sizeof buf);
  CHECK(std::string(buf) == "-1/1");
  // truncated buffer still reports the full length
  char tiny[2];
  CHECK(qc_hseries_get(p, 2, tiny, sizeof tiny) == 4);
  CHECK(std::string(tiny) == "-");
  CHECK(qc_hseries_get(p, 9, buf, sizeof buf) == 0);
  CHECK(qc_hseries_set(a, 0, "x") != QC_OK);
  qc_hseries* e = nullptr;
  CHECK(qc_hseries_exp(a, &e) != QC_OK);  // constant term is nonzero
  qc_hseries* inv = nullptr;
  REQUIRE(qc_hseries_inv(b, &inv) == QC_OK);  // 1/(1 - h)
  qc_hseries_get(inv, 3, buf, sizeof buf);
  CHECK(std::string(buf) == "1/1");
  CHECK(qc_hseries_new(0, &e) != QC_OK);
  qc_hseries_free(inv);
  qc_hseries_free(p);
  qc_hseries_free(a);
  qc_hseries_free(b);
}
