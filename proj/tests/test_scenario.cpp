#include "fbl/scenario.hpp"

#include <doctest.h>

#include <set>

using namespace fbl;

namespace {

Json small_params(const std::string& name) {
  Json p = Json::object();
  p["seed"] = 7;
  if (name == "separable-interval") p["samples"] = 500;
  if (name == "quasi-interior") p["corpus"] = 3;
  if (name == "induced-hom") {
    p["samples"] = 100;
    p["tuples"] = 100;
    p["corpus"] = 5;
  }
  if (name == "opposite-isometry") {
    p["samples"] = 100;
    p["corpus"] = 2;
  }
  if (name == "connectivity") {
    p["points"] = 50;
    p["steps"] = 50;
    p["zero_samples"] = 20;
  }
  if (name == "strong-unit-obstruction") p["corpus"] = 30;
  if (name == "order-density-demo") p["grid"] = 16;
  return p;
}

}  // namespace

TEST_CASE("every named scenario runs and passes at desk scale") {
  for (const std::string& name : scenario_names()) {
    CAPTURE(name);
    ScenarioReport report = run_scenario(name, small_params(name));
    CHECK(report.pass);
    CHECK(report.scenario == name);
    CHECK(!report.checks.empty());
  }
}

TEST_CASE("overall pass is the conjunction of the checks") {
  for (const std::string& name : {std::string("separation"), std::string("strong-unit")}) {
    ScenarioReport report = run_scenario(name, small_params(name));
    bool conj = true;
    for (const auto& c : report.checks) conj = conj && c.pass;
    CHECK(report.pass == conj);
  }
}

TEST_CASE("unknown scenario raises the dedicated error") {
  try {
    run_scenario("does-not-exist", Json::object());
    FAIL("expected UnknownScenario");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unknown_scenario);
  }
}

TEST_CASE("scenario parameters reach the report") {
  Json params = small_params("separation");
  params["lattice"] = "chain:3";
  ScenarioReport report = run_scenario("separation", params);
  CHECK(report.lattice.find("chain(3)") != std::string::npos);
  CHECK(report.params.value("lattice", std::string()) == "chain:3");
  // chain(3) has three unordered pairs
  CHECK(report.checks.at(0).expected == "3");
}

TEST_CASE("module errors surface through scenarios with their code") {
  Json params;
  params["lattice"] = "powerset:2";
  params["a"] = "{1}";
  params["b"] = "{2}";  // incomparable endpoints
  try {
    run_scenario("interval-density", params);
    FAIL("expected OrderViolation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::order_violation);
  }
}

TEST_CASE("empty config produces an empty passing suite") {
  Json suite = run_all(Json{{"scenarios", Json::array()}});
  CHECK(suite["suite_pass"].get<bool>());
  CHECK(suite["reports"].empty());
  CHECK(suite["errors"].empty());
}

TEST_CASE("suite isolates unknown scenarios and keeps going") {
  Json config;
  config["seed"] = 3;
  config["scenarios"] = Json::array({Json{{"name", "separation"}, {"lattice", "chain:3"}},
                                     Json{{"name", "bogus"}},
                                     Json{{"name", "strong-unit"}}});
  Json suite = run_all(config);
  CHECK(suite["reports"].size() == 2);
  CHECK(suite["errors"].size() == 1);
  CHECK(suite["errors"][0]["error"] == "UnknownScenario");
  CHECK_FALSE(suite["suite_pass"].get<bool>());
}

TEST_CASE("fixed-seed canonical suites serialize byte-identically") {
  Json config;
  config["seed"] = 11;
  config["canonical"] = true;
  config["scenarios"] = Json::array(
      {Json{{"name", "separation"}, {"lattice", "chain:4"}},
       Json{{"name", "density-family"}, {"gamma_size", 2}},
       Json{{"name", "connectivity"}, {"points", 30}, {"steps", 30}, {"zero_samples", 10}},
       Json{{"name", "order-density-demo"}, {"grid", 8}}});
  std::string a = run_all(config).dump();
  std::string b = run_all(config).dump();
  CHECK(a == b);
}

TEST_CASE("volatile fields are present by default and absent in canonical mode") {
  ScenarioReport report = run_scenario("separation", small_params("separation"));
  Json full = report_to_json(report, false);
  Json canon = report_to_json(report, true);
  CHECK(full.contains("timestamp"));
  CHECK(full.contains("runtime_ms"));
  CHECK_FALSE(canon.contains("timestamp"));
  CHECK_FALSE(canon.contains("runtime_ms"));
}

TEST_CASE("parallel suites produce the same reports as sequential ones") {
  Json config;
  config["seed"] = 5;
  config["canonical"] = true;
  config["scenarios"] = Json::array({Json{{"name", "separation"}, {"lattice", "chain:3"}},
                                     Json{{"name", "strong-unit"}},
                                     Json{{"name", "density-family"}}});
  Json seq = run_all(config);
  config["jobs"] = 3;
  Json par = run_all(config);
  CHECK(seq == par);
}

TEST_CASE("the default suite config lists every scenario once") {
  Json config = default_suite_config();
  REQUIRE(config.contains("scenarios"));
  std::set<std::string> seen;
  for (const auto& s : config["scenarios"]) seen.insert(s["name"].get<std::string>());
  for (const std::string& name : scenario_names()) CHECK(seen.count(name) == 1);
}
