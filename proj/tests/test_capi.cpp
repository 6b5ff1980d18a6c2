#include "fbllab.h"

#include <doctest.h>
#include <json.hpp>

#include <string>

using Json = nlohmann::json;

namespace {

struct Str {
  char* ptr = nullptr;
  ~Str() { fbl_string_free(ptr); }
  std::string get() const { return ptr ? ptr : ""; }
};

}  // namespace

TEST_CASE("lattice lifecycle through the C surface") {
  fbl_lattice* lattice = nullptr;
  REQUIRE(fbl_lattice_builtin("powerset:2", &lattice) == FBL_OK);
  CHECK(fbl_lattice_size(lattice) == 4);

  Str json;
  REQUIRE(fbl_lattice_to_json(lattice, &json.ptr) == FBL_OK);
  Json j = Json::parse(json.get());
  CHECK(j["elements"].size() == 4);

  fbl_lattice* reparsed = nullptr;
  REQUIRE(fbl_lattice_from_json(json.get().c_str(), &reparsed) == FBL_OK);
  CHECK(fbl_lattice_size(reparsed) == 4);

  fbl_lattice* op = nullptr;
  REQUIRE(fbl_lattice_opposite(lattice, &op) == FBL_OK);
  CHECK(fbl_lattice_size(op) == 4);

  fbl_lattice_free(op);
  fbl_lattice_free(reparsed);
  fbl_lattice_free(lattice);
}

TEST_CASE("status codes surface the named error conditions") {
  fbl_lattice* lattice = nullptr;
  CHECK(fbl_lattice_builtin("diamond", &lattice) == FBL_E_NOT_DISTRIBUTIVE);
  CHECK(std::string(fbl_last_error()).find("distributivity") != std::string::npos);
  CHECK(fbl_lattice_builtin("no_such_family", &lattice) == FBL_E_UNKNOWN_NAME);
  CHECK(fbl_lattice_from_json("{not json", &lattice) == FBL_E_PARSE);
  CHECK(fbl_lattice_from_json(nullptr, &lattice) == FBL_E_PARAM);
  CHECK(std::string(fbl_status_name(FBL_E_NOT_DISTRIBUTIVE)) == "NotDistributive");

  const char* cyclic =
      R"({"elements":["a","b"],"order":[["a","b"],["b","a"]],"order_kind":"leq"})";
  CHECK(fbl_lattice_from_json(cyclic, &lattice) == FBL_E_CYCLIC_ORDER);
  const char* no_bounds = R"({"elements":["a","b"],"order":[],"order_kind":"covers"})";
  CHECK(fbl_lattice_from_json(no_bounds, &lattice) == FBL_E_NOT_A_LATTICE);
}

TEST_CASE("dual cell enumeration over the C surface") {
  fbl_lattice* lattice = nullptr;
  REQUIRE(fbl_lattice_builtin("powerset:2", &lattice) == FBL_OK);
  Str cells;
  REQUIRE(fbl_dual_cells_json(lattice, &cells.ptr) == FBL_OK);
  Json j = Json::parse(cells.get());
  CHECK(j["count"] == 2);
  CHECK(j["cells"].size() == 2);
  CHECK(j["cells"][0]["dim"] == 2);
  fbl_lattice_free(lattice);
}

TEST_CASE("membership and sampling") {
  fbl_lattice* chain = nullptr;
  REQUIRE(fbl_lattice_builtin("chain:2", &chain) == FBL_OK);
  int member = -1;
  REQUIRE(fbl_membership(chain, R"({"values":{"e0":"0","e1":"1"}})", &member) == FBL_OK);
  CHECK(member == 1);
  REQUIRE(fbl_membership(chain, R"({"values":{"e0":"1","e1":"-1"}})", &member) == FBL_OK);
  CHECK(member == 0);

  Str sample;
  REQUIRE(fbl_sample_points_json(chain, 5, 99, &sample.ptr) == FBL_OK);
  Json js = Json::parse(sample.get());
  CHECK(js["points"].size() == 5);
  Str sample2;
  REQUIRE(fbl_sample_points_json(chain, 5, 99, &sample2.ptr) == FBL_OK);
  CHECK(sample.get() == sample2.get());
  fbl_lattice_free(chain);
}

TEST_CASE("expressions, evaluation, and norms") {
  fbl_lattice* lattice = nullptr;
  REQUIRE(fbl_lattice_builtin("bottomed_powerset:2", &lattice) == FBL_OK);

  fbl_expr* f1 = nullptr;
  REQUIRE(fbl_expr_named(lattice, "f_gamma", R"({"gamma":"1"})", &f1) == FBL_OK);
  Str value;
  const char* x1 =
      R"({"values":{"0hat":"-1","{}":"0","{1}":"1","{2}":"0","{1,2}":"1"}})";
  REQUIRE(fbl_eval(f1, x1, &value.ptr) == FBL_OK);
  CHECK(value.get() == "0");

  Str fjson;
  REQUIRE(fbl_expr_to_json(f1, &fjson.ptr) == FBL_OK);
  fbl_expr* round = nullptr;
  REQUIRE(fbl_expr_from_json(lattice, fjson.get().c_str(), &round) == FBL_OK);
  Str value2;
  REQUIRE(fbl_eval(round, x1, &value2.ptr) == FBL_OK);
  CHECK(value2.get() == "0");

  fbl_expr* unit = nullptr;
  REQUIRE(fbl_expr_named(lattice, "strong_unit_candidate", nullptr, &unit) == FBL_OK);
  Str sup;
  REQUIRE(fbl_sup_norm(unit, "1/1000", 0, &sup.ptr) == FBL_OK);
  Json sj = Json::parse(sup.get());
  CHECK(sj["value_low"] == "1");
  CHECK(sj["value_high"] == "1");

  // free norm of a plain generator is exactly 1 at any tuple size
  fbl_expr* gen = nullptr;
  REQUIRE(fbl_expr_from_json(lattice, R"({"op":"gen","elem":"0hat"})", &gen) == FBL_OK);
  Str norm;
  REQUIRE(fbl_free_norm(gen, 2, 0, 0, 0, 7, &norm.ptr) == FBL_OK);
  Json nj = Json::parse(norm.get());
  CHECK(nj["lower"] == "1");
  CHECK(nj["upper"] == "inf");
  CHECK(nj["witness"].size() >= 1);

  fbl_expr_free(gen);
  fbl_expr_free(unit);
  fbl_expr_free(round);
  fbl_expr_free(f1);
  fbl_lattice_free(lattice);
}

TEST_CASE("lattice mismatch is reported across the boundary") {
  fbl_lattice* a = nullptr;
  fbl_lattice* b = nullptr;
  REQUIRE(fbl_lattice_builtin("chain:2", &a) == FBL_OK);
  REQUIRE(fbl_lattice_builtin("chain:3", &b) == FBL_OK);
  fbl_expr* f = nullptr;
  REQUIRE(fbl_expr_from_json(a, R"({"op":"gen","elem":"e0"})", &f) == FBL_OK);
  Str value;
  CHECK(fbl_eval(f, R"({"values":{"e0":"0","e1":"0","e2":"0"}})", &value.ptr) != FBL_OK);
  fbl_expr_free(f);
  fbl_lattice_free(b);
  fbl_lattice_free(a);
}

TEST_CASE("scenario execution and suite determinism through the C surface") {
  Str names;
  REQUIRE(fbl_scenario_names(&names.ptr) == FBL_OK);
  Json jn = Json::parse(names.get());
  CHECK(jn.size() == 11);

  Str report;
  REQUIRE(fbl_scenario_run("separation", R"({"lattice":"chain:3","seed":5})", 1,
                           &report.ptr) == FBL_OK);
  Json jr = Json::parse(report.get());
  CHECK(jr["pass"].get<bool>());
  CHECK_FALSE(jr.contains("timestamp"));

  CHECK(fbl_scenario_run("nope", "{}", 0, &report.ptr) == FBL_E_UNKNOWN_SCENARIO);

  const char* config = R"({"seed": 4, "canonical": true, "scenarios": [
      {"name": "separation", "lattice": "chain:3"},
      {"name": "density-family", "gamma_size": 2}]})";
  Str a, b;
  REQUIRE(fbl_run_all(config, &a.ptr) == FBL_OK);
  REQUIRE(fbl_run_all(config, &b.ptr) == FBL_OK);
  CHECK(a.get() == b.get());
  CHECK(Json::parse(a.get())["suite_pass"].get<bool>());

  Str def;
  REQUIRE(fbl_default_suite_config(&def.ptr) == FBL_OK);
  CHECK(Json::parse(def.get()).contains("scenarios"));
}
