#include "fbllab.h"

#include "fbl/json_io.hpp"
#include "fbl/norm.hpp"
#include "fbl/scenario.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

struct fbl_lattice {
  fbl::LatticePtr ptr;
};

struct fbl_expr {
  fbl::Expr expr;
};

namespace {

thread_local std::string g_last_error;

fbl_status status_of(fbl::Errc code) {
  using fbl::Errc;
  switch (code) {
    case Errc::parse: return FBL_E_PARSE;
    case Errc::io: return FBL_E_IO;
    case Errc::cyclic_order: return FBL_E_CYCLIC_ORDER;
    case Errc::not_a_lattice: return FBL_E_NOT_A_LATTICE;
    case Errc::not_distributive: return FBL_E_NOT_DISTRIBUTIVE;
    case Errc::not_a_hom: return FBL_E_NOT_A_HOM;
    case Errc::not_irreducible: return FBL_E_NOT_IRREDUCIBLE;
    case Errc::order_violation: return FBL_E_ORDER_VIOLATION;
    case Errc::coordinate_order_violation: return FBL_E_COORDINATE_ORDER;
    case Errc::range_violation: return FBL_E_RANGE;
    case Errc::lattice_mismatch: return FBL_E_LATTICE_MISMATCH;
    case Errc::trivial_lattice: return FBL_E_TRIVIAL_LATTICE;
    case Errc::empty_separating_set: return FBL_E_EMPTY_SEPARATING_SET;
    case Errc::unknown_name: return FBL_E_UNKNOWN_NAME;
    case Errc::missing_param: return FBL_E_MISSING_PARAM;
    case Errc::param_error: return FBL_E_PARAM;
    case Errc::unknown_scenario: return FBL_E_UNKNOWN_SCENARIO;
    case Errc::internal: return FBL_E_INTERNAL;
  }
  return FBL_E_INTERNAL;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
fbl_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return FBL_OK;
  } catch (const fbl::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FBL_E_INTERNAL;
  }
}

fbl_status require(bool cond, const char* message) {
  if (cond) return FBL_OK;
  g_last_error = message;
  return FBL_E_PARAM;
}

}  // namespace

extern "C" {

int fbl_version(void) { return 10000; }

const char* fbl_status_name(fbl_status status) {
  switch (status) {
    case FBL_OK: return "OK";
    case FBL_E_PARSE: return "ParseError";
    case FBL_E_IO: return "IoError";
    case FBL_E_CYCLIC_ORDER: return "CyclicOrder";
    case FBL_E_NOT_A_LATTICE: return "NotALattice";
    case FBL_E_NOT_DISTRIBUTIVE: return "NotDistributive";
    case FBL_E_NOT_A_HOM: return "NotAHomomorphism";
    case FBL_E_NOT_IRREDUCIBLE: return "NotIrreducible";
    case FBL_E_ORDER_VIOLATION: return "OrderViolation";
    case FBL_E_COORDINATE_ORDER: return "CoordinateOrderViolation";
    case FBL_E_RANGE: return "RangeViolation";
    case FBL_E_LATTICE_MISMATCH: return "LatticeMismatch";
    case FBL_E_TRIVIAL_LATTICE: return "TrivialLattice";
    case FBL_E_EMPTY_SEPARATING_SET: return "EmptySeparatingSet";
    case FBL_E_UNKNOWN_NAME: return "UnknownName";
    case FBL_E_MISSING_PARAM: return "MissingParam";
    case FBL_E_PARAM: return "ParamError";
    case FBL_E_UNKNOWN_SCENARIO: return "UnknownScenario";
    case FBL_E_INTERNAL: return "InternalError";
  }
  return "UnknownStatus";
}

const char* fbl_last_error(void) { return g_last_error.c_str(); }

void fbl_string_free(char* text) { ::free(text); }

fbl_status fbl_lattice_from_json(const char* json, fbl_lattice** out) {
  if (auto st = require(json && out, "null argument")) return st;
  return guarded([&] {
    fbl::Json j = fbl::parse_json_text(json);
    *out = new fbl_lattice{fbl::lattice_from_json(j)};
  });
}

fbl_status fbl_lattice_builtin(const char* descriptor, fbl_lattice** out) {
  if (auto st = require(descriptor && out, "null argument")) return st;
  return guarded([&] { *out = new fbl_lattice{fbl::builtin_lattice(descriptor)}; });
}

fbl_status fbl_lattice_to_json(const fbl_lattice* lattice, char** out_json) {
  if (auto st = require(lattice && out_json, "null argument")) return st;
  return guarded([&] { *out_json = dup_string(fbl::lattice_to_json(*lattice->ptr).dump()); });
}

fbl_status fbl_lattice_opposite(const fbl_lattice* lattice, fbl_lattice** out) {
  if (auto st = require(lattice && out, "null argument")) return st;
  return guarded([&] { *out = new fbl_lattice{fbl::opposite_lattice(lattice->ptr)}; });
}

int fbl_lattice_size(const fbl_lattice* lattice) {
  return lattice ? lattice->ptr->size() : 0;
}

void fbl_lattice_free(fbl_lattice* lattice) { delete lattice; }

fbl_status fbl_dual_cells_json(const fbl_lattice* lattice, char** out_json) {
  if (auto st = require(lattice && out_json, "null argument")) return st;
  return guarded([&] {
    auto cells = fbl::enumerate_cells(*lattice->ptr);
    *out_json = dup_string(fbl::cells_to_json(*lattice->ptr, cells).dump());
  });
}

fbl_status fbl_membership(const fbl_lattice* lattice, const char* point_json,
                          int* out_is_member) {
  if (auto st = require(lattice && point_json && out_is_member, "null argument")) return st;
  return guarded([&] {
    fbl::Json j = fbl::parse_json_text(point_json);
    if (!j.is_object() || !j.contains("values") || !j["values"].is_object())
      throw fbl::Error(fbl::Errc::parse, "point JSON needs a 'values' object");
    std::vector<fbl::Rat> values(lattice->ptr->size());
    std::vector<bool> seen(lattice->ptr->size(), false);
    for (const auto& [label, v] : j["values"].items()) {
      int idx = lattice->ptr->index(label);
      values[idx] = v.is_string() ? fbl::parse_rat(v.get<std::string>())
                                  : fbl::Rat(v.get<long long>());
      seen[idx] = true;
    }
    for (bool s : seen)
      if (!s) throw fbl::Error(fbl::Errc::parse, "point JSON misses an element");
    *out_is_member = fbl::is_dual_point(*lattice->ptr, values) ? 1 : 0;
  });
}

fbl_status fbl_sample_points_json(const fbl_lattice* lattice, int count, uint64_t seed,
                                  char** out_json) {
  if (auto st = require(lattice && out_json, "null argument")) return st;
  return guarded([&] {
    fbl::DualSample sample = fbl::sample_points(lattice->ptr, count, seed);
    fbl::Json points = fbl::Json::array();
    for (size_t i = 0; i < sample.points.size(); ++i) {
      fbl::Json p = fbl::point_to_json(sample.points[i]);
      p["cell"] = sample.provenance[i].cell;
      points.push_back(p);
    }
    fbl::Json out{{"seed", seed}, {"points", points}};
    *out_json = dup_string(out.dump());
  });
}

fbl_status fbl_expr_from_json(const fbl_lattice* lattice, const char* json, fbl_expr** out) {
  if (auto st = require(lattice && json && out, "null argument")) return st;
  return guarded([&] {
    fbl::Json j = fbl::parse_json_text(json);
    *out = new fbl_expr{fbl::expr_from_json(lattice->ptr, j)};
  });
}

fbl_status fbl_expr_named(const fbl_lattice* lattice, const char* name,
                          const char* params_json, fbl_expr** out) {
  if (auto st = require(lattice && name && out, "null argument")) return st;
  return guarded([&] {
    std::map<std::string, std::string> params;
    if (params_json && *params_json) {
      fbl::Json j = fbl::parse_json_text(params_json);
      for (const auto& [key, value] : j.items())
        params[key] = value.is_string() ? value.get<std::string>() : value.dump();
    }
    *out = new fbl_expr{fbl::builtin_expr(name, lattice->ptr, params)};
  });
}

fbl_status fbl_expr_to_json(const fbl_expr* expr, char** out_json) {
  if (auto st = require(expr && out_json, "null argument")) return st;
  return guarded([&] { *out_json = dup_string(fbl::expr_to_json(expr->expr).dump()); });
}

void fbl_expr_free(fbl_expr* expr) { delete expr; }

fbl_status fbl_eval(const fbl_expr* expr, const char* point_json, char** out_value) {
  if (auto st = require(expr && point_json && out_value, "null argument")) return st;
  return guarded([&] {
    fbl::Json j = fbl::parse_json_text(point_json);
    fbl::DualPoint p = fbl::point_from_json(expr->expr.lattice(), j);
    *out_value = dup_string(fbl::rat_str(fbl::eval(expr->expr, p)));
  });
}

fbl_status fbl_sup_norm(const fbl_expr* expr, const char* eps, uint64_t node_budget_per_cell,
                        char** out_json) {
  if (auto st = require(expr && eps && out_json, "null argument")) return st;
  return guarded([&] {
    fbl::SupNormCertificate cert =
        fbl::sup_norm(expr->expr, fbl::parse_rat(eps),
                      node_budget_per_cell ? node_budget_per_cell : 100000);
    *out_json = dup_string(fbl::supnorm_to_json(cert).dump());
  });
}

fbl_status fbl_free_norm(const fbl_expr* expr, int m, uint64_t vertex_tuple_cap,
                         int ascent_starts, int ascent_iters, uint64_t seed, char** out_json) {
  if (auto st = require(expr && out_json, "null argument")) return st;
  return guarded([&] {
    fbl::SearchBudget budget;
    if (vertex_tuple_cap) budget.vertex_tuple_cap = vertex_tuple_cap;
    if (ascent_starts > 0) budget.ascent_starts = ascent_starts;
    if (ascent_iters > 0) budget.ascent_iters = ascent_iters;
    fbl::NormEstimate est = fbl::free_norm_lower(expr->expr, m, budget, seed);
    *out_json = dup_string(fbl::estimate_to_json(est).dump());
  });
}

fbl_status fbl_scenario_names(char** out_json) {
  if (auto st = require(out_json != nullptr, "null argument")) return st;
  return guarded([&] {
    fbl::Json names = fbl::Json::array();
    for (const auto& n : fbl::scenario_names()) names.push_back(n);
    *out_json = dup_string(names.dump());
  });
}

fbl_status fbl_scenario_run(const char* name, const char* params_json, int canonical,
                            char** out_report_json) {
  if (auto st = require(name && out_report_json, "null argument")) return st;
  return guarded([&] {
    fbl::Json params = fbl::Json::object();
    if (params_json && *params_json) params = fbl::parse_json_text(params_json);
    fbl::ScenarioReport report = fbl::run_scenario(name, params);
    *out_report_json = dup_string(fbl::report_to_json(report, canonical != 0).dump());
  });
}

fbl_status fbl_run_all(const char* config_json, char** out_suite_json) {
  if (auto st = require(config_json && out_suite_json, "null argument")) return st;
  return guarded([&] {
    fbl::Json config = fbl::parse_json_text(config_json);
    *out_suite_json = dup_string(fbl::run_all(config).dump());
  });
}

fbl_status fbl_default_suite_config(char** out_json) {
  if (auto st = require(out_json != nullptr, "null argument")) return st;
  return guarded([&] { *out_json = dup_string(fbl::default_suite_config().dump()); });
}

}  // extern "C"
