// fbllab - exact computations in free Banach lattices over finite
// distributive lattices. The CLI talks to the core exclusively through the
// C API in fbllab.h; everything structured crosses as JSON.

#include "fbllab.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace {

using Json = nlohmann::json;
namespace fs = std::filesystem;

struct LatticeHandle {
  fbl_lattice* ptr = nullptr;
  ~LatticeHandle() { fbl_lattice_free(ptr); }
};

struct ExprHandle {
  fbl_expr* ptr = nullptr;
  ~ExprHandle() { fbl_expr_free(ptr); }
};

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { fbl_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

[[noreturn]] void fail(fbl_status status) {
  std::cerr << "error: " << fbl_status_name(status) << ": " << fbl_last_error() << "\n";
  std::exit(2);
}

void check(fbl_status status) {
  if (status != FBL_OK) fail(status);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read '" << path << "'\n";
    std::exit(2);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A lattice argument is a file path when the file exists, otherwise a
// builtin descriptor like "chain:4".
void load_lattice(const std::string& arg, LatticeHandle& handle) {
  if (fs::exists(arg)) {
    check(fbl_lattice_from_json(read_file(arg).c_str(), &handle.ptr));
  } else {
    check(fbl_lattice_builtin(arg.c_str(), &handle.ptr));
  }
}

Json lattice_arg_to_json(const std::string& arg) {
  if (fs::exists(arg)) return Json::parse(read_file(arg));
  return Json(arg);  // builtin descriptor string
}

// Expression argument: inline JSON, a file path, or "name:<named>[:params]".
void load_expr(const LatticeHandle& lattice, const std::string& arg, ExprHandle& handle) {
  if (arg.rfind("name:", 0) == 0) {
    std::string rest = arg.substr(5);
    std::string name = rest;
    std::string params;
    if (auto colon = rest.find(':'); colon != std::string::npos) {
      name = rest.substr(0, colon);
      params = rest.substr(colon + 1);
    }
    check(fbl_expr_named(lattice.ptr, name.c_str(), params.empty() ? nullptr : params.c_str(),
                         &handle.ptr));
    return;
  }
  std::string text = arg;
  if (!arg.empty() && arg[0] != '{' && fs::exists(arg)) text = read_file(arg);
  check(fbl_expr_from_json(lattice.ptr, text.c_str(), &handle.ptr));
}

std::string load_point_text(const std::string& arg) {
  if (!arg.empty() && arg[0] != '{' && fs::exists(arg)) return read_file(arg);
  return arg;
}

std::string output_path(const std::string& name) {
  if (name.empty() || fs::path(name).is_absolute()) return name;
  const char* dir = std::getenv("FBLLAB_OUTPUT_DIR");
  if (!dir || !*dir) return name;
  return (fs::path(dir) / name).string();
}

void emit(const std::string& text, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::string path = output_path(out_file);
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    std::exit(2);
  }
  out << text << "\n";
}

std::string pad(const std::string& s, size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

void render_report_text(const Json& report, std::ostream& os) {
  os << "scenario: " << report.value("scenario", std::string("?")) << "\n";
  os << "lattice:  " << report.value("lattice", std::string("?")) << "\n";
  os << "seed:     " << report.value("seed", std::uint64_t(0)) << "\n";
  size_t wd = 11, we = 8, wo = 8;
  for (const auto& c : report["checks"]) {
    wd = std::max(wd, c.value("description", std::string()).size());
    we = std::max(we, c.value("expected", std::string()).size());
    wo = std::max(wo, c.value("observed", std::string()).size());
  }
  os << pad("check", wd) << "  " << pad("expected", we) << "  " << pad("observed", wo)
     << "  result\n";
  for (const auto& c : report["checks"]) {
    os << pad(c.value("description", std::string()), wd) << "  "
       << pad(c.value("expected", std::string()), we) << "  "
       << pad(c.value("observed", std::string()), wo) << "  "
       << (c.value("pass", false) ? "pass" : "FAIL") << "\n";
  }
  for (const auto& cav : report.value("caveats", Json::array()))
    os << "note: " << cav.get<std::string>() << "\n";
  os << (report.value("pass", false) ? "PASS" : "FAIL") << "\n";
}

void render_suite_text(const Json& suite, std::ostream& os) {
  size_t wn = 8;
  for (const auto& r : suite["reports"])
    wn = std::max(wn, r.value("scenario", std::string()).size());
  for (const auto& r : suite["reports"]) {
    int total = static_cast<int>(r["checks"].size());
    int good = 0;
    for (const auto& c : r["checks"])
      if (c.value("pass", false)) ++good;
    os << pad(r.value("scenario", std::string()), wn) << "  " << good << "/" << total
       << " checks  " << (r.value("pass", false) ? "pass" : "FAIL") << "\n";
  }
  for (const auto& e : suite.value("errors", Json::array()))
    os << pad(e.value("scenario", std::string()), wn) << "  error: "
       << e.value("message", std::string()) << "\n";
  os << (suite.value("suite_pass", false) ? "SUITE PASS" : "SUITE FAIL") << "\n";
}

void render_cells_text(const Json& cells, std::ostream& os) {
  os << "lattice: " << cells.value("lattice", std::string()) << "\n";
  os << "cells:   " << cells.value("count", 0) << "\n";
  for (const auto& c : cells["cells"]) {
    os << "  [" << c.value("index", 0) << "] dim " << c.value("dim", 0) << "  chain:";
    for (const auto& p : c["chain"]) os << " " << p.get<std::string>();
    os << "\n      blocks:";
    for (const auto& [elem, idx] : c["blocks"].items()) os << " " << elem << "=" << idx;
    os << "\n";
  }
}

// whole integers and booleans get typed; anything else stays a string so
// element labels like "{}" or "{1,2}" pass through untouched
Json parse_param_value(const std::string& value) {
  if (!value.empty() && (std::isdigit(value[0]) || value[0] == '-')) {
    try {
      size_t used = 0;
      long long n = std::stoll(value, &used);
      if (used == value.size()) return Json(n);
    } catch (const std::exception&) {
    }
  }
  if (value == "true") return Json(true);
  if (value == "false") return Json(false);
  return Json(value);
}

// The hom file schema references lattice files by path; inline both before
// handing the structure to the core.
Json resolve_hom_file(const std::string& path) {
  Json hom = Json::parse(read_file(path));
  fs::path base = fs::path(path).parent_path();
  for (const char* key : {"source", "target"}) {
    if (hom.contains(key) && hom[key].is_string()) {
      std::string ref = hom[key].get<std::string>();
      fs::path candidate = base / ref;
      if (fs::exists(candidate))
        hom[key] = Json::parse(read_file(candidate.string()));
      else if (fs::exists(ref))
        hom[key] = Json::parse(read_file(ref));
      // otherwise keep the string: it may be a builtin descriptor
    }
  }
  return hom;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact free-Banach-lattice computations over finite distributive lattices"};
  app.require_subcommand(1);

  std::string lattice_arg, expr_arg, point_arg, output = "text", out_file;
  bool canonical = false;

  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--output", output, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--out", out_file, "write the result to this file");
  };

  // dual-cells
  auto* cells_cmd = app.add_subcommand("dual-cells", "enumerate the cells of the dual object");
  cells_cmd->add_option("--lattice", lattice_arg, "lattice file or builtin descriptor")
      ->required();
  add_output(cells_cmd);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression at a dual point");
  eval_cmd->add_option("--lattice", lattice_arg)->required();
  eval_cmd->add_option("--expr", expr_arg, "expression file, inline JSON, or name:<named>")
      ->required();
  eval_cmd->add_option("--point", point_arg, "point file or inline JSON")->required();
  add_output(eval_cmd);

  // sup-norm
  std::string eps = "1/1000";
  std::uint64_t budget = 100000;
  auto* sup_cmd = app.add_subcommand("sup-norm", "certified sup-norm over the dual object");
  sup_cmd->add_option("--lattice", lattice_arg)->required();
  sup_cmd->add_option("--expr", expr_arg)->required();
  sup_cmd->add_option("--eps", eps, "certificate gap (rational)");
  sup_cmd->add_option("--budget", budget, "branch-and-bound node budget per cell");
  add_output(sup_cmd);

  // free-norm
  int m = 4;
  int starts = 64, iters = 200;
  std::uint64_t tuple_cap = 1000000, seed = 2024;
  auto* free_cmd = app.add_subcommand("free-norm", "certified free-norm lower bound");
  free_cmd->add_option("--lattice", lattice_arg)->required();
  free_cmd->add_option("--expr", expr_arg)->required();
  free_cmd->add_option("--m", m, "maximal witness tuple size (searches 1..m)");
  free_cmd->add_option("--budget", tuple_cap, "vertex tuple cap");
  free_cmd->add_option("--starts", starts, "ascent restarts per tuple size");
  free_cmd->add_option("--iters", iters, "ascent iterations per restart");
  free_cmd->add_option("--seed", seed, "search seed");
  add_output(free_cmd);

  // scenario
  std::string scenario_name, hom_file, scen_eps;
  std::vector<std::string> raw_params;
  std::uint64_t scen_seed = 2024;
  bool seed_given = false;
  auto* scen_cmd = app.add_subcommand("scenario", "run one named verification scenario");
  scen_cmd->add_option("name", scenario_name, "scenario name")->required();
  scen_cmd->add_option("--lattice", lattice_arg, "lattice file or builtin descriptor");
  scen_cmd->add_option("--hom", hom_file, "homomorphism file");
  scen_cmd->add_option("--seed", scen_seed)->each([&](const std::string&) { seed_given = true; });
  scen_cmd->add_option("--eps", scen_eps, "tolerance (rational)");
  scen_cmd->add_option("--param", raw_params, "extra key=value scenario parameters");
  scen_cmd->add_flag("--canonical", canonical, "omit volatile fields (timestamp, runtime)");
  add_output(scen_cmd);

  // run-all
  std::string config_file;
  int jobs = 1;
  auto* all_cmd = app.add_subcommand("run-all", "run a scenario suite from a config file");
  all_cmd->add_option("--config", config_file, "suite config (defaults to the built-in suite)");
  all_cmd->add_option("--jobs", jobs, "run scenarios in parallel");
  all_cmd->add_flag("--canonical", canonical, "omit volatile fields (timestamp, runtime)");
  add_output(all_cmd);

  // list-scenarios
  auto* list_cmd = app.add_subcommand("list-scenarios", "list scenario names");
  add_output(list_cmd);

  CLI11_PARSE(app, argc, argv);

  if (cells_cmd->parsed()) {
    LatticeHandle lattice;
    load_lattice(lattice_arg, lattice);
    OwnedString text;
    check(fbl_dual_cells_json(lattice.ptr, &text.ptr));
    if (output == "json") {
      emit(text.str(), out_file);
    } else {
      std::ostringstream os;
      render_cells_text(Json::parse(text.str()), os);
      emit(os.str(), out_file);
    }
    return 0;
  }

  if (eval_cmd->parsed()) {
    LatticeHandle lattice;
    load_lattice(lattice_arg, lattice);
    ExprHandle expr;
    load_expr(lattice, expr_arg, expr);
    OwnedString value;
    check(fbl_eval(expr.ptr, load_point_text(point_arg).c_str(), &value.ptr));
    if (output == "json")
      emit(Json{{"value", value.str()}}.dump(), out_file);
    else
      emit(value.str(), out_file);
    return 0;
  }

  if (sup_cmd->parsed()) {
    LatticeHandle lattice;
    load_lattice(lattice_arg, lattice);
    ExprHandle expr;
    load_expr(lattice, expr_arg, expr);
    OwnedString text;
    check(fbl_sup_norm(expr.ptr, eps.c_str(), budget, &text.ptr));
    if (output == "json") {
      emit(text.str(), out_file);
    } else {
      Json j = Json::parse(text.str());
      std::ostringstream os;
      os << "value_low  " << j.value("value_low", std::string()) << "\n"
         << "value_high " << j.value("value_high", std::string()) << "\n"
         << "nodes      " << j.value("nodes", 0) << "\n"
         << "exhausted  " << (j.value("budget_exhausted", false) ? "yes" : "no");
      emit(os.str(), out_file);
    }
    return 0;
  }

  if (free_cmd->parsed()) {
    LatticeHandle lattice;
    load_lattice(lattice_arg, lattice);
    ExprHandle expr;
    load_expr(lattice, expr_arg, expr);
    OwnedString text;
    check(fbl_free_norm(expr.ptr, m, tuple_cap, starts, iters, seed, &text.ptr));
    if (output == "json") {
      emit(text.str(), out_file);
    } else {
      Json j = Json::parse(text.str());
      std::ostringstream os;
      os << "lower      " << j.value("lower", std::string()) << "\n"
         << "upper      " << j.value("upper", std::string()) << "\n"
         << "objective  " << j.value("objective", std::string()) << "\n"
         << "constraint " << j.value("constraint", std::string()) << "\n"
         << "witness    " << j["witness"].size() << " point(s)";
      emit(os.str(), out_file);
    }
    return 0;
  }

  if (scen_cmd->parsed()) {
    Json params = Json::object();
    if (!lattice_arg.empty()) params["lattice"] = lattice_arg_to_json(lattice_arg);
    if (!hom_file.empty()) params["hom"] = resolve_hom_file(hom_file);
    if (seed_given) params["seed"] = scen_seed;
    if (!scen_eps.empty()) params["eps"] = scen_eps;
    for (const auto& kv : raw_params) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::cerr << "error: --param expects key=value, got '" << kv << "'\n";
        return 2;
      }
      params[kv.substr(0, eq)] = parse_param_value(kv.substr(eq + 1));
    }
    OwnedString text;
    check(fbl_scenario_run(scenario_name.c_str(), params.dump().c_str(), canonical ? 1 : 0,
                           &text.ptr));
    Json report = Json::parse(text.str());
    if (output == "json") {
      emit(report.dump(2), out_file);
    } else {
      std::ostringstream os;
      render_report_text(report, os);
      emit(os.str(), out_file);
    }
    return report.value("pass", false) ? 0 : 1;
  }

  if (all_cmd->parsed()) {
    Json config;
    if (config_file.empty()) {
      OwnedString def;
      check(fbl_default_suite_config(&def.ptr));
      config = Json::parse(def.str());
    } else {
      config = Json::parse(read_file(config_file));
    }
    if (canonical) config["canonical"] = true;
    if (jobs > 1) config["jobs"] = jobs;
    OwnedString text;
    check(fbl_run_all(config.dump().c_str(), &text.ptr));
    Json suite = Json::parse(text.str());
    if (output == "json") {
      emit(suite.dump(2), out_file);
    } else {
      std::ostringstream os;
      render_suite_text(suite, os);
      emit(os.str(), out_file);
    }
    return suite.value("suite_pass", false) ? 0 : 1;
  }

  if (list_cmd->parsed()) {
    OwnedString text;
    check(fbl_scenario_names(&text.ptr));
    if (output == "json") {
      emit(text.str(), out_file);
    } else {
      std::ostringstream os;
      bool first = true;
      for (const auto& n : Json::parse(text.str())) {
        if (!first) os << "\n";
        os << n.get<std::string>();
        first = false;
      }
      emit(os.str(), out_file);
    }
    return 0;
  }

  return 0;
}
