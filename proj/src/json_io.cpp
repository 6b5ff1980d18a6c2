#include "fbl/json_io.hpp"

namespace fbl {

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(Errc::parse, std::string("bad JSON: ") + e.what());
  }
}

LatticeSpec lattice_spec_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::parse, "lattice JSON must be an object");
  LatticeSpec spec;
  spec.name = j.value("name", std::string("lattice"));
  if (!j.contains("elements") || !j["elements"].is_array())
    throw Error(Errc::parse, "lattice JSON needs an 'elements' array");
  for (const auto& e : j["elements"]) {
    if (!e.is_string()) throw Error(Errc::parse, "element labels must be strings");
    spec.elements.push_back(e.get<std::string>());
  }
  std::string kind = j.value("order_kind", std::string("covers"));
  if (kind == "covers")
    spec.covers = true;
  else if (kind == "leq")
    spec.covers = false;
  else
    throw Error(Errc::parse, "order_kind must be 'covers' or 'leq'");
  if (j.contains("order")) {
    if (!j["order"].is_array()) throw Error(Errc::parse, "'order' must be an array of pairs");
    for (const auto& pair : j["order"]) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
        throw Error(Errc::parse, "each order entry must be a [lo, hi] pair of strings");
      spec.order.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
    }
  }
  return spec;
}

Json lattice_to_json(const FiniteLattice& lattice) {
  LatticeSpec spec = lattice.to_spec();
  Json j;
  j["name"] = spec.name;
  j["elements"] = spec.elements;
  j["order_kind"] = "covers";
  Json order = Json::array();
  for (const auto& [lo, hi] : spec.order) order.push_back(Json::array({lo, hi}));
  j["order"] = order;
  return j;
}

LatticePtr lattice_from_json(const Json& j) {
  if (j.is_string()) return builtin_lattice(j.get<std::string>());
  return FiniteLattice::build(lattice_spec_from_json(j));
}

LatticeHom hom_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::parse, "homomorphism JSON must be an object");
  if (!j.contains("source") || !j.contains("target") || !j.contains("map"))
    throw Error(Errc::parse, "homomorphism JSON needs 'source', 'target', 'map'");
  LatticePtr source = lattice_from_json(j["source"]);
  LatticePtr target = lattice_from_json(j["target"]);
  if (!j["map"].is_object()) throw Error(Errc::parse, "'map' must be an object");
  std::vector<std::pair<std::string, std::string>> assignments;
  for (const auto& [from, to] : j["map"].items()) {
    if (!to.is_string()) throw Error(Errc::parse, "map values must be element labels");
    assignments.emplace_back(from, to.get<std::string>());
  }
  return LatticeHom::build_by_labels(std::move(source), std::move(target), assignments);
}

Json hom_to_json(const LatticeHom& hom) {
  Json j;
  j["source"] = lattice_to_json(*hom.source());
  j["target"] = lattice_to_json(*hom.target());
  Json map = Json::object();
  for (int i = 0; i < hom.source()->size(); ++i)
    map[hom.source()->label(i)] = hom.target()->label(hom.apply(i));
  j["map"] = map;
  return j;
}

DualPoint point_from_json(LatticePtr lattice, const Json& j) {
  if (!j.is_object() || !j.contains("values") || !j["values"].is_object())
    throw Error(Errc::parse, "point JSON needs a 'values' object");
  std::vector<Rat> values(lattice->size());
  std::vector<bool> seen(lattice->size(), false);
  for (const auto& [label, v] : j["values"].items()) {
    int idx = lattice->index(label);
    if (v.is_string())
      values[idx] = parse_rat(v.get<std::string>());
    else if (v.is_number_integer())
      values[idx] = Rat(v.get<long long>());
    else
      throw Error(Errc::parse, "point values must be rational strings or integers");
    seen[idx] = true;
  }
  for (int i = 0; i < lattice->size(); ++i)
    if (!seen[i])
      throw Error(Errc::parse, "point JSON misses element '" + lattice->label(i) + "'");
  return dual_point(std::move(lattice), std::move(values));
}

Json point_to_json(const DualPoint& point) {
  Json values = Json::object();
  for (int i = 0; i < point.lattice->size(); ++i)
    values[point.lattice->label(i)] = rat_str(point.values[i]);
  return Json{{"values", values}};
}

Expr expr_from_json(LatticePtr lattice, const Json& j) {
  if (!j.is_object() || !j.contains("op"))
    throw Error(Errc::parse, "expression JSON needs an 'op' field");
  std::string op = j["op"].get<std::string>();
  auto need = [&](const char* key) -> const Json& {
    if (!j.contains(key))
      throw Error(Errc::parse, "expression op '" + op + "' needs '" + key + "'");
    return j[key];
  };
  if (op == "gen") {
    const Json& e = need("elem");
    if (!e.is_string()) throw Error(Errc::parse, "'elem' must be an element label");
    return Expr::gen(lattice, e.get<std::string>());
  }
  if (op == "scale") {
    const Json& c = need("coef");
    Rat coef = c.is_string() ? parse_rat(c.get<std::string>()) : Rat(c.get<long long>());
    return Expr::scale(coef, expr_from_json(lattice, need("arg")));
  }
  if (op == "add" || op == "sup" || op == "inf") {
    const Json& args = need("args");
    if (!args.is_array() || args.size() < 2)
      throw Error(Errc::parse, "'args' must be an array of at least two expressions");
    Expr acc = expr_from_json(lattice, args[0]);
    for (size_t i = 1; i < args.size(); ++i) {
      Expr next = expr_from_json(lattice, args[i]);
      if (op == "add")
        acc = Expr::add(acc, next);
      else if (op == "sup")
        acc = Expr::sup(acc, next);
      else
        acc = Expr::inf(acc, next);
    }
    return acc;
  }
  if (op == "abs") return Expr::abs(expr_from_json(lattice, need("arg")));
  if (op == "pos") return Expr::pos(expr_from_json(lattice, need("arg")));
  throw Error(Errc::parse, "unknown expression op '" + op + "'");
}

Json expr_to_json(const Expr& f) {
  std::function<Json(const Expr::NodePtr&)> emit = [&](const Expr::NodePtr& node) -> Json {
    switch (node->kind) {
      case Expr::Kind::gen:
        return Json{{"op", "gen"}, {"elem", f.lattice()->label(node->elem)}};
      case Expr::Kind::scale:
        return Json{{"op", "scale"}, {"coef", rat_str(node->coef)}, {"arg", emit(node->a)}};
      case Expr::Kind::add:
        return Json{{"op", "add"}, {"args", Json::array({emit(node->a), emit(node->b)})}};
      case Expr::Kind::sup:
        return Json{{"op", "sup"}, {"args", Json::array({emit(node->a), emit(node->b)})}};
      case Expr::Kind::inf:
        return Json{{"op", "inf"}, {"args", Json::array({emit(node->a), emit(node->b)})}};
      case Expr::Kind::abs:
        return Json{{"op", "abs"}, {"arg", emit(node->a)}};
      case Expr::Kind::pos:
        return Json{{"op", "pos"}, {"arg", emit(node->a)}};
    }
    throw Error(Errc::internal, "bad expression node");
  };
  return emit(f.root());
}

Json cells_to_json(const FiniteLattice& lattice, const std::vector<Cell>& cells) {
  Json out;
  out["lattice"] = lattice.name();
  out["count"] = cells.size();
  Json arr = Json::array();
  for (size_t i = 0; i < cells.size(); ++i) {
    const Cell& cell = cells[i];
    Json c;
    c["index"] = i;
    Json chain = Json::array();
    for (int p : cell.chain) chain.push_back(lattice.label(p));
    c["chain"] = chain;
    Json blocks = Json::object();
    for (int z = 0; z < lattice.size(); ++z) blocks[lattice.label(z)] = cell.block[z];
    c["blocks"] = blocks;
    c["dim"] = cell.dim();
    arr.push_back(c);
  }
  out["cells"] = arr;
  return out;
}

Json supnorm_to_json(const SupNormCertificate& cert) {
  Json j;
  j["value_low"] = rat_str(cert.value_low);
  j["value_high"] = rat_str(cert.value_high);
  j["eps"] = rat_str(cert.eps);
  j["argmax_point"] = point_to_json(cert.argmax_point);
  j["nodes"] = cert.nodes;
  j["budget_exhausted"] = cert.budget_exhausted;
  return j;
}

Json estimate_to_json(const NormEstimate& estimate) {
  Json j;
  j["lower"] = rat_str(estimate.lower);
  j["upper"] = estimate.upper ? Json(rat_str(*estimate.upper)) : Json("inf");
  Json witness = Json::array();
  for (const auto& p : estimate.witness) witness.push_back(point_to_json(p));
  j["witness"] = witness;
  j["objective"] = rat_str(estimate.objective);
  j["constraint"] = rat_str(estimate.constraint);
  j["meta"] = Json{{"m", estimate.m},
                   {"seed", estimate.seed},
                   {"method", estimate.method},
                   {"vertex_tuple_cap", estimate.budget.vertex_tuple_cap},
                   {"ascent_starts", estimate.budget.ascent_starts},
                   {"ascent_iters", estimate.budget.ascent_iters}};
  return j;
}

}  // namespace fbl
