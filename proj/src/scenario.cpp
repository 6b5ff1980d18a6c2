#include "fbl/scenario.hpp"

#include "fbl/norm.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <future>
#include <set>
#include <sstream>

namespace fbl {

void ScenarioReport::add(const std::string& description, const std::string& expected,
                         const std::string& observed, const std::string& basis) {
  CheckResult check;
  check.description = description;
  check.expected = expected;
  check.observed = observed;
  check.basis = basis;
  check.pass = expected == observed;
  pass = pass && check.pass;
  checks.push_back(std::move(check));
}

void ScenarioReport::add_bool(const std::string& description, bool expected, bool observed,
                              const std::string& basis) {
  add(description, expected ? "true" : "false", observed ? "true" : "false", basis);
}

Json report_to_json(const ScenarioReport& report, bool canonical) {
  Json j;
  j["scenario"] = report.scenario;
  j["lattice"] = report.lattice;
  j["seed"] = report.seed;
  j["params"] = report.params;
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back(Json{{"description", c.description},
                          {"expected", c.expected},
                          {"observed", c.observed},
                          {"basis", c.basis},
                          {"pass", c.pass}});
  }
  j["checks"] = checks;
  j["caveats"] = report.caveats;
  j["witnesses"] = report.witnesses;
  j["pass"] = report.pass;
  if (!canonical) {
    j["runtime_ms"] = report.runtime_ms;
    j["timestamp"] = report.timestamp;
  }
  return j;
}

namespace {

std::string now_iso8601() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

LatticePtr lattice_param(const Json& params, const std::string& fallback) {
  if (params.contains("lattice")) return lattice_from_json(params["lattice"]);
  return builtin_lattice(fallback);
}

std::uint64_t seed_param(const Json& params) {
  return params.value("seed", std::uint64_t(2024));
}

Rat rat_param(const Json& params, const std::string& key, const std::string& fallback) {
  if (!params.contains(key)) return parse_rat(fallback);
  const Json& v = params[key];
  if (v.is_string()) return parse_rat(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<long long>());
  throw Error(Errc::param_error, "parameter '" + key + "' must be a rational string");
}

std::string describe(const LatticePtr& lattice) {
  return lattice->name() + " (" + std::to_string(lattice->size()) + " elements)";
}

std::string rbool(bool b) { return b ? "true" : "false"; }

Rat rat_ceil(const Rat& q) {
  Int num = numerator(q);
  Int den = denominator(q);
  if (num <= 0) return Rat(0);
  return Rat((num + den - 1) / den);
}

// ----------------------------------------------------------- strong-unit

ScenarioReport scenario_strong_unit(const Json& params) {
  ScenarioReport report;
  LatticePtr lattice = lattice_param(params, "powerset:2");
  report.lattice = describe(lattice);
  StrongUnitReport unit = strong_unit_check(lattice);
  report.add_bool("per-cell block indices put the bottom at coordinate 0 and the top at coordinate k",
                  true, unit.index_reduction_ok,
                  "cell parameterization: m(z) counts chain irreducibles below z");
  report.add_bool("|delta_x| <= |delta_bottom| v |delta_top| at all " +
                      std::to_string(unit.vertex_checks) + " cell vertices and " +
                      std::to_string(unit.grid_checks) + " grid points",
                  true, unit.dominated,
                  "v_0 <= v_{m(x)} <= v_k forces |v_{m(x)}| <= max(|v_0|, |v_k|)");
  report.add_bool("lattice is bounded, so the unit exists", true, unit.has_strong_unit,
                  "strong unit exists exactly when the lattice has a maximum and a minimum");
  if (unit.unit) report.witnesses["unit"] = expr_to_json(*unit.unit);
  report.caveats.push_back(unit.note);
  return report;
}

// ------------------------------------------------ strong-unit-obstruction

ScenarioReport scenario_strong_unit_obstruction(const Json& params) {
  ScenarioReport report;
  int chain_len = params.value("chain", 8);
  int gens = params.value("gens", 3);
  int corpus = params.value("corpus", 100);
  std::uint64_t seed = seed_param(params);
  report.seed = seed;
  report.lattice = "chain(" + std::to_string(chain_len) + ")";
  ObstructionReport ob = strong_unit_obstruction(chain_len, gens, corpus, seed);
  report.add_bool("z* takes value 1 at the first element above the generated sublattice", true,
                  ob.delta_y_is_one, "prime filter indicator of the separating irreducible");
  report.add(std::to_string(corpus) + " random lattice-linear expressions over the first " +
                 std::to_string(gens) + " generators vanish at z*",
             std::to_string(corpus), std::to_string(ob.vanished),
             "every generator coordinate of z* is 0 and evaluation is positively homogeneous");
  report.add_bool("each expression leaves gap |delta_y(z*) - g(z*)| >= 1", true,
                  ob.all_gaps_at_least_one,
                  "single-point witness: the constraint value of z* is 1");
  report.witnesses["z_star"] = point_to_json(ob.witness);
  return report;
}

// ------------------------------------------------------------ separation

ScenarioReport scenario_separation(const Json& params) {
  ScenarioReport report;
  LatticePtr lattice = lattice_param(params, "chain:4");
  report.lattice = describe(lattice);
  const int n = lattice->size();
  int pairs = 0, separated = 0, members = 0;
  Json witnesses = Json::array();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      ++pairs;
      int lo = x, hi = y;
      if (lattice->leq(y, x)) std::swap(lo, hi);  // ensure hi not<= lo
      DualPoint w = separation_witness(lattice, lo, hi);
      if (is_dual_point(*lattice, w.values)) ++members;
      Expr diff = Expr::gen(lattice, x) - Expr::gen(lattice, y);
      NormEstimate est = estimate_from_witness(diff, {w});
      if (est.lower >= 1) ++separated;
      witnesses.push_back(Json{{"x", lattice->label(x)},
                               {"y", lattice->label(y)},
                               {"witness", point_to_json(w)},
                               {"lower", rat_str(est.lower)}});
    }
  report.add("all pairwise witnesses pass the homomorphism check", std::to_string(pairs),
             std::to_string(members), "separation witness is a prime-filter indicator");
  report.add("pairs with free-norm lower bound >= 1", std::to_string(pairs),
             std::to_string(separated),
             "witness evaluation gives |delta_x - delta_y|(w) = 1 at constraint 1");
  report.witnesses["pairs"] = witnesses;
  return report;
}

// -------------------------------------------------------- density-family

ScenarioReport scenario_density_family(const Json& params) {
  ScenarioReport report;
  int gsize = params.value("gamma_size", 2);
  LatticePtr lattice = builtin_lattice("bottomed_powerset:" + std::to_string(gsize));
  report.lattice = describe(lattice);

  std::vector<Expr> fs;
  std::vector<DualPoint> xs;
  for (int g = 1; g <= gsize; ++g) {
    fs.push_back(builtin_expr("f_gamma", lattice, {{"gamma", std::to_string(g)}}));
    std::vector<Rat> values(lattice->size());
    for (int i = 0; i < lattice->size(); ++i) {
      const std::string& label = lattice->label(i);
      if (label == "0hat")
        values[i] = -1;
      else
        values[i] = lattice->leq(lattice->index("{" + std::to_string(g) + "}"), i) ? 1 : 0;
    }
    xs.push_back(dual_point(lattice, values));
  }

  bool self_zero = true, cross_minus_one = true, gaps = true, lower_ok = true;
  for (int g = 0; g < gsize; ++g) {
    if (eval(fs[g], xs[g]) != 0) self_zero = false;
    for (int h = 0; h < gsize; ++h) {
      if (h == g) continue;
      if (eval(fs[h], xs[g]) != -1) cross_minus_one = false;
      Expr diff = fs[g] - fs[h];
      if (rat_abs(eval(diff, xs[g])) != 1) gaps = false;
      NormEstimate est = estimate_from_witness(diff, {xs[g]});
      if (est.lower < 1) lower_ok = false;
    }
  }
  report.add_bool("f_gamma(x*_gamma) = 0 for every gamma", true, self_zero,
                  "evaluation: min(max(0,-1),0)");
  report.add_bool("f_gamma'(x*_gamma) = -1 for gamma' != gamma", true, cross_minus_one,
                  "evaluation: min(max(-1,-1),0)");
  report.add_bool("|(f_gamma - f_gamma')(x*_gamma)| = 1", true, gaps,
                  "difference of the two evaluations");
  report.add_bool("pairwise free-norm lower bounds >= 1", true, lower_ok,
                  "x*_gamma has constraint value 1, so the ratio equals the gap");
  Json w = Json::array();
  for (int g = 0; g < gsize; ++g)
    w.push_back(Json{{"gamma", g + 1},
                     {"f", expr_to_json(fs[g])},
                     {"x_star", point_to_json(xs[g])}});
  report.witnesses["family"] = w;
  return report;
}

// ---------------------------------------------------- separable-interval

ScenarioReport scenario_separable_interval(const Json& params) {
  ScenarioReport report;
  int gsize = params.value("gamma_size", 3);
  long samples = params.value("samples", 10000);
  std::uint64_t seed = seed_param(params);
  report.seed = seed;
  LatticePtr lattice = builtin_lattice("powerset:" + std::to_string(gsize));
  report.lattice = describe(lattice);
  std::string gamma0 = params.value("gamma0", std::string("1"));
  int a = lattice->index("{}");
  int b = lattice->index("{" + gamma0 + "}");

  DualSample sample = sample_points(lattice, static_cast<int>(samples), seed);
  long in_u = 0, collapse_fail = 0, outside_equal_fail = 0;
  for (const DualPoint& p : sample.points) {
    if (p.values[b] > p.values[a]) {
      ++in_u;
      for (int z = 0; z < lattice->size(); ++z) {
        const Rat& want = lattice->leq(b, z) ? p.values[b] : p.values[a];
        if (p.values[z] != want) ++collapse_fail;
      }
    } else {
      if (p.values[a] != p.values[b]) ++outside_equal_fail;
    }
  }
  report.add("sampled points with x*({gamma0}) > x*({}) collapse every delta_A onto the endpoints",
             "0", std::to_string(collapse_fail),
             "on that region each homomorphism is determined by its endpoint values");
  report.add("outside the region, x*({}) = x*({gamma0})", "0",
             std::to_string(outside_equal_fail),
             "monotone homomorphisms squeeze the interval endpoints together");
  report.add("qualified sample count is positive", "true", rbool(in_u > 0),
             "sampling sanity: the region has positive volume");
  report.witnesses["samples"] = Json{{"seed", seed}, {"count", samples}, {"qualified", in_u}};
  report.params["gamma0"] = gamma0;
  return report;
}

// ------------------------------------------------------ interval-density

ScenarioReport scenario_interval_density(const Json& params) {
  ScenarioReport report;
  LatticePtr lattice = lattice_param(params, "powerset:2");
  report.lattice = describe(lattice);
  std::string a = params.value("a", lattice->label(lattice->bottom()));
  std::string b = params.value("b", lattice->label(lattice->top()));
  long samples = params.value("samples", 200);
  std::uint64_t seed = seed_param(params);
  report.seed = seed;

  IntervalRetraction ir = interval_retraction(lattice, a, b);
  bool retraction_identity = true;
  for (int i = 0; i < ir.interval.lattice->size(); ++i)
    if (ir.retraction.apply(ir.inclusion.apply(i)) != i) retraction_identity = false;
  report.add_bool("retraction o inclusion is the identity on the interval", true,
                  retraction_identity, "r(x) = a v (x ^ b) fixes [a,b] pointwise");

  const auto& carrier = ir.interval.carrier;
  int pairs = 0, separated = 0;
  for (size_t i = 0; i < carrier.size(); ++i)
    for (size_t j = i + 1; j < carrier.size(); ++j) {
      ++pairs;
      int x = carrier[i], y = carrier[j];
      int lo = x, hi = y;
      if (lattice->leq(y, x)) std::swap(lo, hi);
      DualPoint w = separation_witness(lattice, lo, hi);
      Expr diff = Expr::gen(lattice, x) - Expr::gen(lattice, y);
      if (estimate_from_witness(diff, {w}).lower >= 1) ++separated;
    }
  report.add("interval pairs separated with lower bound >= 1", std::to_string(pairs),
             std::to_string(separated), "separation witnesses restricted to interval members");

  DualSample sample = sample_points(lattice, static_cast<int>(samples), seed);
  long order_fail = 0;
  int ai = lattice->index(a), bi = lattice->index(b);
  for (const DualPoint& p : sample.points)
    for (int x : carrier)
      if (!(p.values[ai] <= p.values[x] && p.values[x] <= p.values[bi])) ++order_fail;
  report.add("delta_a <= delta_x <= delta_b pointwise on sampled points", "0",
             std::to_string(order_fail), "homomorphisms are order preserving");
  report.params["a"] = a;
  report.params["b"] = b;
  return report;
}

// -------------------------------------------------------- quasi-interior

ScenarioReport scenario_quasi_interior(const Json& params) {
  ScenarioReport report;
  LatticePtr lattice = lattice_param(params, "chain:4");
  report.lattice = describe(lattice);
  Rat eps = rat_param(params, "eps", "1/1000");
  int corpus = params.value("corpus", 20);
  long samples = params.value("samples", 200);
  std::uint64_t seed = seed_param(params);
  report.seed = seed;

  // u = sum 2^-(i+1) |delta_{s_i}| over all elements
  std::vector<std::string> sep = lattice->labels();
  std::vector<Rat> weights;
  Rat w{1, 2};
  for (size_t i = 0; i < sep.size(); ++i) {
    weights.push_back(w);
    w /= 2;
  }
  Expr u = quasi_interior_point(lattice, sep, weights);

  bool positive_on_vertices = true;
  for (const DualPoint& p : cell_vertex_points(lattice))
    if (!p.is_zero() && eval(u, p) <= 0) positive_on_vertices = false;
  report.add_bool("u > 0 at every nonzero cell vertex", true, positive_on_vertices,
                  "the separating set covers every coordinate");

  // exact minimum of u over the unit sphere of L*: per cell the sphere is
  // the two faces v_k = 1 and v_0 = -1, whose minima are weight sums
  auto cells = enumerate_cells(*lattice);
  Rat delta;
  bool delta_set = false;
  for (const Cell& cell : cells) {
    int k = static_cast<int>(cell.chain.size());
    Rat top_face = 0, bottom_face = 0;
    for (int i = 0; i < lattice->size(); ++i) {
      if (cell.block[i] == k) top_face += weights[i];
      if (cell.block[i] == 0) bottom_face += weights[i];
    }
    Rat m = std::min(top_face, bottom_face);
    if (!delta_set || m < delta) {
      delta = m;
      delta_set = true;
    }
  }
  report.add_bool("sphere minimum delta of u is positive", true, delta > 0,
                  "u vanishes only at the zero homomorphism");
  report.witnesses["delta"] = rat_str(delta);

  SplitRng rng = SplitRng::seeded(seed, 0x91u);
  std::vector<int> all_gens(lattice->size());
  for (int i = 0; i < lattice->size(); ++i) all_gens[i] = i;
  DualSample sample = sample_points(lattice, static_cast<int>(samples), seed ^ 0x7);

  int certified = 0, truncation_ok = 0;
  int max_m = 0;
  for (int c = 0; c < corpus; ++c) {
    Expr f = random_lattice_linear_expr(lattice, all_gens, rng, 4);
    // coarse certified upper bound for ||f||_inf, then m with
    // m*delta >= that bound
    SupNormCertificate quick = sup_norm(f, Rat{1, 16}, 64);
    Rat m_rat = rat_ceil(quick.value_high / delta);
    int m = static_cast<int>(m_rat.convert_to<long long>());
    if (m < 1) m = 1;
    max_m = std::max(max_m, m);

    std::vector<std::pair<Rat, std::string>> gens;
    for (size_t i = 0; i < sep.size(); ++i) gens.emplace_back(m * weights[i], sep[i]);
    bool ok = false;
    bool dominated = false;
    try {
      dominated = domination_upper(f, gens).ok;
    } catch (const Error& e) {
      if (e.code() != Errc::param_error) throw;
      // too many lattice operations for the exact engine on this lattice
    }
    if (dominated) {
      ok = true;  // f_m = f identically, distance 0 <= eps
    } else {
      Expr fm = qi_truncate(f, u, m);
      SupNormCertificate cert = sup_norm(fm - f, eps);
      ok = !cert.budget_exhausted && cert.value_high <= eps;
    }
    if (ok) ++certified;

    Expr fm = qi_truncate(f, u, m);
    bool shrinks = true;
    for (const DualPoint& p : sample.points)
      if (rat_abs(eval(fm, p)) > rat_abs(eval(f, p))) shrinks = false;
    if (shrinks) ++truncation_ok;
  }
  report.add("expressions with certified ||f_m - f||_inf <= eps", std::to_string(corpus),
             std::to_string(certified),
             "m*delta dominates the sup-norm bound, so |f| <= m*u pointwise");
  report.add("expressions with |f_m| <= |f| on all sampled points", std::to_string(corpus),
             std::to_string(truncation_ok), "|(a ^ b) v (-b)| <= |a| for b >= 0");
  report.params["eps"] = rat_str(eps);
  report.witnesses["max_m"] = max_m;
  report.caveats.push_back(
      "series truncated at the lattice size: every element set of a finite lattice is "
      "separating, so this demonstrates the construction, not the countability statement");
  return report;
}

// ----------------------------------------------------------- induced-hom

LatticeHom default_inclusion_hom() {
  LatticeSpec mspec;
  mspec.name = "three_chain_sub";
  mspec.elements = {"0", "a", "1"};
  mspec.order = {{"0", "a"}, {"a", "1"}};
  LatticeSpec lspec;
  lspec.name = "four_diamond";
  lspec.elements = {"0", "a", "b", "1"};
  lspec.order = {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}};
  LatticePtr m = FiniteLattice::build(mspec);
  LatticePtr l = FiniteLattice::build(lspec);
  return LatticeHom::build_by_labels(m, l, {{"0", "0"}, {"a", "a"}, {"1", "1"}});
}

ScenarioReport scenario_induced_hom(const Json& params) {
  ScenarioReport report;
  LatticeHom hom = params.contains("hom") ? hom_from_json(params["hom"]) : default_inclusion_hom();
  const LatticePtr& src = hom.source();
  const LatticePtr& dst = hom.target();
  report.lattice = describe(src) + " -> " + describe(dst);
  long samples = params.value("samples", 1000);
  int corpus = params.value("corpus", 20);
  long tuples = params.value("tuples", 1000);
  std::uint64_t seed = seed_param(params);
  report.seed = seed;

  std::vector<int> gens(src->size());
  for (int i = 0; i < src->size(); ++i) gens[i] = i;
  SplitRng rng = SplitRng::seeded(seed, 0x1d0u);
  std::vector<Expr> fs;
  for (int c = 0; c < corpus; ++c)
    fs.push_back(random_lattice_linear_expr(src, gens, rng, 4));

  DualSample sample = sample_points(dst, static_cast<int>(samples), seed);
  long comp_fail = 0;
  for (const DualPoint& y : sample.points) {
    DualPoint pulled = pullback_hom(hom, y);
    for (const Expr& f : fs)
      if (eval(induce_operator(hom, f), y) != eval(f, pulled)) ++comp_fail;
  }
  report.add("composition identity failures over " + std::to_string(samples) + " points x " +
                 std::to_string(corpus) + " expressions",
             "0", std::to_string(comp_fail),
             "the induced operator is composition with the dual map");

  long hom_fail = 0;
  for (const DualPoint& y : sample.points) {
    std::vector<Rat> phi = phi_extract(
        [&](int x) { return induce_operator(hom, Expr::gen(src, x)); }, *src, y);
    if (!is_dual_point(*src, phi)) ++hom_fail;
    DualPoint pulled = pullback_hom(hom, y);
    if (phi != pulled.values) ++hom_fail;
  }
  report.add("extracted maps failing the per-point lattice-homomorphism check", "0",
             std::to_string(hom_fail),
             "generator images evaluate to the pullback, which is a homomorphism");

  SplitRng trng = SplitRng::seeded(seed, 0x700u);
  long ineq_fail = 0;
  for (long t = 0; t < tuples; ++t) {
    int m = 1 + static_cast<int>(trng.below(3));
    std::vector<const DualPoint*> tuple;
    for (int i = 0; i < m; ++i)
      tuple.push_back(&sample.points[trng.below(sample.points.size())]);
    Rat lhs = 0, rhs = 0;
    for (int y = 0; y < src->size(); ++y) {
      Rat s = 0;
      for (const DualPoint* p : tuple) s += rat_abs(p->values[hom.apply(y)]);
      lhs = std::max(lhs, s);
    }
    for (int x = 0; x < dst->size(); ++x) {
      Rat s = 0;
      for (const DualPoint* p : tuple) s += rat_abs(p->values[x]);
      rhs = std::max(rhs, s);
    }
    if (lhs > rhs) ++ineq_fail;
  }
  report.add("tuples violating the norm-compatibility inequality", "0",
             std::to_string(ineq_fail),
             "induced operators have norm at most 1: sup_y sum |Phi(x_i*)(y)| <= sup_x sum |x_i*(x)|");

  // informational rows: observed facts about the map itself
  report.add_bool("T surjective", hom.is_surjective(), hom.is_surjective(),
                  "set check on the map table");
  report.add_bool("T injective", hom.is_injective(), hom.is_injective(),
                  "set check on the map table");

  // built-in inclusion example: restriction is injective on the dual side
  LatticeHom inc = default_inclusion_hom();
  report.add_bool("built-in inclusion is not surjective", false, inc.is_surjective(),
                  "the sublattice misses one element");
  std::vector<Rat> grid = {Rat(-1), Rat{-1, 2}, Rat(0), Rat{1, 2}, Rat(1)};
  auto grid_points = cell_grid_points(inc.target(), grid);
  bool multiset_ok = true;
  int i0 = inc.target()->index("0"), i1 = inc.target()->index("1");
  int ia = inc.target()->index("a"), ib = inc.target()->index("b");
  for (const DualPoint& p : grid_points) {
    std::pair<Rat, Rat> ends = std::minmax(p.values[i0], p.values[i1]);
    std::pair<Rat, Rat> mids = std::minmax(p.values[ia], p.values[ib]);
    if (ends != mids) multiset_ok = false;
  }
  report.add_bool("{x*(0), x*(1)} = {x*(a), x*(b)} as multisets on all grid points", true,
                  multiset_ok, "0 and 1 are the meet and join of a and b");
  std::set<std::vector<Rat>> restrictions;
  bool injective_restriction = true;
  for (const DualPoint& p : grid_points) {
    DualPoint r = pullback_hom(inc, p);
    if (!restrictions.insert(r.values).second) injective_restriction = false;
  }
  report.add_bool("restriction to the sublattice is injective on all grid points", true,
                  injective_restriction,
                  "the multiset identity lets the missing coordinate be reconstructed");
  report.witnesses["samples"] = Json{{"seed", seed}, {"count", samples}};
  return report;
}

// ------------------------------------------------------ opposite-isometry

ScenarioReport scenario_opposite_isometry(const Json& params) {
  ScenarioReport report;
  LatticePtr lattice = lattice_param(params, "five_point");
  report.lattice = describe(lattice);
  long samples = params.value("samples", 1000);
  int corpus = params.value("corpus", 5);
  std::uint64_t seed = seed_param(params);
  report.seed = seed;

  LatticePtr op = opposite_lattice(lattice);
  LatticePtr opop = opposite_lattice(op);
  report.add_bool("opposite of the opposite equals the original, table-exact", true,
                  same_lattice(lattice, opop), "order reversal is an involution");

  auto cells = enumerate_cells(*lattice);
  auto op_cells = enumerate_cells(*op);
  std::multiset<int> dims, op_dims;
  for (const Cell& c : cells) dims.insert(c.dim());
  for (const Cell& c : op_cells) op_dims.insert(c.dim());
  report.add("opposite complex has the same number of cells", std::to_string(cells.size()),
             std::to_string(op_cells.size()),
             "maximal chains reverse bijectively between the irreducible posets");
  report.add_bool("cell dimension multisets agree", true, dims == op_dims,
                  "chain lengths are preserved by reversal");

  DualSample sample = sample_points(lattice, static_cast<int>(samples), seed);
  long invalid = 0, not_involutive = 0;
  for (const DualPoint& p : sample.points) {
    DualPoint q = negate_point(p, op);
    if (!is_dual_point(*op, q.values)) ++invalid;
    DualPoint back = negate_point(q, opop);
    if (back.values != p.values) ++not_involutive;
  }
  report.add("negated samples failing membership on the opposite", "0", std::to_string(invalid),
             "x* -> -x* swaps meets and joins, matching the reversed order");
  report.add("samples where double negation is not the identity", "0",
             std::to_string(not_involutive), "negation is its own inverse");

  long vertex_outside = 0;
  for (const DualPoint& p : cell_vertex_points(lattice)) {
    DualPoint q = negate_point(p, op);
    bool found = false;
    for (const Cell& c : op_cells)
      if (coords_in_cell(*op, c, q.values)) {
        found = true;
        break;
      }
    if (!found) ++vertex_outside;
  }
  report.add("negated cell vertices not covered by an opposite cell", "0",
             std::to_string(vertex_outside), "the negated complex covers the opposite dual");

  // cell-level involution: a point with strictly increasing coordinates
  // lies in exactly one cell, so its negation pins the image cell; the
  // resulting map between the complexes must be a bijection and every
  // vertex must follow its cell's image
  bool bijection = true;
  std::vector<int> image(cells.size(), -1);
  for (size_t ci = 0; ci < cells.size(); ++ci) {
    const int d = cells[ci].dim();
    std::vector<Rat> generic(d);
    for (int i = 0; i < d; ++i) generic[i] = Rat{2 * (i + 1), d + 1} - 1;
    DualPoint q = negate_point(point_from_cell(lattice, cells[ci], generic), op);
    int hit = -1, hits = 0;
    for (size_t cj = 0; cj < op_cells.size(); ++cj)
      if (coords_in_cell(*op, op_cells[cj], q.values)) {
        hit = static_cast<int>(cj);
        ++hits;
      }
    if (hits != 1) {
      bijection = false;
      continue;
    }
    image[ci] = hit;
    for (int s = 0; s <= d; ++s) {
      std::vector<Rat> corner(d);
      for (int i = 0; i < d; ++i) corner[i] = i < s ? Rat(-1) : Rat(1);
      DualPoint vq = negate_point(point_from_cell(lattice, cells[ci], corner), op);
      if (!coords_in_cell(*op, op_cells[hit], vq.values)) bijection = false;
    }
  }
  std::set<int> hit_cells(image.begin(), image.end());
  if (hit_cells.count(-1) || hit_cells.size() != cells.size()) bijection = false;
  report.add_bool("negation maps each cell onto exactly one opposite cell, bijectively", true,
                  bijection, "chains of irreducibles reverse into chains of the opposite poset");

  // witness transport: identical objective and constraint, exactly
  std::vector<int> gens(lattice->size());
  for (int i = 0; i < lattice->size(); ++i) gens[i] = i;
  SplitRng rng = SplitRng::seeded(seed, 0x09u);
  SearchBudget small;
  small.ascent_starts = 8;
  small.ascent_iters = 60;
  small.supnorm_node_budget = 2000;
  int transported = 0;
  for (int c = 0; c < corpus; ++c) {
    Expr f = random_lattice_linear_expr(lattice, gens, rng, 4);
    NormEstimate est = free_norm_lower(f, 2, small, seed + c);
    Expr fop = transport_opposite(f, op);
    std::vector<DualPoint> negated;
    for (const DualPoint& p : est.witness) negated.push_back(negate_point(p, op));
    NormEstimate mirrored = estimate_from_witness(fop, negated);
    if (mirrored.objective == est.objective && mirrored.constraint == est.constraint)
      ++transported;
  }
  report.add("witness tuples transporting with identical objective/constraint",
             std::to_string(corpus), std::to_string(transported),
             "eval(f, x*) = eval(transported f, -x*) exactly");

  if (lattice->name() == "five_point") {
    report.add_bool("five-point lattice is not isomorphic to its opposite", false,
                    lattices_isomorphic(*lattice, *op), "exhaustive bijection search");
  }
  return report;
}

// ---------------------------------------------------------- connectivity

ScenarioReport scenario_connectivity(const Json& params) {
  ScenarioReport report;
  LatticePtr lattice = lattice_param(params, "powerset:2");
  report.lattice = describe(lattice);
  long want = params.value("points", 1000);
  long steps = params.value("steps", 1000);
  long zero_samples = params.value("zero_samples", 100);
  std::uint64_t seed = seed_param(params);
  report.seed = seed;

  if (lattice->size() < 2)
    throw Error(Errc::trivial_lattice, "connectivity needs at least two elements");

  DualPoint one = constant_hom(lattice, 1);
  DualPoint minus_one = constant_hom(lattice, -1);

  std::vector<DualPoint> nonconstant;
  std::uint64_t batch_seed = seed;
  while (static_cast<long>(nonconstant.size()) < want) {
    DualSample sample = sample_points(lattice, static_cast<int>(want), batch_seed++);
    for (auto& p : sample.points) {
      if (!p.is_constant()) nonconstant.push_back(std::move(p));
      if (static_cast<long>(nonconstant.size()) == want) break;
    }
  }

  long path_fail = 0;
  for (const DualPoint& p : nonconstant) {
    if (!affine_path_check(p, one, steps).pass) ++path_fail;
    if (!affine_path_check(p, minus_one, steps).pass) ++path_fail;
  }
  report.add("affine paths to +1 and -1 failing membership or passing through zero", "0",
             std::to_string(path_fail),
             "for nonconstant u the blend (1-t)u +- t1 stays a nonzero homomorphism");

  // zero-set perturbation: near any point with x*(l) = 0 there is a valid
  // point within 1/128 where delta_l is nonzero
  Rat eta{1, 128};
  long zero_fail = 0;
  for (int l = 0; l < lattice->size(); ++l) {
    DualSample sample = sample_points(lattice, static_cast<int>(zero_samples), seed + 31 * l);
    for (const DualPoint& p : sample.points) {
      std::vector<Rat> shifted(lattice->size());
      for (int z = 0; z < lattice->size(); ++z) {
        Rat v = p.values[z] - p.values[l];
        shifted[z] = std::min(std::max(v, Rat(-1)), Rat(1));
      }
      if (!is_dual_point(*lattice, shifted) || shifted[l] != 0) {
        ++zero_fail;
        continue;
      }
      std::vector<Rat> nudged(lattice->size());
      for (int z = 0; z < lattice->size(); ++z) nudged[z] = std::min(shifted[z] + eta, Rat(1));
      bool ok = is_dual_point(*lattice, nudged) && nudged[l] != 0;
      Rat dist = 0;
      for (int z = 0; z < lattice->size(); ++z)
        dist = std::max(dist, rat_abs(nudged[z] - shifted[z]));
      if (!ok || dist > Rat{1, 100}) ++zero_fail;
    }
  }
  report.add("zero-set points without a valid perturbation within 1/100", "0",
             std::to_string(zero_fail),
             "adding a small constant and clamping keeps the homomorphism and frees delta_l");
  report.witnesses["samples"] = Json{{"seed", seed}, {"points", want}, {"steps", steps}};
  return report;
}

// ------------------------------------------------------ order-density-demo

ScenarioReport scenario_order_density(const Json& params) {
  ScenarioReport report;
  int chain_len = params.value("chain", 8);
  int grid = params.value("grid", 32);
  int low = params.value("low_gens", 3);
  std::uint64_t seed = seed_param(params);
  report.seed = seed;
  report.lattice = "chain(" + std::to_string(chain_len) + ")";

  OrderDensityReport demo = order_density_demo(chain_len, grid, low, seed);

  // f(1) = 1 - sum alpha_n = 1/2 + 2^-N, exactly
  Rat expected_f1{1, 2};
  Rat pow{1, 2};
  for (int i = 1; i < chain_len; ++i) pow /= 2;
  expected_f1 += pow;
  report.add("f(1) equals 1 - sum(alpha)", rat_str(expected_f1), rat_str(demo.f_at_one),
             "geometric sum of the truncated coefficients");
  report.add_bool("f(1) > 0", true, demo.f_at_one > 0, "coefficients sum below 1");
  report.add_bool("every blend point passes membership", true, demo.points_valid,
                  "a totally ordered lattice has a convex dual");
  report.add_bool("h(z_t*) = t h(x*) > 0 on the whole grid", true, demo.homogeneity_ok,
                  "the step point vanishes on the low coordinates");
  report.add_bool("f(z_t*) = 0 for every grid t below the threshold", true, demo.f_vanishes_ok,
                  "exact rational solve of the domination inequality");
  report.witnesses["threshold"] = rat_str(demo.threshold);
  report.caveats.push_back(demo.caveat);
  return report;
}

using ScenarioFn = ScenarioReport (*)(const Json&);

struct ScenarioEntry {
  const char* name;
  ScenarioFn fn;
};

constexpr ScenarioEntry kScenarios[] = {
    {"strong-unit", scenario_strong_unit},
    {"strong-unit-obstruction", scenario_strong_unit_obstruction},
    {"separation", scenario_separation},
    {"density-family", scenario_density_family},
    {"separable-interval", scenario_separable_interval},
    {"interval-density", scenario_interval_density},
    {"quasi-interior", scenario_quasi_interior},
    {"induced-hom", scenario_induced_hom},
    {"opposite-isometry", scenario_opposite_isometry},
    {"connectivity", scenario_connectivity},
    {"order-density-demo", scenario_order_density},
};

}  // namespace

std::vector<std::string> scenario_names() {
  std::vector<std::string> names;
  for (const auto& entry : kScenarios) names.push_back(entry.name);
  return names;
}

ScenarioReport run_scenario(const std::string& name, const Json& params) {
  for (const auto& entry : kScenarios) {
    if (name == entry.name) {
      auto t0 = std::chrono::steady_clock::now();
      ScenarioReport report = entry.fn(params);
      report.scenario = name;
      if (report.params.is_null()) report.params = Json::object();
      for (const auto& [key, value] : params.items()) {
        if (!report.params.contains(key)) report.params[key] = value;
      }
      report.seed = seed_param(params);
      auto t1 = std::chrono::steady_clock::now();
      report.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      report.timestamp = now_iso8601();
      return report;
    }
  }
  throw Error(Errc::unknown_scenario, "unknown scenario '" + name + "'");
}

Json run_all(const Json& config) {
  if (!config.is_object()) throw Error(Errc::param_error, "suite config must be an object");
  bool canonical = config.value("canonical", false);
  std::uint64_t suite_seed = config.value("seed", std::uint64_t(2024));
  int jobs = config.value("jobs", 1);
  const Json scenarios = config.value("scenarios", Json::array());

  struct Slot {
    Json report;
    Json error;
  };
  std::vector<Slot> slots(scenarios.size());

  auto run_one = [&](size_t i) {
    const Json& entry = scenarios[i];
    try {
      if (!entry.is_object() || !entry.contains("name"))
        throw Error(Errc::param_error, "each scenario entry needs a 'name'");
      Json params = entry;
      params.erase("name");
      if (!params.contains("seed")) params["seed"] = suite_seed;
      ScenarioReport report = run_scenario(entry["name"].get<std::string>(), params);
      slots[i].report = report_to_json(report, canonical);
    } catch (const Error& e) {
      slots[i].error = Json{{"scenario", entry.value("name", std::string("?"))},
                            {"error", errc_name(e.code())},
                            {"message", e.what()}};
    } catch (const std::exception& e) {
      slots[i].error = Json{{"scenario", entry.value("name", std::string("?"))},
                            {"error", "InternalError"},
                            {"message", e.what()}};
    }
  };

  if (jobs > 1) {
    std::vector<std::future<void>> futures;
    size_t next = 0;
    while (next < scenarios.size()) {
      futures.clear();
      for (int j = 0; j < jobs && next < scenarios.size(); ++j, ++next)
        futures.push_back(std::async(std::launch::async, run_one, next));
      for (auto& f : futures) f.get();
    }
  } else {
    for (size_t i = 0; i < scenarios.size(); ++i) run_one(i);
  }

  Json out;
  Json reports = Json::array();
  Json errors = Json::array();
  bool all_pass = true;
  for (const auto& slot : slots) {
    if (!slot.error.is_null()) {
      errors.push_back(slot.error);
      all_pass = false;
    } else if (!slot.report.is_null()) {
      if (!slot.report.value("pass", false)) all_pass = false;
      reports.push_back(slot.report);
    }
  }
  out["suite_pass"] = all_pass;
  out["reports"] = reports;
  out["errors"] = errors;
  out["seed"] = suite_seed;
  return out;
}

Json default_suite_config() {
  Json scenarios = Json::array();
  scenarios.push_back(Json{{"name", "strong-unit"}, {"lattice", "powerset:2"}});
  scenarios.push_back(Json{{"name", "strong-unit-obstruction"}, {"chain", 8}, {"gens", 3}});
  scenarios.push_back(Json{{"name", "separation"}, {"lattice", "chain:4"}});
  scenarios.push_back(Json{{"name", "density-family"}, {"gamma_size", 2}});
  scenarios.push_back(Json{{"name", "separable-interval"}, {"gamma_size", 3}, {"samples", 2000}});
  scenarios.push_back(Json{{"name", "interval-density"}, {"lattice", "powerset:2"}});
  scenarios.push_back(Json{{"name", "quasi-interior"}, {"lattice", "chain:4"}, {"corpus", 10}});
  scenarios.push_back(Json{{"name", "induced-hom"}, {"samples", 500}, {"corpus", 10}});
  scenarios.push_back(Json{{"name", "opposite-isometry"}, {"lattice", "five_point"}});
  scenarios.push_back(
      Json{{"name", "connectivity"}, {"lattice", "powerset:2"}, {"points", 200}, {"steps", 200}});
  scenarios.push_back(Json{{"name", "order-density-demo"}, {"chain", 8}});
  Json config;
  config["seed"] = 2024;
  config["scenarios"] = scenarios;
  return config;
}

}  // namespace fbl
