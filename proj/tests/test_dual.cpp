#include "fbl/dual.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace fbl;

namespace {

// independent membership oracle: the homomorphism equations, verbatim
bool oracle_is_hom(const FiniteLattice& l, const std::vector<Rat>& v) {
  for (const Rat& x : v)
    if (x < -1 || x > 1) return false;
  for (int x = 0; x < l.size(); ++x)
    for (int y = 0; y < l.size(); ++y) {
      if (v[l.join(x, y)] != std::max(v[x], v[y])) return false;
      if (v[l.meet(x, y)] != std::min(v[x], v[y])) return false;
    }
  return true;
}

// every map L -> grid passing the oracle
std::vector<std::vector<Rat>> oracle_grid_homs(const FiniteLattice& l,
                                               const std::vector<Rat>& grid) {
  std::vector<std::vector<Rat>> out;
  std::vector<size_t> pick(l.size(), 0);
  while (true) {
    std::vector<Rat> v(l.size());
    for (int i = 0; i < l.size(); ++i) v[i] = grid[pick[i]];
    if (oracle_is_hom(l, v)) out.push_back(v);
    int i = l.size() - 1;
    while (i >= 0 && pick[i] == grid.size() - 1) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < l.size(); ++j) pick[j] = 0;
  }
  return out;
}

const std::vector<Rat> kGrid = {Rat(-1), Rat{-1, 2}, Rat(0), Rat{1, 2}, Rat(1)};

}  // namespace

TEST_CASE("cell counts match the maximal chains of the irreducible poset") {
  CHECK(enumerate_cells(*builtin_lattice("chain:2")).size() == 1);
  CHECK(enumerate_cells(*builtin_lattice("chain:3")).size() == 1);
  CHECK(enumerate_cells(*builtin_lattice("powerset:2")).size() == 2);
  CHECK(enumerate_cells(*builtin_lattice("powerset:3")).size() == 3);
  CHECK(enumerate_cells(*builtin_lattice("five_point")).size() == 2);
  CHECK(enumerate_cells(*builtin_lattice("bottomed_powerset:2")).size() == 2);

  CHECK(enumerate_cells(*builtin_lattice("chain:3")).front().dim() == 3);
  CHECK(enumerate_cells(*builtin_lattice("chain:2")).front().dim() == 2);
}

TEST_CASE("singleton lattice has the one-dimensional cell") {
  LatticeSpec spec;
  spec.elements = {"*"};
  auto l = FiniteLattice::build(spec);
  auto cells = enumerate_cells(*l);
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].dim() == 1);
  CHECK(is_dual_point(*l, {Rat{1, 3}}));
}

TEST_CASE("covering: every grid homomorphism lies in an enumerated cell") {
  for (const char* d : {"chain:2", "chain:3", "powerset:2", "five_point"}) {
    auto l = builtin_lattice(d);
    auto cells = enumerate_cells(*l);
    auto homs = oracle_grid_homs(*l, kGrid);
    CHECK(homs.size() > 0);
    for (const auto& v : homs) {
      bool covered = false;
      for (const Cell& c : cells)
        if (coords_in_cell(*l, c, v)) {
          covered = true;
          break;
        }
      CHECK(covered);
    }
    // and conversely: instantiating cells only produces homomorphisms
    for (const DualPoint& p : cell_grid_points(l, kGrid)) CHECK(oracle_is_hom(*l, p.values));
  }
}

TEST_CASE("grid points of the cells are exactly the grid homomorphisms") {
  for (const char* d : {"chain:3", "powerset:2", "bottomed_powerset:2"}) {
    auto l = builtin_lattice(d);
    auto homs = oracle_grid_homs(*l, kGrid);
    auto pts = cell_grid_points(l, kGrid);
    std::set<std::vector<Rat>> a, b;
    for (auto& v : homs) a.insert(v);
    for (auto& p : pts) b.insert(p.values);
    CHECK(a == b);
  }
}

TEST_CASE("point_from_cell instantiates the expected examples") {
  auto ps = builtin_lattice("powerset:2");
  auto cells = enumerate_cells(*ps);
  // cells sorted by chain indices; chain {1} comes before {2}
  REQUIRE(cells.size() == 2);
  CHECK(ps->label(cells[0].chain[0]) == "{1}");
  DualPoint p = point_from_cell(ps, cells[0], {Rat(-1), Rat(1)});
  CHECK(p.values[ps->index("{}")] == -1);
  CHECK(p.values[ps->index("{1}")] == 1);
  CHECK(p.values[ps->index("{2}")] == -1);
  CHECK(p.values[ps->index("{1,2}")] == 1);

  DualPoint one = point_from_cell(ps, cells[0], {Rat(1), Rat(1)});
  CHECK(one.is_constant());
  DualPoint zero = point_from_cell(ps, cells[1], {Rat(0), Rat(0)});
  CHECK(zero.is_zero());
}

TEST_CASE("point_from_cell validates order and range") {
  auto chain = builtin_lattice("chain:2");
  auto cells = enumerate_cells(*chain);
  try {
    point_from_cell(chain, cells[0], {Rat(1), Rat(-1)});
    FAIL("expected CoordinateOrderViolation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::coordinate_order_violation);
  }
  try {
    point_from_cell(chain, cells[0], {Rat(0), Rat(2)});
    FAIL("expected RangeViolation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::range_violation);
  }
}

TEST_CASE("membership accepts constants and rejects broken maps") {
  auto chain = builtin_lattice("chain:2");
  CHECK(is_dual_point(*chain, {Rat{1, 2}, Rat{1, 2}}));
  CHECK_FALSE(is_dual_point(*chain, {Rat(1), Rat(-1)}));  // not monotone
  CHECK_FALSE(is_dual_point(*chain, {Rat(0), Rat(2)}));   // out of range

  // indicator of the filter {top} in powerset(2): join rule breaks
  auto ps = builtin_lattice("powerset:2");
  std::vector<Rat> indicator(4, Rat(0));
  indicator[ps->index("{1,2}")] = 1;
  CHECK_FALSE(is_dual_point(*ps, indicator));
}

TEST_CASE("prime filters are homomorphisms") {
  auto ps = builtin_lattice("powerset:2");
  DualPoint p = prime_filter(ps, std::string("{1}"));
  CHECK(p.values[ps->index("{}")] == 0);
  CHECK(p.values[ps->index("{1}")] == 1);
  CHECK(p.values[ps->index("{2}")] == 0);
  CHECK(p.values[ps->index("{1,2}")] == 1);
  CHECK(oracle_is_hom(*ps, p.values));

  auto chain = builtin_lattice("chain:3");
  DualPoint q = prime_filter(chain, std::string("e1"));
  CHECK(q.values == std::vector<Rat>{Rat(0), Rat(1), Rat(1)});

  for (const char* d : {"chain:4", "powerset:3", "five_point", "bottomed_powerset:2"}) {
    auto l = builtin_lattice(d);
    for (int irr : l->irreducibles()) {
      DualPoint f = prime_filter(l, irr);
      CHECK(oracle_is_hom(*l, f.values));
      CHECK(f.values[l->top()] == 1);  // the top lies in every up-set
    }
  }
}

TEST_CASE("prime_filter rejects non-irreducibles") {
  auto ps = builtin_lattice("powerset:2");
  try {
    prime_filter(ps, ps->index("{1,2}"));
    FAIL("expected NotIrreducible");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_irreducible);
  }
}

TEST_CASE("separation witness satisfies its postconditions") {
  auto ps = builtin_lattice("powerset:2");
  DualPoint w = separation_witness(ps, std::string("{2}"), std::string("{1}"));
  CHECK(w.values[ps->index("{2}")] == 0);
  CHECK(w.values[ps->index("{1}")] == 1);
  for (const Rat& v : w.values) CHECK((v == 0 || v == 1));

  auto chain = builtin_lattice("chain:3");
  DualPoint w2 = separation_witness(chain, std::string("e0"), std::string("e2"));
  CHECK(w2.values[0] == 0);
  CHECK(w2.values[2] == 1);

  try {
    separation_witness(ps, std::string("{1}"), std::string("{1}"));
    FAIL("expected OrderViolation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::order_violation);
  }
}

TEST_CASE("pullback along the identity and an inclusion") {
  auto ps = builtin_lattice("powerset:2");
  auto id = LatticeHom::identity(ps);
  DualSample sample = sample_points(ps, 50, 7);
  for (const DualPoint& p : sample.points) {
    DualPoint q = pullback_hom(id, p);
    CHECK(q.values == p.values);
  }

  // inclusion of the chain {0,a,1} into the 2x2 diamond acts by restriction
  LatticeSpec mspec;
  mspec.elements = {"0", "a", "1"};
  mspec.order = {{"0", "a"}, {"a", "1"}};
  LatticeSpec lspec;
  lspec.elements = {"0", "a", "b", "1"};
  lspec.order = {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}};
  auto m = FiniteLattice::build(mspec);
  auto big = FiniteLattice::build(lspec);
  auto inc = LatticeHom::build_by_labels(m, big, {{"0", "0"}, {"a", "a"}, {"1", "1"}});
  DualSample bsample = sample_points(big, 100, 11);
  for (const DualPoint& p : bsample.points) {
    DualPoint r = pullback_hom(inc, p);
    CHECK(r.values[0] == p.values[big->index("0")]);
    CHECK(r.values[1] == p.values[big->index("a")]);
    CHECK(r.values[2] == p.values[big->index("1")]);
    CHECK(oracle_is_hom(*m, r.values));
  }
}

TEST_CASE("pullback respects composition") {
  auto c2 = builtin_lattice("chain:2");
  auto c3 = builtin_lattice("chain:3");
  auto c4 = builtin_lattice("chain:4");
  auto t = LatticeHom::build_by_labels(c2, c3, {{"e0", "e0"}, {"e1", "e2"}});
  auto s = LatticeHom::build_by_labels(c3, c4, {{"e0", "e0"}, {"e1", "e1"}, {"e2", "e3"}});
  auto st = compose(s, t);
  DualSample sample = sample_points(c4, 100, 3);
  for (const DualPoint& p : sample.points) {
    DualPoint lhs = pullback_hom(st, p);
    DualPoint rhs = pullback_hom(t, pullback_hom(s, p));
    CHECK(lhs.values == rhs.values);
  }
}

TEST_CASE("negation maps homomorphisms to the opposite lattice") {
  auto chain = builtin_lattice("chain:2");
  auto op = opposite_lattice(chain);
  DualPoint p = dual_point(chain, {Rat(-1), Rat(1)});
  DualPoint q = negate_point(p, op);
  CHECK(q.values == std::vector<Rat>{Rat(1), Rat(-1)});
  CHECK(oracle_is_hom(*op, q.values));

  DualPoint one = constant_hom(chain, 1);
  CHECK(negate_point(one, op).values == std::vector<Rat>{Rat(-1), Rat(-1)});
}

TEST_CASE("negation is an involution on sampled points") {
  auto ps = builtin_lattice("powerset:3");
  auto op = opposite_lattice(ps);
  auto opop = opposite_lattice(op);
  REQUIRE(same_lattice(ps, opop));
  DualSample sample = sample_points(ps, 1000, 99);
  for (const DualPoint& p : sample.points) {
    DualPoint q = negate_point(p, op);
    CHECK(oracle_is_hom(*op, q.values));
    CHECK(negate_point(q, opop).values == p.values);
  }
}

TEST_CASE("affine paths from nonconstant points to the constants avoid zero") {
  for (const char* d : {"chain:3", "powerset:2", "five_point"}) {
    auto l = builtin_lattice(d);
    DualPoint one = constant_hom(l, 1);
    DualPoint minus = constant_hom(l, -1);
    DualSample sample = sample_points(l, 25, 5);
    for (const DualPoint& p : sample.points) {
      if (p.is_constant()) continue;
      CHECK(affine_path_check(p, one, 64).pass);
      CHECK(affine_path_check(p, minus, 64).pass);
    }
  }
}

TEST_CASE("the straight segment from 1 to -1 dies at the midpoint") {
  auto l = builtin_lattice("powerset:2");
  PathReport r = affine_path_check(constant_hom(l, 1), constant_hom(l, -1), 10);
  CHECK_FALSE(r.pass);
  CHECK(r.failure_kind == "zero");
  REQUIRE(r.first_failure_step.has_value());
  CHECK(*r.first_failure_step == 5);
}

TEST_CASE("trivial path from a point to itself passes") {
  auto l = builtin_lattice("chain:3");
  DualPoint p = prime_filter(l, std::string("e1"));
  CHECK(affine_path_check(p, p, 8).pass);
}

TEST_CASE("path fast and slow arithmetic agree") {
  auto l = builtin_lattice("chain:3");
  DualPoint one = constant_hom(l, 1);
  // denominator 2^21 forces the full rational fallback
  Rat tiny{1, 1 << 21};
  DualPoint slow = dual_point(l, {Rat(0), tiny, Rat(1)});
  DualPoint fast = dual_point(l, {Rat(0), Rat{1, 4}, Rat(1)});
  CHECK(affine_path_check(slow, one, 33).pass);
  CHECK(affine_path_check(fast, one, 33).pass);

  // symmetric constants cross zero at t = 1/2 in both arithmetic modes
  PathReport die_slow = affine_path_check(constant_hom(l, tiny), constant_hom(l, -tiny), 10);
  PathReport die_fast = affine_path_check(one, constant_hom(l, -1), 10);
  CHECK_FALSE(die_slow.pass);
  CHECK_FALSE(die_fast.pass);
  CHECK(die_slow.first_failure_step == die_fast.first_failure_step);
  CHECK(die_slow.failure_kind == "zero");
}

TEST_CASE("sampling is deterministic and always valid") {
  auto ps = builtin_lattice("powerset:3");
  DualSample a = sample_points(ps, 10000, 42);
  DualSample b = sample_points(ps, 10000, 42);
  REQUIRE(a.points.size() == b.points.size());
  for (size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i].values == b.points[i].values);

  auto cells = enumerate_cells(*ps);
  long invalid = 0, provenance_mismatch = 0;
  for (size_t i = 0; i < a.points.size(); ++i) {
    if (!oracle_is_hom(*ps, a.points[i].values)) ++invalid;
    DualPoint again = point_from_cell(ps, cells[a.provenance[i].cell], a.provenance[i].coords);
    if (again.values != a.points[i].values) ++provenance_mismatch;
  }
  CHECK(invalid == 0);
  CHECK(provenance_mismatch == 0);

  DualSample c = sample_points(ps, 200, 43);
  bool any_diff = false;
  for (size_t i = 0; i < c.points.size(); ++i)
    if (c.points[i].values != a.points[i].values) any_diff = true;
  CHECK(any_diff);
}

TEST_CASE("nonconstant homomorphism exists iff the lattice has two points") {
  auto chain = builtin_lattice("chain:2");
  DualPoint p = nonconstant_hom(chain);
  CHECK(p.values == std::vector<Rat>{Rat(0), Rat(1)});

  auto ps = builtin_lattice("powerset:2");
  DualPoint q = nonconstant_hom(ps);
  CHECK_FALSE(q.is_constant());

  LatticeSpec spec;
  spec.elements = {"*"};
  auto single = FiniteLattice::build(spec);
  try {
    nonconstant_hom(single);
    FAIL("expected TrivialLattice");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::trivial_lattice);
  }
}

TEST_CASE("multiset identity on the 2x2 diamond dual") {
  LatticeSpec spec;
  spec.elements = {"0", "a", "b", "1"};
  spec.order = {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}};
  auto l = FiniteLattice::build(spec);
  for (const DualPoint& p : cell_grid_points(l, kGrid)) {
    auto ends = std::minmax(p.values[l->index("0")], p.values[l->index("1")]);
    auto mids = std::minmax(p.values[l->index("a")], p.values[l->index("b")]);
    CHECK(ends.first == mids.first);
    CHECK(ends.second == mids.second);
  }
}

TEST_CASE("cell vertex points are valid and include the constants") {
  for (const char* d : {"chain:4", "powerset:2", "five_point"}) {
    auto l = builtin_lattice(d);
    auto vertices = cell_vertex_points(l);
    bool has_one = false, has_minus = false;
    for (const DualPoint& p : vertices) {
      CHECK(oracle_is_hom(*l, p.values));
      if (p.is_constant() && p.values[0] == 1) has_one = true;
      if (p.is_constant() && p.values[0] == -1) has_minus = true;
    }
    CHECK(has_one);
    CHECK(has_minus);
  }
}

TEST_CASE("convex blends toward the constant stay homomorphisms") {
  auto l = builtin_lattice("powerset:2");
  DualPoint u = nonconstant_hom(l);
  DualPoint one = constant_hom(l, 1);
  for (int i = 0; i <= 4; ++i) {
    Rat t{i, 4};
    std::vector<Rat> blend(l->size());
    for (int z = 0; z < l->size(); ++z)
      blend[z] = (1 - t) * u.values[z] + t * one.values[z];
    CHECK(oracle_is_hom(*l, blend));
  }
}
