#include "fbl/lattice.hpp"

#include <doctest.h>

#include <algorithm>

using namespace fbl;

namespace {

LatticeSpec chain_spec(int n) { return builtin_lattice_spec("chain:" + std::to_string(n)); }

// oracle: join-irreducible iff exactly one lower cover, by scanning leq
std::vector<int> brute_irreducibles(const FiniteLattice& l) {
  std::vector<int> out;
  for (int j = 0; j < l.size(); ++j) {
    int covers = 0;
    for (int i = 0; i < l.size(); ++i) {
      if (!l.lt(i, j)) continue;
      bool direct = true;
      for (int k = 0; k < l.size(); ++k)
        if (l.lt(i, k) && l.lt(k, j)) direct = false;
      if (direct) ++covers;
    }
    if (covers == 1) out.push_back(j);
  }
  return out;
}

}  // namespace

TEST_CASE("chain irreducibles are the non-bottom elements") {
  auto l = FiniteLattice::build(chain_spec(3));
  CHECK(l->size() == 3);
  CHECK(l->irreducibles() == brute_irreducibles(*l));
  CHECK(l->irreducibles() == std::vector<int>{1, 2});
  CHECK(l->bottom() == 0);
  CHECK(l->top() == 2);
}

TEST_CASE("powerset irreducibles are the singletons") {
  auto l = builtin_lattice("powerset:2");
  CHECK(l->irreducibles() == brute_irreducibles(*l));
  std::vector<std::string> labels;
  for (int p : l->irreducibles()) labels.push_back(l->label(p));
  CHECK(labels == std::vector<std::string>{"{1}", "{2}"});
}

TEST_CASE("M3 diamond is rejected with a distributivity witness") {
  CHECK_THROWS_WITH_AS(builtin_lattice("diamond"),
                       doctest::Contains("distributivity fails"), Error);
  try {
    builtin_lattice("diamond");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_distributive);
  }
}

TEST_CASE("N5 pentagon is rejected") {
  CHECK_THROWS_AS(builtin_lattice("pentagon"), Error);
}

TEST_CASE("chains, powersets, and the five-point lattice build fine") {
  for (const char* d : {"chain:2", "chain:5", "powerset:1", "powerset:3",
                        "bottomed_powerset:2", "five_point"})
    CHECK_NOTHROW(builtin_lattice(d));
}

TEST_CASE("cycle detection") {
  LatticeSpec spec;
  spec.elements = {"a", "b"};
  spec.order = {{"a", "b"}, {"b", "a"}};
  try {
    FiniteLattice::build(spec);
    FAIL("expected CyclicOrder");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::cyclic_order);
  }
}

TEST_CASE("pair without a join is not a lattice") {
  LatticeSpec spec;  // two incomparable points, no bounds
  spec.elements = {"a", "b"};
  try {
    FiniteLattice::build(spec);
    FAIL("expected NotALattice");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_a_lattice);
  }
}

TEST_CASE("cover input and full order input canonicalize identically") {
  LatticeSpec covers = chain_spec(4);
  LatticeSpec leq;
  leq.name = covers.name;
  leq.elements = covers.elements;
  leq.covers = false;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      leq.order.emplace_back("e" + std::to_string(i), "e" + std::to_string(j));
  auto a = FiniteLattice::build(covers);
  auto b = FiniteLattice::build(leq);
  CHECK(same_lattice(a, b));
  CHECK(a->to_spec().order == b->to_spec().order);
}

TEST_CASE("meet and join tables agree with the order") {
  for (const char* d : {"chain:4", "powerset:3", "five_point", "bottomed_powerset:2"}) {
    auto l = builtin_lattice(d);
    for (int x = 0; x < l->size(); ++x)
      for (int y = 0; y < l->size(); ++y) {
        CHECK(l->leq(x, y) == (l->meet(x, y) == x));
        CHECK(l->leq(x, y) == (l->join(x, y) == y));
      }
  }
}

TEST_CASE("join-irreducible decomposition reassembles the element") {
  for (const char* d : {"chain:4", "powerset:3", "bottomed_powerset:2", "five_point"}) {
    auto l = builtin_lattice(d);
    for (int z = 0; z < l->size(); ++z) {
      auto parts = l->join_irreducible_decomposition(z);
      int rebuilt = l->bottom();
      for (int p : parts) rebuilt = l->join(rebuilt, p);
      CHECK(rebuilt == z);
    }
  }
}

TEST_CASE("decomposition examples") {
  auto ps = builtin_lattice("powerset:2");
  auto parts = ps->join_irreducible_decomposition(ps->index("{1,2}"));
  std::vector<std::string> labels;
  for (int p : parts) labels.push_back(ps->label(p));
  std::sort(labels.begin(), labels.end());
  CHECK(labels == std::vector<std::string>{"{1}", "{2}"});

  auto chain = builtin_lattice("chain:3");
  CHECK(chain->join_irreducible_decomposition(0).empty());
  CHECK(chain->join_irreducible_decomposition(2) == std::vector<int>{1, 2});
}

TEST_CASE("opposite lattice transposes the order and swaps the tables") {
  for (const char* d : {"chain:3", "powerset:2", "five_point"}) {
    auto l = builtin_lattice(d);
    auto op = opposite_lattice(l);
    for (int x = 0; x < l->size(); ++x)
      for (int y = 0; y < l->size(); ++y) {
        CHECK(op->leq(x, y) == l->leq(y, x));
        CHECK(op->meet(x, y) == l->join(x, y));
        CHECK(op->join(x, y) == l->meet(x, y));
      }
    auto opop = opposite_lattice(op);
    CHECK(same_lattice(l, opop));
  }
}

TEST_CASE("five-point lattice is not isomorphic to its opposite") {
  auto l = builtin_lattice("five_point");
  auto op = opposite_lattice(l);
  CHECK_FALSE(lattices_isomorphic(*l, *op));
  // sanity: a chain is isomorphic to its reversal
  auto c = builtin_lattice("chain:3");
  CHECK(lattices_isomorphic(*c, *opposite_lattice(c)));
}

TEST_CASE("homomorphism validation accepts the retraction and rejects junk") {
  auto l = builtin_lattice("powerset:3");
  auto ir = interval_retraction(l, "{}", "{1}");
  // r o i = id on the interval
  for (int i = 0; i < ir.interval.lattice->size(); ++i)
    CHECK(ir.retraction.apply(ir.inclusion.apply(i)) == i);

  // a non-homomorphism: swap bottom and top of a chain, fix the middle
  auto c = builtin_lattice("chain:3");
  CHECK_THROWS_AS(
      LatticeHom::build_by_labels(c, c, {{"e0", "e2"}, {"e1", "e1"}, {"e2", "e0"}}), Error);
}

TEST_CASE("retraction fixes the interval and clamps outsiders") {
  auto l = builtin_lattice("chain:5");
  auto ir = interval_retraction(l, "e1", "e3");
  // x <= a maps to a
  CHECK(ir.interval.lattice->label(ir.retraction.apply(l->index("e0"))) == "e1");
  // x in [a,b] stays put
  CHECK(ir.interval.lattice->label(ir.retraction.apply(l->index("e2"))) == "e2");
  // x >= b maps to b
  CHECK(ir.interval.lattice->label(ir.retraction.apply(l->index("e4"))) == "e3");
}

TEST_CASE("interval endpoints must be ordered") {
  auto l = builtin_lattice("powerset:2");
  try {
    interval_retraction(l, "{1}", "{2}");
    FAIL("expected OrderViolation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::order_violation);
  }
}

TEST_CASE("surjective and injective checks") {
  auto l = builtin_lattice("chain:3");
  auto id = LatticeHom::identity(l);
  CHECK(id.is_surjective());
  CHECK(id.is_injective());

  // inclusion {0,a,1} into the 2x2 diamond {0,a,b,1}
  LatticeSpec mspec;
  mspec.elements = {"0", "a", "1"};
  mspec.order = {{"0", "a"}, {"a", "1"}};
  LatticeSpec lspec;
  lspec.elements = {"0", "a", "b", "1"};
  lspec.order = {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}};
  auto m = FiniteLattice::build(mspec);
  auto big = FiniteLattice::build(lspec);
  auto inc = LatticeHom::build_by_labels(m, big, {{"0", "0"}, {"a", "a"}, {"1", "1"}});
  CHECK(inc.is_injective());
  CHECK_FALSE(inc.is_surjective());

  // constant map on a 2-element lattice
  auto two = builtin_lattice("chain:2");
  auto constant = LatticeHom::build_by_labels(two, two, {{"e0", "e0"}, {"e1", "e0"}});
  CHECK_FALSE(constant.is_injective());
}

TEST_CASE("products of accepted lattices stay distributive") {
  // direct product of chain(2) x chain(3), built explicitly
  LatticeSpec spec;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      spec.elements.push_back("p" + std::to_string(i) + std::to_string(j));
  spec.covers = false;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 2; ++k)
        for (int t = 0; t < 3; ++t)
          if (i <= k && j <= t && (i != k || j != t))
            spec.order.emplace_back("p" + std::to_string(i) + std::to_string(j),
                                    "p" + std::to_string(k) + std::to_string(t));
  CHECK_NOTHROW(FiniteLattice::build(spec));
}
