#include "fbl/expr.hpp"

#include "fbl/json_io.hpp"

#include <doctest.h>

using namespace fbl;

namespace {

DualPoint density_point(const LatticePtr& l, int gamma) {
  std::vector<Rat> values(l->size());
  for (int i = 0; i < l->size(); ++i) {
    if (l->label(i) == "0hat")
      values[i] = -1;
    else
      values[i] = l->leq(l->index("{" + std::to_string(gamma) + "}"), i) ? 1 : 0;
  }
  return dual_point(l, values);
}

Rat sup_metric(const DualPoint& a, const DualPoint& b) {
  Rat d = 0;
  for (size_t i = 0; i < a.values.size(); ++i)
    d = std::max(d, rat_abs(a.values[i] - b.values[i]));
  return d;
}

}  // namespace

TEST_CASE("rationalize recovers simple fractions within the denominator cap") {
  CHECK(rationalize(0.5) == Rat{1, 2});
  CHECK(rationalize(-0.25) == Rat{-1, 4});
  CHECK(rationalize(1.0 / 3.0, 100) == Rat{1, 3});
  CHECK(rationalize(0.0) == 0);
  CHECK(rationalize(1.0) == 1);
  Rat pi_approx = rationalize(3.14159265358979, 64);
  CHECK(pi_approx == Rat{22, 7});
  CHECK(denominator(rationalize(0.7390851332151607, 1 << 16)) <= (1 << 16));
}

TEST_CASE("generator evaluation and constants") {
  auto l = builtin_lattice("chain:3");
  Expr d0 = Expr::gen(l, std::string("e0"));
  CHECK(eval(d0, constant_hom(l, 1)) == 1);
  CHECK(eval(d0, constant_hom(l, 0)) == 0);
  CHECK(eval(Expr::scale(Rat{3, 2}, d0), constant_hom(l, 1)) == Rat{3, 2});
}

TEST_CASE("the density family expressions evaluate as computed by hand") {
  auto l = builtin_lattice("bottomed_powerset:2");
  Expr f1 = builtin_expr("f_gamma", l, {{"gamma", "1"}});
  Expr f2 = builtin_expr("f_gamma", l, {{"gamma", "2"}});
  DualPoint x1 = density_point(l, 1);
  CHECK(eval(f1, x1) == 0);
  CHECK(eval(f2, x1) == -1);
  CHECK(rat_abs(eval(f1 - f2, x1)) == 1);
}

TEST_CASE("evaluation requires a shared lattice") {
  auto a = builtin_lattice("chain:2");
  auto b = builtin_lattice("chain:3");
  Expr f = Expr::gen(a, 0);
  try {
    eval(f, constant_hom(b, 0));
    FAIL("expected LatticeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::lattice_mismatch);
  }
}

TEST_CASE("positive homogeneity holds exactly on sampled points") {
  auto l = builtin_lattice("powerset:2");
  std::vector<int> gens = {0, 1, 2, 3};
  SplitRng rng(17);
  DualSample sample = sample_points(l, 50, 23);
  const Rat lambdas[] = {Rat(0), Rat{1, 4}, Rat{1, 2}, Rat{3, 4}, Rat(1)};
  for (int c = 0; c < 10; ++c) {
    Expr f = random_lattice_linear_expr(l, gens, rng, 5);
    for (const DualPoint& p : sample.points) {
      Rat base = eval(f, p);
      for (const Rat& lam : lambdas) {
        std::vector<Rat> scaled(p.values.size());
        for (size_t i = 0; i < p.values.size(); ++i) scaled[i] = lam * p.values[i];
        DualPoint q{l, scaled};
        CHECK(eval(f, q) == lam * base);
      }
    }
  }
}

TEST_CASE("eval at the zero homomorphism is zero") {
  auto l = builtin_lattice("five_point");
  std::vector<int> gens = {0, 1, 2, 3, 4};
  SplitRng rng(5);
  DualPoint zero = constant_hom(l, 0);
  for (int c = 0; c < 25; ++c)
    CHECK(eval(random_lattice_linear_expr(l, gens, rng, 6), zero) == 0);
}

TEST_CASE("generator transport is a lattice homomorphism into expressions") {
  auto l = builtin_lattice("powerset:2");
  DualSample sample = sample_points(l, 100, 7);
  for (int x = 0; x < l->size(); ++x)
    for (int y = 0; y < l->size(); ++y) {
      Expr dx = Expr::gen(l, x), dy = Expr::gen(l, y);
      Expr djoin = Expr::gen(l, l->join(x, y));
      Expr dmeet = Expr::gen(l, l->meet(x, y));
      for (const DualPoint& p : sample.points) {
        CHECK(eval(djoin, p) == std::max(eval(dx, p), eval(dy, p)));
        CHECK(eval(dmeet, p) == std::min(eval(dx, p), eval(dy, p)));
      }
    }
}

TEST_CASE("structural Lipschitz constants") {
  auto l = builtin_lattice("chain:3");
  Expr d0 = Expr::gen(l, 0), d1 = Expr::gen(l, 1);
  CHECK(lipschitz(d0) == 1);
  CHECK(lipschitz(Expr::add(Expr::scale(2, d0), Expr::scale(3, d1))) == 5);
  CHECK(lipschitz(Expr::sup(Expr::abs(d0), Expr::abs(d1))) == 1);
}

TEST_CASE("Lipschitz bound is sound on ten thousand random pairs") {
  auto l = builtin_lattice("powerset:2");
  Expr f = Expr::sup(Expr::abs(Expr::gen(l, 1)), Expr::abs(Expr::gen(l, 2)));
  Rat bound = lipschitz(f);
  DualSample a = sample_points(l, 10000, 1);
  DualSample b = sample_points(l, 10000, 2);
  for (size_t i = 0; i < a.points.size(); ++i) {
    Rat diff = rat_abs(eval(f, a.points[i]) - eval(f, b.points[i]));
    CHECK(diff <= bound * sup_metric(a.points[i], b.points[i]));
  }
}

TEST_CASE("quasi-interior point construction") {
  auto l = builtin_lattice("chain:2");
  Expr u = quasi_interior_point(l, {"e0", "e1"}, {Rat{1, 2}, Rat{1, 4}});
  CHECK(eval(u, constant_hom(l, 1)) == Rat{3, 4});
  CHECK(eval(u, constant_hom(l, 0)) == 0);
  // positive at every nonzero cell vertex
  for (const DualPoint& p : cell_vertex_points(l))
    if (!p.is_zero()) CHECK(eval(u, p) > 0);

  CHECK_THROWS_AS(quasi_interior_point(l, {}, {}), Error);
  CHECK_THROWS_AS(quasi_interior_point(l, {"e0"}, {Rat(2)}), Error);
}

TEST_CASE("truncation at level zero collapses to zero") {
  auto l = builtin_lattice("chain:3");
  Expr u = quasi_interior_point(l);
  std::vector<int> gens = {0, 1, 2};
  SplitRng rng(3);
  Expr f = random_lattice_linear_expr(l, gens, rng, 4);
  Expr f0 = qi_truncate(f, u, 0);
  DualSample sample = sample_points(l, 100, 9);
  for (const DualPoint& p : sample.points) CHECK(eval(f0, p) == 0);
}

TEST_CASE("truncation never grows the absolute value") {
  auto l = builtin_lattice("powerset:2");
  Expr u = quasi_interior_point(l);
  std::vector<int> gens = {0, 1, 2, 3};
  SplitRng rng(8);
  DualSample sample = sample_points(l, 10000, 31);
  for (int c = 0; c < 5; ++c) {
    Expr f = random_lattice_linear_expr(l, gens, rng, 4);
    for (int m : {1, 3}) {
      Expr fm = qi_truncate(f, u, m);
      for (const DualPoint& p : sample.points)
        CHECK(rat_abs(eval(fm, p)) <= rat_abs(eval(f, p)));
    }
  }
}

TEST_CASE("induced operator substitutes generators and matches the pullback") {
  auto c2 = builtin_lattice("chain:2");
  auto c4 = builtin_lattice("chain:4");
  auto t = LatticeHom::build_by_labels(c2, c4, {{"e0", "e1"}, {"e1", "e3"}});
  Expr d0 = Expr::gen(c2, 0);
  Expr image = induce_operator(t, d0);
  CHECK(structurally_equal(image, Expr::gen(c4, 1)));

  auto id = LatticeHom::identity(c2);
  std::vector<int> gens = {0, 1};
  SplitRng rng(12);
  for (int c = 0; c < 10; ++c) {
    Expr f = random_lattice_linear_expr(c2, gens, rng, 5);
    CHECK(structurally_equal(induce_operator(id, f), f));
  }

  DualSample sample = sample_points(c4, 1000, 77);
  for (int c = 0; c < 10; ++c) {
    Expr f = random_lattice_linear_expr(c2, gens, rng, 5);
    Expr tf = induce_operator(t, f);
    for (const DualPoint& y : sample.points)
      CHECK(eval(tf, y) == eval(f, pullback_hom(t, y)));
  }
}

TEST_CASE("extracted operator maps agree with the pullback and are homs") {
  LatticeSpec mspec;
  mspec.elements = {"0", "a", "1"};
  mspec.order = {{"0", "a"}, {"a", "1"}};
  LatticeSpec lspec;
  lspec.elements = {"0", "a", "b", "1"};
  lspec.order = {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}};
  auto m = FiniteLattice::build(mspec);
  auto big = FiniteLattice::build(lspec);
  auto inc = LatticeHom::build_by_labels(m, big, {{"0", "0"}, {"a", "a"}, {"1", "1"}});

  DualSample sample = sample_points(big, 200, 15);
  for (const DualPoint& y : sample.points) {
    auto phi = phi_extract([&](int x) { return induce_operator(inc, Expr::gen(m, x)); }, *m, y);
    CHECK(phi == pullback_hom(inc, y).values);
    CHECK(is_dual_point(*m, phi));
  }
  // the zero point extracts to the zero map
  auto phi0 = phi_extract([&](int x) { return induce_operator(inc, Expr::gen(m, x)); }, *m,
                          constant_hom(big, 0));
  for (const Rat& v : phi0) CHECK(v == 0);
}

TEST_CASE("opposite transport reproduces evaluations through negation") {
  auto l = builtin_lattice("five_point");
  auto op = opposite_lattice(l);
  std::vector<int> gens = {0, 1, 2, 3, 4};
  SplitRng rng(21);
  DualSample sample = sample_points(l, 200, 19);
  for (int c = 0; c < 10; ++c) {
    Expr f = random_lattice_linear_expr(l, gens, rng, 5);
    Expr fop = transport_opposite(f, op);
    for (const DualPoint& p : sample.points)
      CHECK(eval(f, p) == eval(fop, negate_point(p, op)));
  }
}

TEST_CASE("named strong unit candidate") {
  auto l = builtin_lattice("chain:2");
  Expr unit = builtin_expr("strong_unit_candidate", l);
  CHECK(eval(unit, constant_hom(l, 1)) == 1);
  CHECK(eval(unit, constant_hom(l, -1)) == 1);
  CHECK(eval(unit, dual_point(l, {Rat(0), Rat{1, 2}})) == Rat{1, 2});
}

TEST_CASE("named order-density expression on a chain") {
  auto l = builtin_lattice("chain:8");
  Expr f = builtin_expr("order_density_f", l);
  CHECK(generators_used(f).size() == 8);
  // f(1) = 1 - sum(2^-(n+1), n = 1..7) = 1/2 + 2^-8
  CHECK(eval(f, constant_hom(l, 1)) == Rat{129, 256});
  // nonnegative by the outer positive part
  DualSample sample = sample_points(l, 200, 4);
  for (const DualPoint& p : sample.points) CHECK(eval(f, p) >= 0);
}

TEST_CASE("unknown and underspecified named expressions") {
  auto l = builtin_lattice("chain:2");
  try {
    builtin_expr("nope", l);
    FAIL("expected UnknownName");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unknown_name);
  }
  try {
    builtin_expr("f_gamma", builtin_lattice("bottomed_powerset:2"));
    FAIL("expected MissingParam");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::missing_param);
  }
}

TEST_CASE("expression JSON round-trips structurally") {
  auto l = builtin_lattice("powerset:2");
  std::vector<int> gens = {0, 1, 2, 3};
  SplitRng rng(33);
  for (int c = 0; c < 20; ++c) {
    Expr f = random_lattice_linear_expr(l, gens, rng, 6);
    Json j = expr_to_json(f);
    Expr g = expr_from_json(l, j);
    CHECK(structurally_equal(f, g));
  }
}

TEST_CASE("expression JSON accepts n-ary args and rejects junk") {
  auto l = builtin_lattice("chain:3");
  Json j = Json::parse(R"({"op":"sup","args":[
      {"op":"gen","elem":"e0"},{"op":"gen","elem":"e1"},{"op":"gen","elem":"e2"}]})");
  Expr f = expr_from_json(l, j);
  CHECK(eval(f, prime_filter(l, std::string("e2"))) == 1);
  CHECK_THROWS_AS(expr_from_json(l, Json::parse(R"({"op":"frobnicate"})")), Error);
  CHECK_THROWS_AS(expr_from_json(l, Json::parse(R"({"op":"gen","elem":"zz"})")), Error);
}
