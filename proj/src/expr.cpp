#include "fbl/expr.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fbl {

namespace {

void require_same(const LatticePtr& a, const LatticePtr& b) {
  if (!same_lattice(a, b))
    throw Error(Errc::lattice_mismatch, "expressions live on different lattices");
}

}  // namespace

Expr Expr::gen(LatticePtr lattice, int element) {
  if (element < 0 || element >= lattice->size())
    throw Error(Errc::unknown_name, "generator index out of range");
  auto node = std::make_shared<Node>();
  node->kind = Kind::gen;
  node->elem = element;
  return Expr(std::move(lattice), std::move(node));
}

Expr Expr::gen(LatticePtr lattice, const std::string& element) {
  int idx = lattice->index(element);
  return gen(std::move(lattice), idx);
}

Expr Expr::scale(const Rat& c, Expr e) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::scale;
  node->coef = c;
  node->a = e.root_;
  return Expr(e.lattice_, std::move(node));
}

Expr Expr::from_parts(LatticePtr lattice, NodePtr root) {
  if (!lattice || !root) throw Error(Errc::internal, "empty expression parts");
  return Expr(std::move(lattice), std::move(root));
}

Expr Expr::add(Expr lhs, Expr rhs) {
  require_same(lhs.lattice_, rhs.lattice_);
  auto node = std::make_shared<Node>();
  node->kind = Kind::add;
  node->a = lhs.root_;
  node->b = rhs.root_;
  return Expr(lhs.lattice_, std::move(node));
}

Expr Expr::sup(Expr lhs, Expr rhs) {
  require_same(lhs.lattice_, rhs.lattice_);
  auto node = std::make_shared<Node>();
  node->kind = Kind::sup;
  node->a = lhs.root_;
  node->b = rhs.root_;
  return Expr(lhs.lattice_, std::move(node));
}

Expr Expr::inf(Expr lhs, Expr rhs) {
  require_same(lhs.lattice_, rhs.lattice_);
  auto node = std::make_shared<Node>();
  node->kind = Kind::inf;
  node->a = lhs.root_;
  node->b = rhs.root_;
  return Expr(lhs.lattice_, std::move(node));
}

Expr Expr::abs(Expr e) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::abs;
  node->a = e.root_;
  return Expr(e.lattice_, std::move(node));
}

Expr Expr::pos(Expr e) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::pos;
  node->a = e.root_;
  return Expr(e.lattice_, std::move(node));
}

namespace {

int count_nodes(const Expr::NodePtr& node) {
  if (!node) return 0;
  return 1 + count_nodes(node->a) + count_nodes(node->b);
}

int count_branches(const Expr::NodePtr& node) {
  if (!node) return 0;
  int self = 0;
  switch (node->kind) {
    case Expr::Kind::sup:
    case Expr::Kind::inf:
    case Expr::Kind::abs:
    case Expr::Kind::pos:
      self = 1;
      break;
    default:
      break;
  }
  return self + count_branches(node->a) + count_branches(node->b);
}

Rat eval_node(const Expr::NodePtr& node, const std::vector<Rat>& values) {
  switch (node->kind) {
    case Expr::Kind::gen:
      return values[node->elem];
    case Expr::Kind::scale:
      return node->coef * eval_node(node->a, values);
    case Expr::Kind::add:
      return eval_node(node->a, values) + eval_node(node->b, values);
    case Expr::Kind::sup:
      return std::max(eval_node(node->a, values), eval_node(node->b, values));
    case Expr::Kind::inf:
      return std::min(eval_node(node->a, values), eval_node(node->b, values));
    case Expr::Kind::abs:
      return rat_abs(eval_node(node->a, values));
    case Expr::Kind::pos:
      return std::max(eval_node(node->a, values), Rat(0));
  }
  throw Error(Errc::internal, "bad expression node");
}

}  // namespace

int Expr::node_count() const { return count_nodes(root_); }
int Expr::branch_count() const { return count_branches(root_); }

Rat eval(const Expr& f, const DualPoint& point) {
  if (!same_lattice(f.lattice(), point.lattice))
    throw Error(Errc::lattice_mismatch, "point lives on a different lattice than the expression");
  return eval_node(f.root(), point.values);
}

double eval_double(const Expr::NodePtr& node, const std::vector<double>& values) {
  switch (node->kind) {
    case Expr::Kind::gen:
      return values[node->elem];
    case Expr::Kind::scale:
      return rat_double(node->coef) * eval_double(node->a, values);
    case Expr::Kind::add:
      return eval_double(node->a, values) + eval_double(node->b, values);
    case Expr::Kind::sup:
      return std::max(eval_double(node->a, values), eval_double(node->b, values));
    case Expr::Kind::inf:
      return std::min(eval_double(node->a, values), eval_double(node->b, values));
    case Expr::Kind::abs:
      return std::fabs(eval_double(node->a, values));
    case Expr::Kind::pos:
      return std::max(eval_double(node->a, values), 0.0);
  }
  return 0.0;
}

namespace {

Rat lipschitz_node(const Expr::NodePtr& node) {
  switch (node->kind) {
    case Expr::Kind::gen:
      return 1;
    case Expr::Kind::scale:
      return rat_abs(node->coef) * lipschitz_node(node->a);
    case Expr::Kind::add:
      return lipschitz_node(node->a) + lipschitz_node(node->b);
    case Expr::Kind::sup:
    case Expr::Kind::inf:
      return std::max(lipschitz_node(node->a), lipschitz_node(node->b));
    case Expr::Kind::abs:
    case Expr::Kind::pos:
      return lipschitz_node(node->a);
  }
  throw Error(Errc::internal, "bad expression node");
}

bool equal_nodes(const Expr::NodePtr& a, const Expr::NodePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->elem != b->elem || a->coef != b->coef) return false;
  return equal_nodes(a->a, b->a) && equal_nodes(a->b, b->b);
}

Expr::NodePtr map_generators(const Expr::NodePtr& node,
                             const std::function<Expr::NodePtr(int)>& fn) {
  if (node->kind == Expr::Kind::gen) return fn(node->elem);
  auto out = std::make_shared<Expr::Node>(*node);
  if (node->a) out->a = map_generators(node->a, fn);
  if (node->b) out->b = map_generators(node->b, fn);
  return out;
}

}  // namespace

Rat lipschitz(const Expr& f) { return lipschitz_node(f.root()); }

bool structurally_equal(const Expr& a, const Expr& b) {
  return same_lattice(a.lattice(), b.lattice()) && equal_nodes(a.root(), b.root());
}

Expr induce_operator(const LatticeHom& hom, const Expr& f) {
  if (!same_lattice(hom.source(), f.lattice()))
    throw Error(Errc::lattice_mismatch, "operator domain does not match the expression");
  auto root = map_generators(f.root(), [&](int elem) {
    auto node = std::make_shared<Expr::Node>();
    node->kind = Expr::Kind::gen;
    node->elem = hom.apply(elem);
    return Expr::NodePtr(node);
  });
  return Expr::from_parts(hom.target(), std::move(root));
}

Expr transport_opposite(const Expr& f, LatticePtr opposite) {
  if (!opposite) opposite = opposite_lattice(f.lattice());
  auto root = map_generators(f.root(), [&](int elem) {
    auto gen = std::make_shared<Expr::Node>();
    gen->kind = Expr::Kind::gen;
    gen->elem = elem;
    auto neg = std::make_shared<Expr::Node>();
    neg->kind = Expr::Kind::scale;
    neg->coef = -1;
    neg->a = gen;
    return Expr::NodePtr(neg);
  });
  return Expr::from_parts(std::move(opposite), std::move(root));
}

Expr quasi_interior_point(LatticePtr lattice) {
  std::vector<std::string> all = lattice->labels();
  std::vector<Rat> weights;
  Rat w{1, 2};
  for (size_t i = 0; i < all.size(); ++i) {
    weights.push_back(w);
    w /= 2;
  }
  return quasi_interior_point(std::move(lattice), all, weights);
}

Expr quasi_interior_point(LatticePtr lattice, const std::vector<std::string>& separating,
                          const std::vector<Rat>& weights) {
  if (separating.empty())
    throw Error(Errc::empty_separating_set, "separating set must be nonempty");
  if (weights.size() != separating.size())
    throw Error(Errc::param_error, "one weight per separating element required");
  Rat total = 0;
  for (const Rat& w : weights) {
    if (w < 0) throw Error(Errc::param_error, "weights must be nonnegative");
    total += w;
  }
  if (total > 1) throw Error(Errc::param_error, "weights must sum to at most 1");
  Expr u = Expr::scale(weights[0], Expr::abs(Expr::gen(lattice, separating[0])));
  for (size_t i = 1; i < separating.size(); ++i)
    u = Expr::add(u, Expr::scale(weights[i], Expr::abs(Expr::gen(lattice, separating[i]))));
  return u;
}

Expr qi_truncate(const Expr& f, const Expr& u, int m) {
  if (!same_lattice(f.lattice(), u.lattice()))
    throw Error(Errc::lattice_mismatch, "truncation requires a shared lattice");
  if (m < 0) throw Error(Errc::param_error, "truncation level must be nonnegative");
  Expr mu = Expr::scale(m, u);
  return Expr::sup(Expr::inf(f, mu), Expr::scale(-m, u));
}

std::vector<Rat> phi_extract(const std::function<Expr(int)>& op_on_generator,
                             const FiniteLattice& domain, const DualPoint& point) {
  std::vector<Rat> out(domain.size());
  for (int x = 0; x < domain.size(); ++x) {
    Expr image = op_on_generator(x);
    out[x] = eval(image, point);
  }
  return out;
}

Expr builtin_expr(const std::string& name, LatticePtr lattice,
                  const std::map<std::string, std::string>& params) {
  auto param = [&](const std::string& key) -> std::string {
    auto it = params.find(key);
    if (it == params.end())
      throw Error(Errc::missing_param, "named expression '" + name + "' needs param '" + key + "'");
    return it->second;
  };
  if (name == "f_gamma") {
    std::string gamma = param("gamma");
    std::string gamma_label = "{" + gamma + "}";
    if (!lattice->find("0hat") || !lattice->find("{}") || !lattice->find(gamma_label))
      throw Error(Errc::param_error, "f_gamma expects a bottomed powerset with element " + gamma_label);
    Expr a = Expr::gen(lattice, "0hat");
    Expr g = Expr::gen(lattice, gamma_label);
    Expr b = Expr::gen(lattice, "{}");
    return Expr::inf(Expr::sup(Expr::add(a, g), a), b);
  }
  if (name == "strong_unit_candidate") {
    Expr lo = Expr::abs(Expr::gen(lattice, lattice->bottom()));
    Expr hi = Expr::abs(Expr::gen(lattice, lattice->top()));
    return Expr::sup(lo, hi);
  }
  if (name == "order_density_f") {
    const int n = lattice->size();
    if (n < 2) throw Error(Errc::param_error, "order_density_f needs a chain of length >= 2");
    std::vector<Rat> alphas;
    if (auto it = params.find("alphas"); it != params.end()) {
      std::stringstream ss(it->second);
      std::string tok;
      while (std::getline(ss, tok, ',')) alphas.push_back(parse_rat(tok));
    } else {
      Rat a{1, 4};
      for (int i = 1; i < n; ++i) {
        alphas.push_back(a);
        a /= 2;
      }
    }
    if (static_cast<int>(alphas.size()) != n - 1)
      throw Error(Errc::param_error, "order_density_f needs one alpha per non-bottom element");
    Expr body = Expr::abs(Expr::gen(lattice, 0));
    for (int i = 1; i < n; ++i)
      body = Expr::add(body, Expr::scale(-alphas[i - 1], Expr::abs(Expr::gen(lattice, i))));
    return Expr::pos(body);
  }
  if (name == "quasi_interior") {
    return quasi_interior_point(std::move(lattice));
  }
  throw Error(Errc::unknown_name, "unknown named expression '" + name + "'");
}

Expr random_lattice_linear_expr(LatticePtr lattice, const std::vector<int>& generators,
                                SplitRng& rng, int ops) {
  if (generators.empty()) throw Error(Errc::param_error, "need at least one generator");
  auto leaf = [&]() {
    int g = generators[rng.below(generators.size())];
    Expr e = Expr::gen(lattice, g);
    // small rational coefficient in [-2, 2]
    Int num = Int(rng.below(9)) - 4;
    return Expr::scale(Rat{num, Int(2)}, e);
  };
  Expr acc = leaf();
  for (int i = 0; i < ops; ++i) {
    switch (rng.below(5)) {
      case 0: acc = Expr::add(acc, leaf()); break;
      case 1: acc = Expr::sup(acc, leaf()); break;
      case 2: acc = Expr::inf(acc, leaf()); break;
      case 3: acc = Expr::abs(acc); break;
      default: acc = Expr::pos(acc); break;
    }
  }
  return acc;
}

std::vector<int> generators_used(const Expr& f) {
  std::set<int> seen;
  std::function<void(const Expr::NodePtr&)> walk = [&](const Expr::NodePtr& node) {
    if (!node) return;
    if (node->kind == Expr::Kind::gen) seen.insert(node->elem);
    walk(node->a);
    walk(node->b);
  };
  walk(f.root());
  return std::vector<int>(seen.begin(), seen.end());
}

}  // namespace fbl
