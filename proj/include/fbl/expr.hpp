#pragma once

#include "fbl/dual.hpp"
#include "fbl/lattice.hpp"
#include "fbl/rational.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace fbl {

// A symbolic element of FVL<L>: a lattice-linear combination of the
// generators delta_x, kept as a plain tree. Evaluation is exact and
// positively homogeneous by construction.
class Expr {
 public:
  enum class Kind { gen, scale, add, sup, inf, abs, pos };

  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    Kind kind;
    int elem = -1;  // gen
    Rat coef;       // scale
    NodePtr a, b;
  };

  static Expr gen(LatticePtr lattice, int element);
  static Expr gen(LatticePtr lattice, const std::string& element);
  static Expr scale(const Rat& c, Expr e);
  static Expr add(Expr lhs, Expr rhs);
  static Expr sup(Expr lhs, Expr rhs);
  static Expr inf(Expr lhs, Expr rhs);
  static Expr abs(Expr e);
  // primitive rather than sup(e, 0): the grammar has no zero literal and
  // the structural Lipschitz bound stays tight
  static Expr pos(Expr e);

  Expr operator+(const Expr& rhs) const { return add(*this, rhs); }
  Expr operator-(const Expr& rhs) const { return add(*this, scale(-1, rhs)); }

  // Internal: wraps an already-built node tree. The caller guarantees that
  // generator indices reference the given lattice.
  static Expr from_parts(LatticePtr lattice, NodePtr root);

  const LatticePtr& lattice() const { return lattice_; }
  const NodePtr& root() const { return root_; }

  int node_count() const;
  int branch_count() const;  // sup/inf/abs/pos nodes

 private:
  Expr(LatticePtr lattice, NodePtr root)
      : lattice_(std::move(lattice)), root_(std::move(root)) {}

  LatticePtr lattice_;
  NodePtr root_;
};

Rat eval(const Expr& f, const DualPoint& point);

// Fast float path for local search; exact verification happens elsewhere.
double eval_double(const Expr::NodePtr& node, const std::vector<double>& values);

// Structural Lipschitz constant for the coordinate sup-metric on L*.
Rat lipschitz(const Expr& f);

bool structurally_equal(const Expr& a, const Expr& b);

// gen(x) -> gen(T x); satisfies eval(induced f, y*) = eval(f, pullback y*).
Expr induce_operator(const LatticeHom& hom, const Expr& f);

// Generators of L reinterpreted over L^op with a sign flip, so that
// eval(f, x*) = eval(transported f, -x*), exactly.
Expr transport_opposite(const Expr& f, LatticePtr opposite);

// u = sum_n w_n |delta_{s_n}|; defaults: S = all elements, w_n = 2^-n.
Expr quasi_interior_point(LatticePtr lattice);
Expr quasi_interior_point(LatticePtr lattice, const std::vector<std::string>& separating,
                          const std::vector<Rat>& weights);

// f_m = (f ^ m u) v (-m u)
Expr qi_truncate(const Expr& f, const Expr& u, int m);

// The map x -> eval(Tbar delta_x, x*) for an operator given on generators.
std::vector<Rat> phi_extract(const std::function<Expr(int)>& op_on_generator,
                             const FiniteLattice& domain, const DualPoint& point);

// Named expression constructors used by the scenario suite:
//  - "f_gamma" (param "gamma"): ((d(0hat)+d({gamma})) v d(0hat)) ^ d({})
//    on a bottomed powerset
//  - "strong_unit_candidate": |d(bottom)| v |d(top)|
//  - "order_density_f": (|d(e0)| - sum_n alpha_n |d(en)|)_+ on a chain,
//    alpha_n = 2^-(n+1) unless "alphas" is given as comma-separated rationals
Expr builtin_expr(const std::string& name, LatticePtr lattice,
                  const std::map<std::string, std::string>& params = {});

// Deterministic random lattice-linear expressions over a generator subset;
// used for obstruction corpora and property checks.
Expr random_lattice_linear_expr(LatticePtr lattice, const std::vector<int>& generators,
                                SplitRng& rng, int ops);

std::vector<int> generators_used(const Expr& f);

}  // namespace fbl
