#pragma once

#include "fbl/dual.hpp"
#include "fbl/expr.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fbl {

// Two-sided certificate for sup over L* of |f|: branch-and-bound on the
// monotone coordinate boxes with interval and Lipschitz bounds. value_low is
// attained by argmax_point (re-checkable exactly), value_high dominates the
// supremum; on normal exit the gap is <= eps, otherwise budget_exhausted.
struct SupNormCertificate {
  Rat value_low;
  Rat value_high;
  DualPoint argmax_point;
  Rat eps;
  std::uint64_t nodes = 0;
  bool budget_exhausted = false;
};

SupNormCertificate sup_norm(const Expr& f, const Rat& eps,
                            std::uint64_t node_budget_per_cell = 100000);

struct SearchBudget {
  std::uint64_t vertex_tuple_cap = 1000000;
  int ascent_starts = 64;
  int ascent_iters = 200;
  bool use_supnorm_seed = true;
  std::uint64_t supnorm_node_budget = 20000;
};

// Certified lower bound for the free norm via a witness tuple: the reported
// lower equals objective/constraint recomputed exactly from the witness.
// upper stays empty (+infinity) unless a domination certificate is attached
// by the caller.
struct NormEstimate {
  Rat lower;
  std::optional<Rat> upper;  // empty = +infinity
  std::vector<DualPoint> witness;
  Rat objective;
  Rat constraint;
  int m = 1;
  std::uint64_t seed = 0;
  SearchBudget budget;
  std::string method;
};

// Maximizes sum_i |f(x_i*)| / max_z sum_i |x_i*(z)| over tuples of at most
// m points: exhaustive cell-vertex tuples, the sup-norm argmax, optional
// caller hints, then rationalized multi-start coordinate ascent. The bound
// is monotone nondecreasing in m (smaller tuple sizes are always searched).
NormEstimate free_norm_lower(const Expr& f, int m, const SearchBudget& budget = {},
                             std::uint64_t seed = 0,
                             const std::vector<std::vector<DualPoint>>& hints = {});

// The certificate induced by a specific witness tuple, no search.
NormEstimate estimate_from_witness(const Expr& f, std::vector<DualPoint> witness);

// Exact signed maximum of a piecewise-linear expression over all of L*:
// innermost abs/pos/sup/inf branches are resolved by sign-splitting the cell
// polytope, each linear leaf goes to an exact LP. Complete at desk scale.
struct CellMaxResult {
  Rat value;
  DualPoint argmax;
  int cell_index = 0;
};

CellMaxResult exact_max_over_dual(const Expr& g);

// Certifies |f| <= sum_j c_j |delta_{x_j}| pointwise on L* and returns
// sum_j c_j as a free-norm upper bound; on failure carries an exact
// counterexample point. eps is accepted for interface compatibility; the
// check itself is exact.
struct DominationResult {
  bool ok = false;
  Rat upper;
  std::optional<DualPoint> counterexample;
  Rat violation;
};

DominationResult domination_upper(const Expr& f,
                                  const std::vector<std::pair<Rat, std::string>>& generators,
                                  const Rat& eps = Rat(0));

// Per-cell exact verification that |delta_x| <= |delta_bottom| v |delta_top|
// for every x: the block indices satisfy m(bottom) = 0, m(top) = k, so the
// domination reduces to |v_{m(x)}| <= max(|v_0|, |v_k|) under monotonicity;
// verified on all cell vertices and a rational grid.
struct StrongUnitReport {
  bool has_strong_unit = false;
  std::optional<Expr> unit;
  int cells = 0;
  bool index_reduction_ok = false;
  long vertex_checks = 0;
  long grid_checks = 0;
  bool dominated = false;
  std::string note;
};

StrongUnitReport strong_unit_check(const LatticePtr& lattice);

// On chain(N): the sublattice generated by the first n elements has
// supremum x = e_{n-1}; z* separates y = e_n from it, every lattice-linear
// expression over the first n generators vanishes at z*, and delta_y keeps
// value 1 there, giving gap >= 1 against the whole sublattice corpus.
struct ObstructionReport {
  int chain_len = 0;
  int generators = 0;
  DualPoint witness;
  int corpus = 0;
  int vanished = 0;
  bool delta_y_is_one = false;
  bool all_gaps_at_least_one = false;
  Rat gap_lower;
};

ObstructionReport strong_unit_obstruction(int chain_len, int generators, int corpus = 100,
                                          std::uint64_t seed = 0);

// Truncated no-order-density demonstration on chain(N): the step point y*
// vanishes below e_s, the blend z_t* = t 1 + (1-t) y* keeps h(z_t*) = t h(1)
// for h over low generators, and f(z_t*) = 0 for every t below the exact
// rational threshold solved from the domination inequality.
struct OrderDensityReport {
  int chain_len = 0;
  int split = 0;           // step position s
  Rat f_at_one;            // 1 - sum(alpha) > 0
  Rat threshold;           // exact t-bar
  int grid = 0;
  int h_corpus = 0;
  bool homogeneity_ok = false;  // h(z_t*) = t h(x*) on every grid t
  bool f_vanishes_ok = false;   // f(z_t*) = 0 on every grid t < t-bar
  bool points_valid = false;    // every z_t* passes membership
  std::string caveat;
};

OrderDensityReport order_density_demo(int chain_len, int grid = 32, int low_generators = 3,
                                      std::uint64_t seed = 0);

}  // namespace fbl
