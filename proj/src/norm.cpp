#include "fbl/norm.hpp"

#include "fbl/linprog.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <queue>
#include <thread>

namespace fbl {

namespace {

// ---------------------------------------------------------------- intervals

struct Iv {
  Rat lo, hi;
};

Iv ieval(const Expr::NodePtr& node, const std::vector<Rat>& lo, const std::vector<Rat>& hi,
         const std::vector<int>& block) {
  switch (node->kind) {
    case Expr::Kind::gen: {
      int b = block[node->elem];
      return {lo[b], hi[b]};
    }
    case Expr::Kind::scale: {
      Iv a = ieval(node->a, lo, hi, block);
      if (node->coef >= 0) return {node->coef * a.lo, node->coef * a.hi};
      return {node->coef * a.hi, node->coef * a.lo};
    }
    case Expr::Kind::add: {
      Iv a = ieval(node->a, lo, hi, block);
      Iv b = ieval(node->b, lo, hi, block);
      return {a.lo + b.lo, a.hi + b.hi};
    }
    case Expr::Kind::sup: {
      Iv a = ieval(node->a, lo, hi, block);
      Iv b = ieval(node->b, lo, hi, block);
      return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
    }
    case Expr::Kind::inf: {
      Iv a = ieval(node->a, lo, hi, block);
      Iv b = ieval(node->b, lo, hi, block);
      return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
    }
    case Expr::Kind::abs: {
      Iv a = ieval(node->a, lo, hi, block);
      if (a.lo >= 0) return a;
      if (a.hi <= 0) return {-a.hi, -a.lo};
      return {Rat(0), std::max(Rat(-a.lo), a.hi)};
    }
    case Expr::Kind::pos: {
      Iv a = ieval(node->a, lo, hi, block);
      return {std::max(a.lo, Rat(0)), std::max(a.hi, Rat(0))};
    }
  }
  throw Error(Errc::internal, "bad expression node");
}

Rat eval_coords(const Expr::NodePtr& node, const std::vector<Rat>& coords,
                const std::vector<int>& block) {
  switch (node->kind) {
    case Expr::Kind::gen:
      return coords[block[node->elem]];
    case Expr::Kind::scale:
      return node->coef * eval_coords(node->a, coords, block);
    case Expr::Kind::add:
      return eval_coords(node->a, coords, block) + eval_coords(node->b, coords, block);
    case Expr::Kind::sup:
      return std::max(eval_coords(node->a, coords, block), eval_coords(node->b, coords, block));
    case Expr::Kind::inf:
      return std::min(eval_coords(node->a, coords, block), eval_coords(node->b, coords, block));
    case Expr::Kind::abs:
      return rat_abs(eval_coords(node->a, coords, block));
    case Expr::Kind::pos:
      return std::max(eval_coords(node->a, coords, block), Rat(0));
  }
  throw Error(Errc::internal, "bad expression node");
}

// ------------------------------------------------------ branch and bound

struct Box {
  int cell = 0;
  std::vector<Rat> lo, hi;
  Rat ub;
  std::uint64_t id = 0;
};

struct BoxOrder {
  // priority queue pops the largest ub; ties by cell then id ascending
  bool operator()(const Box& a, const Box& b) const {
    if (a.ub != b.ub) return a.ub < b.ub;
    if (a.cell != b.cell) return a.cell > b.cell;
    return a.id > b.id;
  }
};

// monotone closure of a box: lo gets the running max, hi the suffix min;
// returns false when no monotone point remains
bool tighten(std::vector<Rat>& lo, std::vector<Rat>& hi) {
  for (size_t i = 1; i < lo.size(); ++i)
    if (lo[i - 1] > lo[i]) lo[i] = lo[i - 1];
  for (size_t i = hi.size() - 1; i-- > 0;)
    if (hi[i + 1] < hi[i]) hi[i] = hi[i + 1];
  for (size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) return false;
  return true;
}

struct BestPoint {
  bool set = false;
  Rat value;
  int cell = 0;
  std::vector<Rat> coords;

  // value desc, then cell asc, then coords lex asc
  bool improves(const Rat& v, int c, const std::vector<Rat>& x) const {
    if (!set) return true;
    if (v != value) return v > value;
    if (c != cell) return c < cell;
    return x < coords;
  }
  void take(const Rat& v, int c, std::vector<Rat> x) {
    set = true;
    value = v;
    cell = c;
    coords = std::move(x);
  }
};

}  // namespace

SupNormCertificate sup_norm(const Expr& f, const Rat& eps, std::uint64_t node_budget_per_cell) {
  if (eps <= 0) throw Error(Errc::param_error, "eps must be positive");
  const LatticePtr& lattice = f.lattice();
  auto cells = enumerate_cells(*lattice);
  Rat lip = lipschitz(f);

  SupNormCertificate cert;
  cert.eps = eps;
  if (lip == 0) {
    // positively homogeneous and 0-Lipschitz means identically zero
    cert.value_low = 0;
    cert.value_high = 0;
    cert.argmax_point = constant_hom(lattice, 0);
    return cert;
  }

  BestPoint best;
  std::priority_queue<Box, std::vector<Box>, BoxOrder> queue;
  std::uint64_t next_id = 0;
  const std::uint64_t budget = node_budget_per_cell * cells.size();

  auto consider = [&](int ci, const std::vector<Rat>& coords) {
    Rat v = rat_abs(eval_coords(f.root(), coords, cells[ci].block));
    if (best.improves(v, ci, coords)) best.take(v, ci, coords);
  };

  auto make_box = [&](int ci, std::vector<Rat> lo, std::vector<Rat> hi) -> std::optional<Box> {
    if (!tighten(lo, hi)) return std::nullopt;
    const auto& block = cells[ci].block;
    const size_t d = lo.size();
    std::vector<Rat> mid(d);
    Rat radius = 0;
    for (size_t i = 0; i < d; ++i) {
      mid[i] = (lo[i] + hi[i]) / 2;
      radius = std::max(radius, (hi[i] - lo[i]) / 2);
    }
    consider(ci, mid);
    // spread corners: low prefix, high suffix; monotone because the
    // tightened bounds are nondecreasing
    for (size_t s = 0; s <= d; ++s) {
      std::vector<Rat> corner(d);
      for (size_t i = 0; i < d; ++i) corner[i] = i < s ? lo[i] : hi[i];
      consider(ci, corner);
    }
    Iv iv = ieval(f.root(), lo, hi, block);
    Rat iub = std::max(rat_abs(iv.lo), rat_abs(iv.hi));
    Rat lub = rat_abs(eval_coords(f.root(), mid, block)) + lip * radius;
    Box box;
    box.cell = ci;
    box.lo = std::move(lo);
    box.hi = std::move(hi);
    box.ub = std::min(iub, lub);
    box.id = next_id++;
    return box;
  };

  for (size_t ci = 0; ci < cells.size(); ++ci) {
    int d = cells[ci].dim();
    auto box = make_box(static_cast<int>(ci), std::vector<Rat>(d, Rat(-1)),
                        std::vector<Rat>(d, Rat(1)));
    if (box) queue.push(std::move(*box));
  }

  Rat high = best.set ? best.value : Rat(0);
  while (!queue.empty()) {
    Box top = queue.top();
    if (top.ub <= best.value + eps) {
      high = std::max(top.ub, best.value);
      break;
    }
    if (cert.nodes >= budget) {
      high = std::max(top.ub, best.value);
      cert.budget_exhausted = true;
      break;
    }
    queue.pop();
    ++cert.nodes;

    // split the longest edge (smallest index on ties)
    size_t axis = 0;
    Rat width = top.hi[0] - top.lo[0];
    for (size_t i = 1; i < top.lo.size(); ++i) {
      Rat w = top.hi[i] - top.lo[i];
      if (w > width) {
        width = w;
        axis = i;
      }
    }
    Rat midpoint = (top.lo[axis] + top.hi[axis]) / 2;
    for (int side = 0; side < 2; ++side) {
      std::vector<Rat> lo = top.lo, hi = top.hi;
      if (side == 0)
        hi[axis] = midpoint;
      else
        lo[axis] = midpoint;
      auto child = make_box(top.cell, std::move(lo), std::move(hi));
      if (child) {
        child->ub = std::min(child->ub, top.ub);
        queue.push(std::move(*child));
      }
    }
  }
  if (queue.empty()) high = best.value;

  cert.value_low = best.value;
  cert.value_high = std::max(high, best.value);
  cert.argmax_point = point_from_cell(lattice, cells[best.cell], best.coords);
  return cert;
}

// ------------------------------------------------------------ exact engine

namespace {

using LinForm = std::vector<Rat>;  // coefficients per cell coordinate

bool is_branch(const Expr::NodePtr& node) {
  switch (node->kind) {
    case Expr::Kind::sup:
    case Expr::Kind::inf:
    case Expr::Kind::abs:
    case Expr::Kind::pos:
      return true;
    default:
      return false;
  }
}

std::optional<LinForm> linearize(const Expr::NodePtr& node, const std::vector<int>& block,
                                 int dim) {
  switch (node->kind) {
    case Expr::Kind::gen: {
      LinForm lin(dim, Rat(0));
      lin[block[node->elem]] += 1;
      return lin;
    }
    case Expr::Kind::scale: {
      auto a = linearize(node->a, block, dim);
      if (!a) return std::nullopt;
      for (auto& v : *a) v *= node->coef;
      return a;
    }
    case Expr::Kind::add: {
      auto a = linearize(node->a, block, dim);
      if (!a) return std::nullopt;
      auto b = linearize(node->b, block, dim);
      if (!b) return std::nullopt;
      for (int i = 0; i < dim; ++i) (*a)[i] += (*b)[i];
      return a;
    }
    default:
      return std::nullopt;
  }
}

// post-order: first branch node whose subtree has no further branches
Expr::NodePtr innermost_branch(const Expr::NodePtr& node) {
  if (!node) return nullptr;
  if (auto a = innermost_branch(node->a)) return a;
  if (auto b = innermost_branch(node->b)) return b;
  return is_branch(node) ? node : nullptr;
}

// identity-based substitution; shared subtrees resolve together, which is
// sound because every occurrence sees the same region constraint
Expr::NodePtr substitute(const Expr::NodePtr& root, const Expr::NodePtr& target,
                         const Expr::NodePtr& repl) {
  if (root == target) return repl;
  if (!root) return root;
  Expr::NodePtr na = root->a ? substitute(root->a, target, repl) : nullptr;
  Expr::NodePtr nb = root->b ? substitute(root->b, target, repl) : nullptr;
  if (na == root->a && nb == root->b) return root;
  auto copy = std::make_shared<Expr::Node>(*root);
  copy->a = na;
  copy->b = nb;
  return copy;
}

Expr::NodePtr negate_node(const Expr::NodePtr& node) {
  auto neg = std::make_shared<Expr::Node>();
  neg->kind = Expr::Kind::scale;
  neg->coef = -1;
  neg->a = node;
  return neg;
}

Expr::NodePtr zero_node(const Expr::NodePtr& node) {
  auto z = std::make_shared<Expr::Node>();
  z->kind = Expr::Kind::scale;
  z->coef = 0;
  z->a = node;
  return z;
}

struct ExactBest {
  bool set = false;
  Rat value;
  int cell = 0;
  std::vector<Rat> coords;
};

void exact_max_in_cell(const Expr::NodePtr& root, const std::vector<int>& block, int dim,
                       std::vector<LinForm>& rows, std::vector<Rat>& rhs, int cell_index,
                       ExactBest& best) {
  if (auto lin = linearize(root, block, dim)) {
    bool zero_form = std::all_of(lin->begin(), lin->end(), [](const Rat& c) { return c == 0; });
    if (zero_form) {
      // the origin satisfies every homogeneous sign row plus the box
      if (!best.set) {
        best.set = true;
        best.value = 0;
        best.cell = cell_index;
        best.coords.assign(dim, Rat(0));
      }
      return;
    }
    LpResult lp = lp_maximize(rows, rhs, *lin);
    if (lp.status == LpResult::Status::infeasible) return;
    if (lp.status == LpResult::Status::unbounded)
      throw Error(Errc::internal, "cell polytope unexpectedly unbounded");
    if (!best.set || lp.value > best.value) {
      best.set = true;
      best.value = lp.value;
      best.cell = cell_index;
      best.coords = lp.point;
    }
    return;
  }
  Expr::NodePtr br = innermost_branch(root);
  if (!br) throw Error(Errc::internal, "nonlinear expression without a branch node");
  auto la = linearize(br->a, block, dim);
  if (!la) throw Error(Errc::internal, "branch argument failed to linearize");

  auto descend = [&](const LinForm& extra_row, const Rat& extra_rhs, const Expr::NodePtr& repl) {
    rows.push_back(extra_row);
    rhs.push_back(extra_rhs);
    exact_max_in_cell(substitute(root, br, repl), block, dim, rows, rhs, cell_index, best);
    rows.pop_back();
    rhs.pop_back();
  };

  LinForm neg(dim);
  switch (br->kind) {
    case Expr::Kind::sup: {
      auto lb = linearize(br->b, block, dim);
      if (!lb) throw Error(Errc::internal, "branch argument failed to linearize");
      LinForm b_minus_a(dim), a_minus_b(dim);
      for (int i = 0; i < dim; ++i) {
        b_minus_a[i] = (*lb)[i] - (*la)[i];
        a_minus_b[i] = (*la)[i] - (*lb)[i];
      }
      descend(b_minus_a, Rat(0), br->a);  // region where a >= b
      descend(a_minus_b, Rat(0), br->b);  // region where b >= a
      return;
    }
    case Expr::Kind::inf: {
      auto lb = linearize(br->b, block, dim);
      if (!lb) throw Error(Errc::internal, "branch argument failed to linearize");
      LinForm b_minus_a(dim), a_minus_b(dim);
      for (int i = 0; i < dim; ++i) {
        b_minus_a[i] = (*lb)[i] - (*la)[i];
        a_minus_b[i] = (*la)[i] - (*lb)[i];
      }
      descend(a_minus_b, Rat(0), br->a);  // region where a <= b
      descend(b_minus_a, Rat(0), br->b);  // region where b <= a
      return;
    }
    case Expr::Kind::abs: {
      for (int i = 0; i < dim; ++i) neg[i] = -(*la)[i];
      descend(neg, Rat(0), br->a);            // a >= 0
      descend(*la, Rat(0), negate_node(br->a));  // a <= 0
      return;
    }
    case Expr::Kind::pos: {
      for (int i = 0; i < dim; ++i) neg[i] = -(*la)[i];
      descend(neg, Rat(0), br->a);           // a >= 0
      descend(*la, Rat(0), zero_node(br->a));  // a <= 0
      return;
    }
    default:
      throw Error(Errc::internal, "unexpected branch kind");
  }
}

}  // namespace

CellMaxResult exact_max_over_dual(const Expr& g) {
  if (g.branch_count() > 18)
    throw Error(Errc::param_error,
                "expression has too many lattice operations for exact maximization");
  const LatticePtr& lattice = g.lattice();
  auto cells = enumerate_cells(*lattice);
  ExactBest best;
  for (size_t ci = 0; ci < cells.size(); ++ci) {
    const Cell& cell = cells[ci];
    const int d = cell.dim();
    std::vector<LinForm> rows;
    std::vector<Rat> rhs;
    for (int i = 0; i < d; ++i) {
      LinForm up(d, Rat(0)), down(d, Rat(0));
      up[i] = 1;
      down[i] = -1;
      rows.push_back(up);
      rhs.push_back(Rat(1));  // v_i <= 1
      rows.push_back(down);
      rhs.push_back(Rat(1));  // -v_i <= 1
    }
    for (int i = 0; i + 1 < d; ++i) {
      LinForm mono(d, Rat(0));
      mono[i] = 1;
      mono[i + 1] = -1;
      rows.push_back(mono);
      rhs.push_back(Rat(0));  // v_i <= v_{i+1}
    }
    exact_max_in_cell(g.root(), cell.block, d, rows, rhs, static_cast<int>(ci), best);
  }
  if (!best.set) throw Error(Errc::internal, "no feasible cell found");
  CellMaxResult result;
  result.value = best.value;
  result.cell_index = best.cell;
  result.argmax = point_from_cell(lattice, cells[best.cell], best.coords);
  return result;
}

// --------------------------------------------------------------- free norm

namespace {

struct TupleValue {
  Rat objective;
  Rat constraint;
  Rat ratio;
  bool valid = false;
};

TupleValue tuple_value(const Expr& f, const std::vector<DualPoint>& points) {
  TupleValue tv;
  if (points.empty()) return tv;
  const auto& lattice = f.lattice();
  tv.objective = 0;
  for (const auto& p : points) tv.objective += rat_abs(eval(f, p));
  tv.constraint = 0;
  for (int z = 0; z < lattice->size(); ++z) {
    Rat s = 0;
    for (const auto& p : points) s += rat_abs(p.values[z]);
    tv.constraint = std::max(tv.constraint, s);
  }
  if (tv.constraint == 0) return tv;  // the all-zero tuple certifies nothing
  tv.ratio = tv.objective / tv.constraint;
  tv.valid = true;
  return tv;
}

}  // namespace

NormEstimate estimate_from_witness(const Expr& f, std::vector<DualPoint> witness) {
  for (const auto& p : witness) {
    if (!same_lattice(p.lattice, f.lattice()))
      throw Error(Errc::lattice_mismatch, "witness point on a different lattice");
    if (!is_dual_point(*f.lattice(), p.values))
      throw Error(Errc::param_error, "witness point fails the homomorphism check");
  }
  TupleValue tv = tuple_value(f, witness);
  if (!tv.valid)
    throw Error(Errc::param_error, "witness tuple has zero constraint value");
  NormEstimate est;
  est.lower = tv.ratio;
  est.objective = tv.objective;
  est.constraint = tv.constraint;
  est.witness = std::move(witness);
  est.m = static_cast<int>(est.witness.size());
  est.method = "witness";
  return est;
}

NormEstimate free_norm_lower(const Expr& f, int m, const SearchBudget& budget,
                             std::uint64_t seed,
                             const std::vector<std::vector<DualPoint>>& hints) {
  if (m < 1) throw Error(Errc::param_error, "tuple size must be >= 1");
  const LatticePtr& lattice = f.lattice();
  auto cells = enumerate_cells(*lattice);

  NormEstimate best;
  best.lower = 0;
  best.objective = 0;
  best.constraint = 0;
  best.m = m;
  best.seed = seed;
  best.budget = budget;
  best.method = "vertex+ascent";

  auto offer = [&](const std::vector<DualPoint>& points) {
    TupleValue tv = tuple_value(f, points);
    if (!tv.valid) return;
    if (best.witness.empty() || tv.ratio > best.lower) {
      best.lower = tv.ratio;
      best.objective = tv.objective;
      best.constraint = tv.constraint;
      best.witness = points;
    }
  };

  // caller-provided witnesses first
  for (const auto& hint : hints) {
    if (static_cast<int>(hint.size()) > m)
      throw Error(Errc::param_error, "hint tuple larger than m");
    for (const auto& p : hint)
      if (!same_lattice(p.lattice, lattice) || !is_dual_point(*lattice, p.values))
        throw Error(Errc::param_error, "hint point is not a valid dual point");
    offer(hint);
  }

  // the sup-norm argmax is always a candidate at m = 1
  if (budget.use_supnorm_seed) {
    SupNormCertificate cert = sup_norm(f, Rat{1, 1024}, budget.supnorm_node_budget);
    offer({cert.argmax_point});
  }

  // exhaustive tuples of cell vertices, sizes 1..m, capped
  std::vector<DualPoint> vertices = cell_vertex_points(lattice);
  std::uint64_t used = 0;
  const int nv = static_cast<int>(vertices.size());
  for (int size = 1; size <= m && used < budget.vertex_tuple_cap; ++size) {
    std::vector<int> pick(size, 0);
    while (used < budget.vertex_tuple_cap) {
      std::vector<DualPoint> tuple;
      tuple.reserve(size);
      for (int i : pick) tuple.push_back(vertices[i]);
      offer(tuple);
      ++used;
      int i = size - 1;
      while (i >= 0 && pick[i] == nv - 1) --i;
      if (i < 0) break;
      int next = pick[i] + 1;
      for (int j = i; j < size; ++j) pick[j] = next;
    }
  }

  // projected coordinate ascent in floats, rationalized and re-verified;
  // starts are independent and run in parallel, the merge applies them in
  // start order so the result matches a sequential run exactly
  auto run_start = [&](int size, int start) -> std::optional<std::vector<DualPoint>> {
    SplitRng rng = SplitRng::seeded(seed, 0xA5C0000ull + (std::uint64_t(size) << 16) + start);
    std::vector<int> cell_of(size);
    std::vector<std::vector<double>> coords(size);
    for (int i = 0; i < size; ++i) {
      cell_of[i] = static_cast<int>(rng.below(cells.size()));
      coords[i].resize(cells[cell_of[i]].dim());
      for (auto& c : coords[i]) c = 2 * rng.unit_double() - 1;
      std::sort(coords[i].begin(), coords[i].end());
    }
    auto ratio_double = [&]() {
      double obj = 0;
      std::vector<double> values(lattice->size());
      std::vector<double> sums(lattice->size(), 0.0);
      for (int i = 0; i < size; ++i) {
        const auto& block = cells[cell_of[i]].block;
        for (int z = 0; z < lattice->size(); ++z) values[z] = coords[i][block[z]];
        obj += std::fabs(eval_double(f.root(), values));
        for (int z = 0; z < lattice->size(); ++z) sums[z] += std::fabs(values[z]);
      }
      double cons = 0;
      for (double s : sums) cons = std::max(cons, s);
      return cons < 1e-12 ? 0.0 : obj / cons;
    };
    double current = ratio_double();
    double step = 0.5;
    for (int it = 0; it < budget.ascent_iters; ++it) {
      int pi = static_cast<int>(rng.below(size));
      int cj = static_cast<int>(rng.below(coords[pi].size()));
      std::vector<double> saved = coords[pi];
      double dir = rng.below(2) ? step : -step;
      coords[pi][cj] = std::clamp(coords[pi][cj] + dir, -1.0, 1.0);
      std::sort(coords[pi].begin(), coords[pi].end());
      double cand = ratio_double();
      if (cand > current)
        current = cand;
      else
        coords[pi] = std::move(saved);
      step *= 0.99;
    }
    // rationalize and verify exactly; any slip in the float path just
    // forfeits this start (workers must not throw across threads)
    try {
      std::vector<DualPoint> tuple;
      for (int i = 0; i < size; ++i) {
        std::vector<Rat> exact(coords[i].size());
        for (size_t j = 0; j < coords[i].size(); ++j) {
          Rat r = rationalize(coords[i][j], 1 << 16);
          exact[j] = std::min(std::max(r, Rat(-1)), Rat(1));
        }
        std::sort(exact.begin(), exact.end());
        tuple.push_back(point_from_cell(lattice, cells[cell_of[i]], exact));
      }
      return tuple;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  };

  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  for (int size = 1; size <= m; ++size) {
    std::vector<std::optional<std::vector<DualPoint>>> found(budget.ascent_starts);
    if (workers > 1 && budget.ascent_starts > 1) {
      std::atomic<int> next{0};
      auto worker = [&]() {
        for (int s = next.fetch_add(1); s < budget.ascent_starts; s = next.fetch_add(1))
          found[s] = run_start(size, s);
      };
      std::vector<std::thread> pool;
      for (unsigned w = 0; w + 1 < workers; ++w) pool.emplace_back(worker);
      worker();
      for (auto& th : pool) th.join();
    } else {
      for (int s = 0; s < budget.ascent_starts; ++s) found[s] = run_start(size, s);
    }
    for (const auto& tuple : found)
      if (tuple) offer(*tuple);
  }

  if (best.witness.empty())
    throw Error(Errc::internal, "no nonzero candidate tuple found");
  return best;
}

DominationResult domination_upper(const Expr& f,
                                  const std::vector<std::pair<Rat, std::string>>& generators,
                                  const Rat& eps) {
  (void)eps;  // the certificate is exact; eps kept for interface stability
  if (generators.empty()) throw Error(Errc::param_error, "need at least one dominating generator");
  const LatticePtr& lattice = f.lattice();
  Rat total = 0;
  std::optional<Expr> u;
  for (const auto& [c, label] : generators) {
    if (c < 0) throw Error(Errc::param_error, "domination coefficients must be nonnegative");
    total += c;
    Expr term = Expr::scale(c, Expr::abs(Expr::gen(lattice, label)));
    u = u ? Expr::add(*u, term) : term;
  }
  Expr gap = Expr::add(Expr::abs(f), Expr::scale(-1, *u));
  CellMaxResult mx = exact_max_over_dual(gap);
  DominationResult result;
  if (mx.value <= 0) {
    result.ok = true;
    result.upper = total;
  } else {
    result.ok = false;
    result.counterexample = mx.argmax;
    result.violation = mx.value;
  }
  return result;
}

// ------------------------------------------------------------- strong unit

StrongUnitReport strong_unit_check(const LatticePtr& lattice) {
  StrongUnitReport report;
  report.note =
      "finite lattices always carry a maximum and minimum; the unbounded "
      "obstruction is exercised by the strong-unit-obstruction scenario";
  auto cells = enumerate_cells(*lattice);
  report.cells = static_cast<int>(cells.size());

  const int bottom = lattice->bottom();
  const int top = lattice->top();

  report.index_reduction_ok = true;
  for (const Cell& cell : cells) {
    int k = static_cast<int>(cell.chain.size());
    if (cell.block[bottom] != 0 || cell.block[top] != k) {
      report.index_reduction_ok = false;
      break;
    }
  }

  auto dominated_at = [&](const DualPoint& p) {
    Rat unit = std::max(rat_abs(p.values[bottom]), rat_abs(p.values[top]));
    for (int x = 0; x < lattice->size(); ++x)
      if (rat_abs(p.values[x]) > unit) return false;
    return true;
  };

  report.dominated = true;
  for (const DualPoint& p : cell_vertex_points(lattice)) {
    ++report.vertex_checks;
    if (!dominated_at(p)) report.dominated = false;
  }
  std::vector<Rat> grid = {Rat(-1), Rat{-1, 2}, Rat(0), Rat{1, 2}, Rat(1)};
  for (const DualPoint& p : cell_grid_points(lattice, grid)) {
    ++report.grid_checks;
    if (!dominated_at(p)) report.dominated = false;
  }

  report.has_strong_unit = report.index_reduction_ok && report.dominated;
  if (report.has_strong_unit)
    report.unit = builtin_expr("strong_unit_candidate", lattice);
  return report;
}

ObstructionReport strong_unit_obstruction(int chain_len, int generators, int corpus,
                                          std::uint64_t seed) {
  if (chain_len < 3) throw Error(Errc::param_error, "chain length must be at least 3");
  if (generators < 1 || generators >= chain_len - 1)
    throw Error(Errc::param_error, "need 1 <= n < N-1 generators");
  if (corpus < 1) throw Error(Errc::param_error, "corpus must be positive");

  LatticePtr chain = builtin_lattice("chain:" + std::to_string(chain_len));
  const int x = generators - 1;  // supremum of the first n elements
  const int y = generators;      // strictly above the sublattice

  ObstructionReport report;
  report.chain_len = chain_len;
  report.generators = generators;
  report.corpus = corpus;
  report.witness = separation_witness(chain, x, y);

  std::vector<int> gens(generators);
  for (int i = 0; i < generators; ++i) gens[i] = i;

  SplitRng rng = SplitRng::seeded(seed, 0x0b57ull);
  report.all_gaps_at_least_one = true;
  Rat dy = rat_abs(report.witness.values[y]);
  report.delta_y_is_one = dy == 1;
  for (int i = 0; i < corpus; ++i) {
    Expr g = random_lattice_linear_expr(chain, gens, rng, 6);
    Rat gz = eval(g, report.witness);
    if (gz == 0) ++report.vanished;
    // single-point witness: constraint is sup_z |z*(z)| = 1
    Rat gap = rat_abs(dy - gz);
    if (gap < 1) report.all_gaps_at_least_one = false;
  }
  report.gap_lower = 1;
  return report;
}

// ----------------------------------------------------------- order density

OrderDensityReport order_density_demo(int chain_len, int grid, int low_generators,
                                      std::uint64_t seed) {
  if (chain_len < 4) throw Error(Errc::param_error, "chain length must be at least 4");
  if (grid < 2) throw Error(Errc::param_error, "grid must have at least 2 steps");
  if (low_generators < 1 || low_generators > chain_len - 2)
    throw Error(Errc::param_error, "low generator count out of range");

  LatticePtr chain = builtin_lattice("chain:" + std::to_string(chain_len));
  Expr f = builtin_expr("order_density_f", chain);

  OrderDensityReport report;
  report.chain_len = chain_len;
  report.split = low_generators;
  report.grid = grid;
  report.caveat =
      "finite truncation: the infinite series is cut at the chain length and "
      "every finite chain is order bounded; this demonstrates the witness "
      "inequalities, not the unbounded statement";

  DualPoint one = constant_hom(chain, 1);
  report.f_at_one = eval(f, one);

  const int s = low_generators;
  std::vector<Rat> step_values(chain_len);
  for (int i = 0; i < chain_len; ++i) step_values[i] = i >= s ? 1 : 0;
  DualPoint step = dual_point(chain, step_values);

  // h corpus over the low generators, each positive at the blend source
  std::vector<int> lows(s);
  for (int i = 0; i < s; ++i) lows[i] = i;
  std::vector<Expr> hs;
  hs.push_back(Expr::gen(chain, 0));
  SplitRng rng = SplitRng::seeded(seed, 0x0dd1ull);
  for (int tries = 0; tries < 200 && hs.size() < 6; ++tries) {
    Expr h = random_lattice_linear_expr(chain, lows, rng, 4);
    if (eval(h, one) > 0) hs.push_back(h);
  }
  report.h_corpus = static_cast<int>(hs.size());

  // threshold from the proof inequality with x* = 1:
  //   t*a < alpha_s * (t*b + (1-t)) where a = |x*(e0)|, b = x*(e_s)
  Rat alpha_s = Rat{1, 2};
  for (int i = 0; i < s; ++i) alpha_s /= 2;  // alpha_s = 2^-(s+1)
  Rat a = rat_abs(one.values[0]);
  Rat b = one.values[s];
  Rat denom = a + alpha_s * (1 - b);
  Rat threshold = denom > 0 ? alpha_s / denom : Rat{1, 2};
  report.threshold = std::min(threshold, Rat{1, 2});

  report.points_valid = true;
  report.homogeneity_ok = true;
  report.f_vanishes_ok = true;
  std::vector<Rat> blend(chain_len);
  for (int j = 1; j < grid; ++j) {
    Rat t = report.threshold * j / grid;
    for (int i = 0; i < chain_len; ++i)
      blend[i] = t * one.values[i] + (1 - t) * step.values[i];
    if (!is_dual_point(*chain, blend)) {
      report.points_valid = false;
      continue;
    }
    DualPoint zt{chain, blend};
    for (const Expr& h : hs)
      if (eval(h, zt) != t * eval(h, one)) report.homogeneity_ok = false;
    if (eval(f, zt) != 0) report.f_vanishes_ok = false;
  }
  return report;
}

}  // namespace fbl
