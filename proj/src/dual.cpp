#include "fbl/dual.hpp"

#include <algorithm>
#include <map>

namespace fbl {

bool DualPoint::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](const Rat& v) { return v == 0; });
}

bool DualPoint::is_constant() const {
  for (const Rat& v : values)
    if (v != values.front()) return false;
  return true;
}

bool is_dual_point(const FiniteLattice& lattice, const std::vector<Rat>& values) {
  const int n = lattice.size();
  if (static_cast<int>(values.size()) != n) return false;
  for (const Rat& v : values)
    if (v < -1 || v > 1) return false;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      const Rat& a = values[x];
      const Rat& b = values[y];
      if (values[lattice.join(x, y)] != std::max(a, b)) return false;
      if (values[lattice.meet(x, y)] != std::min(a, b)) return false;
    }
  return true;
}

DualPoint dual_point(LatticePtr lattice, std::vector<Rat> values) {
  if (static_cast<int>(values.size()) != lattice->size())
    throw Error(Errc::param_error, "value vector length does not match the lattice");
  for (const Rat& v : values)
    if (v < -1 || v > 1)
      throw Error(Errc::range_violation, "dual point value outside [-1,1]");
  if (!is_dual_point(*lattice, values))
    throw Error(Errc::not_a_hom, "values are not a lattice homomorphism into [-1,1]");
  return DualPoint{std::move(lattice), std::move(values)};
}

DualPoint constant_hom(LatticePtr lattice, const Rat& c) {
  if (c < -1 || c > 1) throw Error(Errc::range_violation, "constant outside [-1,1]");
  return DualPoint{lattice, std::vector<Rat>(lattice->size(), c)};
}

std::vector<Cell> enumerate_cells(const FiniteLattice& lattice) {
  const auto& irr = lattice.irreducibles();
  const int m = static_cast<int>(irr.size());

  // covering relation of the induced join-irreducible poset
  std::vector<std::vector<int>> up(m);
  std::vector<bool> minimal(m, true);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j || !lattice.lt(irr[i], irr[j])) continue;
      bool direct = true;
      for (int k = 0; k < m; ++k)
        if (k != i && k != j && lattice.lt(irr[i], irr[k]) && lattice.lt(irr[k], irr[j])) {
          direct = false;
          break;
        }
      if (direct) {
        up[i].push_back(j);
        minimal[j] = false;
      }
    }

  std::vector<Cell> cells;
  std::vector<int> chain;
  auto emit = [&]() {
    Cell cell;
    cell.chain.reserve(chain.size());
    for (int idx : chain) cell.chain.push_back(irr[idx]);
    cell.block.assign(lattice.size(), 0);
    for (int z = 0; z < lattice.size(); ++z) {
      int count = 0;
      for (int idx : chain)
        if (lattice.leq(irr[idx], z)) ++count;
      cell.block[z] = count;
    }
    cells.push_back(std::move(cell));
  };

  auto dfs = [&](auto&& self, int at) -> void {
    chain.push_back(at);
    if (up[at].empty()) {
      emit();
    } else {
      for (int nxt : up[at]) self(self, nxt);
    }
    chain.pop_back();
  };

  if (m == 0) {
    emit();  // the empty chain: L* of a singleton lattice is [-1,1]
  } else {
    for (int i = 0; i < m; ++i)
      if (minimal[i]) dfs(dfs, i);
  }

  std::sort(cells.begin(), cells.end(),
            [](const Cell& a, const Cell& b) { return a.chain < b.chain; });
  return cells;
}

DualPoint point_from_cell(LatticePtr lattice, const Cell& cell,
                          const std::vector<Rat>& coords) {
  if (static_cast<int>(coords.size()) != cell.dim())
    throw Error(Errc::param_error, "coordinate vector must have length chain+1");
  for (size_t i = 0; i + 1 < coords.size(); ++i)
    if (coords[i] > coords[i + 1])
      throw Error(Errc::coordinate_order_violation, "cell coordinates must be nondecreasing");
  for (const Rat& v : coords)
    if (v < -1 || v > 1)
      throw Error(Errc::range_violation, "cell coordinate outside [-1,1]");
  std::vector<Rat> values(lattice->size());
  for (int z = 0; z < lattice->size(); ++z) values[z] = coords[cell.block[z]];
  return DualPoint{std::move(lattice), std::move(values)};
}

std::optional<std::vector<Rat>> coords_in_cell(const FiniteLattice& lattice,
                                               const Cell& cell,
                                               const std::vector<Rat>& values) {
  std::vector<Rat> coords(cell.dim());
  std::vector<bool> seen(cell.dim(), false);
  for (int z = 0; z < lattice.size(); ++z) {
    int b = cell.block[z];
    if (!seen[b]) {
      coords[b] = values[z];
      seen[b] = true;
    } else if (coords[b] != values[z]) {
      return std::nullopt;  // block not constant: point is outside this cell
    }
  }
  // every block is realized by some element (p_i realizes block i, the
  // bottom realizes block 0), so all coordinates are set
  for (size_t i = 0; i + 1 < coords.size(); ++i)
    if (coords[i] > coords[i + 1]) return std::nullopt;
  return coords;
}

DualPoint prime_filter(LatticePtr lattice, int p) {
  if (!lattice->is_irreducible(p))
    throw Error(Errc::not_irreducible,
                "'" + lattice->label(p) + "' is not join-irreducible");
  std::vector<Rat> values(lattice->size());
  for (int z = 0; z < lattice->size(); ++z) values[z] = lattice->leq(p, z) ? 1 : 0;
  return DualPoint{std::move(lattice), std::move(values)};
}

DualPoint prime_filter(LatticePtr lattice, const std::string& p) {
  int idx = lattice->index(p);
  return prime_filter(std::move(lattice), idx);
}

DualPoint separation_witness(LatticePtr lattice, int x, int y) {
  if (lattice->leq(y, x))
    throw Error(Errc::order_violation,
                "separation needs " + lattice->label(y) + " not<= " + lattice->label(x));
  // join decomposition of y gives an irreducible below y escaping x
  for (int p : lattice->irreducibles())
    if (lattice->leq(p, y) && !lattice->leq(p, x)) return prime_filter(std::move(lattice), p);
  throw Error(Errc::internal, "no separating irreducible found");
}

DualPoint separation_witness(LatticePtr lattice, const std::string& x,
                             const std::string& y) {
  int xi = lattice->index(x), yi = lattice->index(y);
  return separation_witness(std::move(lattice), xi, yi);
}

DualPoint nonconstant_hom(LatticePtr lattice) {
  if (lattice->size() < 2)
    throw Error(Errc::trivial_lattice, "a singleton lattice has only constant homomorphisms");
  return prime_filter(std::move(lattice), lattice->irreducibles().front());
}

DualPoint pullback_hom(const LatticeHom& hom, const DualPoint& point_on_target) {
  if (!same_lattice(hom.target(), point_on_target.lattice))
    throw Error(Errc::lattice_mismatch, "pullback point lives on the wrong lattice");
  std::vector<Rat> values(hom.source()->size());
  for (int x = 0; x < hom.source()->size(); ++x)
    values[x] = point_on_target.values[hom.apply(x)];
  return DualPoint{hom.source(), std::move(values)};
}

DualPoint negate_point(const DualPoint& point, LatticePtr opposite) {
  std::vector<Rat> values(point.values.size());
  for (size_t i = 0; i < values.size(); ++i) values[i] = -point.values[i];
  return DualPoint{std::move(opposite), std::move(values)};
}

DualPoint negate_point(const DualPoint& point) {
  return negate_point(point, opposite_lattice(point.lattice));
}

namespace {

// Exact fixed-denominator fast path: with D = lcm of all endpoint
// denominators, every path value is an integer over D*steps, and the
// homomorphism check reduces to int64 comparisons. Falls back to full
// rational arithmetic when the common denominator is too large.
bool path_check_int64(const DualPoint& u, const DualPoint& w, long steps,
                      PathReport& report) {
  const int n = u.lattice->size();
  Int big_d(1);
  for (int z = 0; z < n; ++z) {
    big_d = boost::multiprecision::lcm(big_d, Int(denominator(u.values[z])));
    big_d = boost::multiprecision::lcm(big_d, Int(denominator(w.values[z])));
  }
  if (big_d > (1 << 20) || steps > 2000000) return false;
  const std::int64_t d = big_d.convert_to<std::int64_t>();
  std::vector<std::int64_t> nu(n), nw(n);
  for (int z = 0; z < n; ++z) {
    nu[z] = Int(numerator(u.values[z]) * (big_d / denominator(u.values[z])))
                .convert_to<std::int64_t>();
    nw[z] = Int(numerator(w.values[z]) * (big_d / denominator(w.values[z])))
                .convert_to<std::int64_t>();
  }
  const std::int64_t full = d * steps;  // common denominator of path values
  std::vector<std::int64_t> val(n);
  for (long i = 0; i <= steps; ++i) {
    bool zero = true;
    for (int z = 0; z < n; ++z) {
      val[z] = (steps - i) * nu[z] + i * nw[z];
      if (val[z] != 0) zero = false;
    }
    bool member = true;
    for (int z = 0; z < n && member; ++z) {
      if (val[z] < -full || val[z] > full) member = false;
    }
    for (int x = 0; x < n && member; ++x)
      for (int y = x + 1; y < n; ++y) {
        if (val[u.lattice->join(x, y)] != std::max(val[x], val[y]) ||
            val[u.lattice->meet(x, y)] != std::min(val[x], val[y])) {
          member = false;
          break;
        }
      }
    if (!member || zero) {
      report.pass = false;
      report.first_failure_step = i;
      report.failure_kind = member ? "zero" : "membership";
      std::vector<Rat> values(n);
      for (int z = 0; z < n; ++z) values[z] = Rat{Int(val[z]), Int(full)};
      report.failure_point = DualPoint{u.lattice, std::move(values)};
      return true;
    }
  }
  return true;
}

}  // namespace

PathReport affine_path_check(const DualPoint& u, const DualPoint& w, long steps) {
  if (!same_lattice(u.lattice, w.lattice))
    throw Error(Errc::lattice_mismatch, "path endpoints live on different lattices");
  if (steps < 1) throw Error(Errc::param_error, "step count must be positive");
  PathReport report;
  report.steps = steps;
  if (path_check_int64(u, w, steps, report)) return report;

  const int n = u.lattice->size();
  std::vector<Rat> values(n);
  for (long i = 0; i <= steps; ++i) {
    Rat t{Int(i), Int(steps)};
    Rat s = 1 - t;
    bool zero = true;
    for (int z = 0; z < n; ++z) {
      values[z] = s * u.values[z] + t * w.values[z];
      if (values[z] != 0) zero = false;
    }
    if (!is_dual_point(*u.lattice, values)) {
      report.pass = false;
      report.first_failure_step = i;
      report.failure_kind = "membership";
      report.failure_point = DualPoint{u.lattice, values};
      return report;
    }
    if (zero) {
      report.pass = false;
      report.first_failure_step = i;
      report.failure_kind = "zero";
      report.failure_point = DualPoint{u.lattice, values};
      return report;
    }
  }
  return report;
}

DualSample sample_points(LatticePtr lattice, int n, std::uint64_t seed) {
  if (n < 1) throw Error(Errc::param_error, "sample size must be >= 1");
  auto cells = enumerate_cells(*lattice);
  DualSample sample;
  sample.seed = seed;
  SplitRng rng = SplitRng::seeded(seed, 0x5a4d504cu);  // sampling stream
  for (int i = 0; i < n; ++i) {
    int c = static_cast<int>(rng.below(cells.size()));
    const Cell& cell = cells[c];
    std::vector<Rat> coords(cell.dim());
    for (auto& v : coords) v = rng.dyadic(16);
    std::sort(coords.begin(), coords.end());
    sample.points.push_back(point_from_cell(lattice, cell, coords));
    sample.provenance.push_back(SampleProvenance{c, std::move(coords)});
  }
  return sample;
}

namespace {

void collect_dedup(std::vector<DualPoint>& out, std::map<std::vector<Rat>, bool>& seen,
                   DualPoint point) {
  auto [it, inserted] = seen.emplace(point.values, true);
  (void)it;
  if (inserted) out.push_back(std::move(point));
}

}  // namespace

std::vector<DualPoint> cell_grid_points(LatticePtr lattice, const std::vector<Rat>& grid) {
  std::vector<Rat> values = grid;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  auto cells = enumerate_cells(*lattice);
  std::vector<DualPoint> out;
  std::map<std::vector<Rat>, bool> seen;
  for (const Cell& cell : cells) {
    const int d = cell.dim();
    std::vector<int> pick(d, 0);  // nondecreasing index vectors over the grid
    while (true) {
      std::vector<Rat> coords(d);
      for (int i = 0; i < d; ++i) coords[i] = values[pick[i]];
      collect_dedup(out, seen, point_from_cell(lattice, cell, coords));
      int i = d - 1;
      while (i >= 0 && pick[i] == static_cast<int>(values.size()) - 1) --i;
      if (i < 0) break;
      int next = pick[i] + 1;
      for (int j = i; j < d; ++j) pick[j] = next;
    }
  }
  return out;
}

std::vector<DualPoint> cell_vertex_points(LatticePtr lattice) {
  auto cells = enumerate_cells(*lattice);
  std::vector<DualPoint> out;
  std::map<std::vector<Rat>, bool> seen;
  for (const Cell& cell : cells) {
    const int d = cell.dim();
    for (int split = 0; split <= d; ++split) {
      std::vector<Rat> coords(d);
      for (int i = 0; i < d; ++i) coords[i] = i < split ? Rat(-1) : Rat(1);
      collect_dedup(out, seen, point_from_cell(lattice, cell, coords));
    }
  }
  return out;
}

}  // namespace fbl
