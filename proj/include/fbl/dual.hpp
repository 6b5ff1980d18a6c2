#pragma once

#include "fbl/lattice.hpp"
#include "fbl/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fbl {

// One lattice homomorphism x* : L -> [-1,1], stored as an exact value per
// element. Construct through a factory or operation so the homomorphism
// invariant always holds.
struct DualPoint {
  LatticePtr lattice;
  std::vector<Rat> values;

  const Rat& at(int element) const { return values.at(element); }
  bool is_zero() const;
  bool is_constant() const;
};

// Exact membership test for the dual object: meet/join compatibility on
// every pair plus the [-1,1] range.
bool is_dual_point(const FiniteLattice& lattice, const std::vector<Rat>& values);

// Validating factory; throws when the vector is not a homomorphism or is
// out of range.
DualPoint dual_point(LatticePtr lattice, std::vector<Rat> values);

DualPoint constant_hom(LatticePtr lattice, const Rat& c);

// One closed polyhedral cell of L*: a maximal chain p_1 < ... < p_k of
// join-irreducibles plus the block index m(z) = #{i : p_i <= z}. Monotone
// coordinates v_0 <= ... <= v_k in [-1,1] parameterize the cell by
// x*(z) = v_{m(z)}.
struct Cell {
  std::vector<int> chain;  // element indices, increasing along the chain
  std::vector<int> block;  // block[element] = m(element), in [0, k]
  int dim() const { return static_cast<int>(chain.size()) + 1; }
};

// One cell per maximal chain of the join-irreducible poset; the cells cover
// L* exactly (shorter chains appear as faces via repeated coordinates).
std::vector<Cell> enumerate_cells(const FiniteLattice& lattice);

// x*(z) = v_{m(z)}. Throws CoordinateOrderViolation / RangeViolation.
DualPoint point_from_cell(LatticePtr lattice, const Cell& cell,
                          const std::vector<Rat>& coords);

// Coordinates reproducing the point inside the cell, if it lies there.
std::optional<std::vector<Rat>> coords_in_cell(const FiniteLattice& lattice,
                                               const Cell& cell,
                                               const std::vector<Rat>& values);

// 0/1 indicator of the up-set of a join-irreducible; a prime-filter
// homomorphism. Throws NotIrreducible.
DualPoint prime_filter(LatticePtr lattice, int p);
DualPoint prime_filter(LatticePtr lattice, const std::string& p);

// For y not<= x: a point with x*(x) = 0, x*(y) = 1, 0 <= x* <= 1.
DualPoint separation_witness(LatticePtr lattice, const std::string& x,
                             const std::string& y);
DualPoint separation_witness(LatticePtr lattice, int x, int y);

// Some nonconstant homomorphism; throws TrivialLattice when |L| = 1.
DualPoint nonconstant_hom(LatticePtr lattice);

// y* o T, pulled back along a lattice homomorphism T : L -> M.
DualPoint pullback_hom(const LatticeHom& hom, const DualPoint& point_on_target);

// x* -> -x*, valid on the opposite lattice. The overload taking the
// opposite lattice avoids rebuilding it per call.
DualPoint negate_point(const DualPoint& point);
DualPoint negate_point(const DualPoint& point, LatticePtr opposite);

struct PathReport {
  bool pass = true;
  long steps = 0;
  std::optional<long> first_failure_step;
  std::string failure_kind;  // "membership" or "zero"
  std::optional<DualPoint> failure_point;
};

// Samples the segment (1-t)u + tw on a uniform grid and checks each point
// for membership and nonzeroness. Failures are data, not exceptions.
PathReport affine_path_check(const DualPoint& u, const DualPoint& w, long steps);

struct SampleProvenance {
  int cell = 0;
  std::vector<Rat> coords;
};

struct DualSample {
  std::vector<DualPoint> points;
  std::vector<SampleProvenance> provenance;
  std::uint64_t seed = 0;
};

// Uniform cell choice, then a uniform monotone dyadic coordinate draw.
// Deterministic per seed.
DualSample sample_points(LatticePtr lattice, int n, std::uint64_t seed);

// All points of all cells with coordinates drawn from the given grid
// values, deduplicated across cells.
std::vector<DualPoint> cell_grid_points(LatticePtr lattice,
                                        const std::vector<Rat>& grid);

// The +-1 vertex points of every cell, deduplicated.
std::vector<DualPoint> cell_vertex_points(LatticePtr lattice);

}  // namespace fbl
