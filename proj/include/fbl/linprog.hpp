#pragma once

#include "fbl/rational.hpp"

#include <vector>

namespace fbl {

struct LpResult {
  enum class Status { optimal, infeasible, unbounded };
  Status status = Status::infeasible;
  Rat value;               // optimal objective value
  std::vector<Rat> point;  // an optimal vertex (free-variable coordinates)
};

// maximize c.v subject to A v <= b, v free. Exact rational two-phase
// simplex with Bland's rule; intended for small dense systems (the cell
// polytopes are at most a dozen variables and a few dozen rows).
LpResult lp_maximize(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
                     const std::vector<Rat>& c);

}  // namespace fbl
