#include "fbl/linprog.hpp"

#include <algorithm>

namespace fbl {

namespace {

using Row = std::vector<Rat>;

struct Tableau {
  std::vector<Row> rows;
  Row rhs;
  Row obj;
  Rat objval;
  std::vector<int> basis;
  std::vector<bool> banned;

  void pivot(int row, int col) {
    Rat p = rows[row][col];
    if (p != 1) {
      for (auto& v : rows[row])
        if (v != 0) v /= p;
      rows[row][col] = 1;
      rhs[row] /= p;
    }
    for (size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) == row) continue;
      Rat f = rows[i][col];
      if (f == 0) continue;
      for (size_t j = 0; j < rows[i].size(); ++j)
        if (rows[row][j] != 0) rows[i][j] -= f * rows[row][j];
      rhs[i] -= f * rhs[row];
    }
    Rat f = obj[col];
    if (f != 0) {
      for (size_t j = 0; j < obj.size(); ++j)
        if (rows[row][j] != 0) obj[j] -= f * rows[row][j];
      objval += f * rhs[row];
    }
    basis[row] = col;
  }

  void price_out(const Row& cost) {
    obj = cost;
    objval = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
      Rat f = obj[basis[i]];
      if (f == 0) continue;
      for (size_t j = 0; j < obj.size(); ++j)
        if (rows[i][j] != 0) obj[j] -= f * rows[i][j];
      objval += f * rhs[i];
    }
  }

  // Dantzig's rule with a Bland fallback once degeneracy drags on; Bland
  // guarantees termination, Dantzig keeps typical pivot counts low.
  bool step(bool& unbounded, bool bland) {
    int enter = -1;
    if (bland) {
      for (size_t j = 0; j < obj.size(); ++j)
        if (!banned[j] && obj[j] > 0) { enter = static_cast<int>(j); break; }
    } else {
      for (size_t j = 0; j < obj.size(); ++j)
        if (!banned[j] && obj[j] > 0 && (enter < 0 || obj[j] > obj[enter]))
          enter = static_cast<int>(j);
    }
    if (enter < 0) return false;
    int leave = -1;
    Rat best;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i][enter] <= 0) continue;
      Rat ratio = rhs[i] / rows[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = static_cast<int>(i);
        best = ratio;
      }
    }
    if (leave < 0) {
      unbounded = true;
      return false;
    }
    pivot(leave, enter);
    return true;
  }

  // returns false on unbounded
  bool optimize() {
    bool unbounded = false;
    int iters = 0;
    const int bland_after = 64 + 4 * static_cast<int>(rows.size() + obj.size());
    while (step(unbounded, iters >= bland_after)) ++iters;
    return !unbounded;
  }
};

}  // namespace

LpResult lp_maximize(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
                     const std::vector<Rat>& c) {
  const int m = static_cast<int>(A.size());
  const int n = static_cast<int>(c.size());
  const int nsplit = 2 * n;

  bool rhs_nonneg = std::all_of(b.begin(), b.end(), [](const Rat& v) { return v >= 0; });
  const int nart = rhs_nonneg ? 0 : m;
  const int ncols = nsplit + m + nart;

  Tableau t;
  t.rows.assign(m, Row(ncols, Rat(0)));
  t.rhs = b;
  t.basis.assign(m, 0);
  t.banned.assign(ncols, false);

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      t.rows[i][j] = A[i][j];
      t.rows[i][n + j] = -A[i][j];
    }
    t.rows[i][nsplit + i] = 1;  // slack
    t.basis[i] = nsplit + i;
  }

  if (!rhs_nonneg) {
    for (int i = 0; i < m; ++i) {
      if (t.rhs[i] < 0) {
        for (auto& v : t.rows[i]) v = -v;
        t.rhs[i] = -t.rhs[i];
      }
      t.rows[i][nsplit + m + i] = 1;
      t.basis[i] = nsplit + m + i;
    }
    Row phase1(ncols, Rat(0));
    for (int i = 0; i < m; ++i) phase1[nsplit + m + i] = -1;
    t.price_out(phase1);
    if (!t.optimize() || t.objval < 0) {
      LpResult res;
      res.status = LpResult::Status::infeasible;
      return res;
    }
    for (int i = 0; i < m; ++i) {
      if (t.basis[i] < nsplit + m) continue;
      int col = -1;
      for (int j = 0; j < nsplit + m; ++j)
        if (t.rows[i][j] != 0) { col = j; break; }
      if (col >= 0) t.pivot(i, col);
    }
    for (int i = 0; i < m; ++i) t.banned[nsplit + m + i] = true;
  }

  Row cost(ncols, Rat(0));
  for (int j = 0; j < n; ++j) {
    cost[j] = c[j];
    cost[n + j] = -c[j];
  }
  t.price_out(cost);
  LpResult res;
  if (!t.optimize()) {
    res.status = LpResult::Status::unbounded;
    return res;
  }
  res.status = LpResult::Status::optimal;
  res.value = t.objval;
  std::vector<Rat> x(ncols, Rat(0));
  for (int i = 0; i < m; ++i) x[t.basis[i]] = t.rhs[i];
  res.point.assign(n, Rat(0));
  for (int j = 0; j < n; ++j) res.point[j] = x[j] - x[n + j];
  return res;
}

}  // namespace fbl
