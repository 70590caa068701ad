#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "core_transform.hpp"
#include "field.hpp"

namespace chs::lgv {

// Rows r_1<...<r_d and cols c_1<...<c_d with r_i >= c_i.
struct IndexPairSelection {
  std::vector<std::size_t> rows, cols;

  std::size_t size() const { return rows.size(); }

  void validate() const {
    if (rows.size() != cols.size()) throw PreconditionViolation("selection: rows/cols length mismatch");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i && (rows[i] <= rows[i - 1] || cols[i] <= cols[i - 1]))
        throw PreconditionViolation("selection: indices must be strictly increasing");
      if (rows[i] < cols[i]) throw PreconditionViolation("selection: needs r_i >= c_i");
    }
  }
};

struct StaircaseResult {
  std::size_t i0 = 0;
  IndexPairSelection selection;
};

// {C(offset + r_i, offset + c_j)}; offset shifts the ground set for suffix decoding.
inline Matrix pascal_submatrix(const IndexPairSelection& sel, std::size_t offset = 0) {
  std::size_t d = sel.size();
  Matrix m(d, std::vector<Int>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m[i][j] = binomial(offset + sel.rows[i], offset + sel.cols[j]);
  return m;
}

inline Int pascal_submatrix_det(const IndexPairSelection& sel) {
  sel.validate();
  return det_bareiss(pascal_submatrix(sel));
}

struct PathBudget {
  std::size_t max_d = 4;
  std::size_t max_r = 10;
  std::uint64_t max_steps = 100'000'000;
};

// Signed count of vertex-disjoint path systems on the triangular lattice
// {(x, y) : 0 <= x <= y}, steps (x,y)->(x+1,y) and (x,y)->(x,y-1), from
// sources (0, r_i) to sinks (c_j, c_j). Exponential; a test oracle only.
inline Int count_vertex_disjoint_paths(const IndexPairSelection& sel, const PathBudget& budget = {}) {
  sel.validate();
  std::size_t d = sel.size();
  if (d == 0) return 1;
  std::size_t top = sel.rows.back();
  if (d > budget.max_d || top > budget.max_r)
    throw BudgetExceeded("count_vertex_disjoint_paths: instance exceeds size budget");

  std::size_t w = top + 1;
  std::vector<char> used(w * w, 0);
  std::vector<int> target(d, -1);
  std::vector<char> sink_taken(d, 0);
  std::uint64_t steps = 0;
  Int total = 0;

  auto at = [&](std::size_t x, std::size_t y) -> char& { return used[y * w + x]; };

  auto perm_sign = [&]() {
    int s = 1;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (target[i] > target[j]) s = -s;
    return s;
  };

  std::function<void(std::size_t)> route;
  std::function<void(std::size_t, std::size_t, std::size_t)> walk = [&](std::size_t src, std::size_t x,
                                                                       std::size_t y) {
    if (++steps > budget.max_steps) throw BudgetExceeded("count_vertex_disjoint_paths: step budget");
    std::size_t c = sel.cols[static_cast<std::size_t>(target[src])];
    if (x == c && y == c) {
      route(src + 1);
      return;
    }
    if (x + 1 <= y && x + 1 <= c && !at(x + 1, y)) {
      at(x + 1, y) = 1;
      walk(src, x + 1, y);
      at(x + 1, y) = 0;
    }
    if (y > c && x + 1 <= y && !at(x, y - 1)) {
      at(x, y - 1) = 1;
      walk(src, x, y - 1);
      at(x, y - 1) = 0;
    }
  };

  route = [&](std::size_t src) {
    if (src == d) {
      total += perm_sign();
      return;
    }
    std::size_t r = sel.rows[src];
    if (at(0, r)) return;
    at(0, r) = 1;
    for (std::size_t j = 0; j < d; ++j) {
      if (sink_taken[j] || sel.cols[j] > r) continue;
      sink_taken[j] = 1;
      target[src] = static_cast<int>(j);
      walk(src, 0, r);
      sink_taken[j] = 0;
    }
    target[src] = -1;
    at(0, r) = 0;
  };

  route(0);
  return total;
}

// Every valid selection with 1 <= d <= max_d and all indices <= max_r.
inline std::vector<IndexPairSelection> enumerate_selections(std::size_t max_d, std::size_t max_r) {
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    if (!cur.empty()) subsets.push_back(cur);
    if (cur.size() == max_d) return;
    for (std::size_t v = from; v <= max_r; ++v) {
      cur.push_back(v);
      grow(v + 1);
      cur.pop_back();
    }
  };
  grow(0);
  std::vector<IndexPairSelection> out;
  for (const auto& r : subsets)
    for (const auto& c : subsets) {
      if (r.size() != c.size()) continue;
      bool ok = true;
      for (std::size_t i = 0; i < r.size() && ok; ++i) ok = r[i] >= c[i];
      if (ok) out.push_back({r, c});
    }
  return out;
}

// t(i) = |[0,i) & I_z| - |[0,i) \ I_a|; i0 is the least i >= 1 with t(i) = 0.
// With `enforce_sizes` off only the walk itself must succeed.
inline StaircaseResult staircase_select(const std::vector<std::size_t>& Iz, const std::vector<std::size_t>& Ia,
                                        std::size_t alpha, bool enforce_sizes = true) {
  std::vector<char> inz(alpha, 0), ina(alpha, 0);
  for (auto i : Iz) {
    if (i >= alpha) throw PreconditionViolation("staircase_select: I_z must lie in [0, alpha)");
    inz[i] = 1;
  }
  for (auto i : Ia) {
    if (i >= alpha) throw PreconditionViolation("staircase_select: I_a must lie in [0, alpha)");
    ina[i] = 1;
  }
  if (alpha == 0 || inz[0] || ina[0]) throw PreconditionViolation("staircase_select: 0 must lie outside I_z and I_a");
  std::size_t half = (alpha + 1) / 2;
  if (enforce_sizes && (Iz.size() < half || Ia.size() < half))
    throw PreconditionViolation("staircase_select: I_z and I_a need at least ceil(alpha/2) elements");

  long t = 0;
  for (std::size_t i = 1; i <= alpha; ++i) {
    std::size_t k = i - 1;
    t += inz[k] ? 1 : 0;
    t -= ina[k] ? 0 : 1;
    if (t == 0) {
      StaircaseResult res;
      res.i0 = i;
      for (std::size_t j = 0; j < i; ++j) {
        if (inz[j]) res.selection.rows.push_back(j);
        if (!ina[j]) res.selection.cols.push_back(j);
      }
      res.selection.validate();
      return res;
    }
  }
  throw StaircaseFailure("staircase_select: t(i) never returns to 0 within [1, alpha]");
}

// Newton coefficients g_{c_1..c_d} with sum_l g_l C(offset+r_k, offset+c_l) = values_k mod p.
inline std::vector<Int> lgv_interpolate(const IndexPairSelection& sel, const std::vector<Int>& values,
                                        const Int& p, std::size_t offset = 0) {
  sel.validate();
  if (values.size() != sel.size()) throw PreconditionViolation("lgv_interpolate: need one value per row");
  return solve_mod(pascal_submatrix(sel, offset), values, p);
}

}  // namespace chs::lgv
