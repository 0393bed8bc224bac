#ifndef TIKHLAB_TESTS_TRANSPORT_ORACLE_HPP
#define TIKHLAB_TESTS_TRANSPORT_ORACLE_HPP

// Independent optimal-transport oracles for validating the closed-form
// quantile Wasserstein distance.  Deliberately different algorithms from the
// implementation under test:
//   - transport_cost_enumerate: exhaustive enumeration of basic feasible
//     solutions (spanning trees of the bipartite transportation graph),
//     exact for tiny supports.
//   - transport_cost_simplex: textbook transportation simplex starting from
//     the northwest-corner basis.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace tikhlab::testutil {

struct TransportInstance {
  std::vector<double> supply;     // masses of mu1
  std::vector<double> demand;     // masses of mu2
  std::vector<double> sx, sy;     // support positions
  double q = 1.0;

  double cost(std::size_t i, std::size_t j) const {
    return std::pow(std::abs(sx[i] - sy[j]), q);
  }
};

// Solve the flows on a candidate basis (set of cells) by leaf stripping.
// Returns false when the cells do not form a spanning tree or a flow turns
// negative beyond rounding.
inline bool solve_tree_flows(const TransportInstance& in,
                             const std::vector<std::pair<int, int>>& cells,
                             std::vector<double>& flows) {
  const int m = static_cast<int>(in.supply.size());
  const int n = static_cast<int>(in.demand.size());
  std::vector<double> a = in.supply, b = in.demand;
  std::vector<bool> used(cells.size(), false);
  flows.assign(cells.size(), 0.0);
  for (std::size_t round = 0; round < cells.size(); ++round) {
    int pick = -1;
    bool row_leaf = false;
    // count incidences among unused cells
    std::vector<int> row_count(m, 0), col_count(n, 0);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (used[c]) continue;
      row_count[cells[c].first]++;
      col_count[cells[c].second]++;
    }
    for (std::size_t c = 0; c < cells.size() && pick < 0; ++c) {
      if (used[c]) continue;
      if (row_count[cells[c].first] == 1) {
        pick = static_cast<int>(c);
        row_leaf = true;
      } else if (col_count[cells[c].second] == 1) {
        pick = static_cast<int>(c);
        row_leaf = false;
      }
    }
    if (pick < 0) return false;  // cycle or disconnected
    const auto [i, j] = cells[pick];
    const double f = row_leaf ? a[i] : b[j];
    flows[pick] = f;
    a[i] -= f;
    b[j] -= f;
    if (f < -1e-12) return false;
    used[pick] = true;
  }
  for (double x : a)
    if (std::abs(x) > 1e-9) return false;
  for (double x : b)
    if (std::abs(x) > 1e-9) return false;
  for (double f : flows)
    if (f < -1e-12) return false;
  return true;
}

/// Exhaustive minimum over all spanning-tree bases; supports of size <= 4.
inline double transport_cost_enumerate(const TransportInstance& in) {
  const int m = static_cast<int>(in.supply.size());
  const int n = static_cast<int>(in.demand.size());
  if (m > 4 || n > 4) throw std::invalid_argument("enumerate: supports must be <= 4");
  const int cells_total = m * n;
  const int basis_size = m + n - 1;
  std::vector<int> idx(basis_size);
  for (int k = 0; k < basis_size; ++k) idx[k] = k;
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::vector<std::pair<int, int>> cells;
    cells.reserve(basis_size);
    for (int k : idx) cells.emplace_back(k / n, k % n);
    std::vector<double> flows;
    if (solve_tree_flows(in, cells, flows)) {
      double c = 0.0;
      for (std::size_t t = 0; t < cells.size(); ++t)
        c += std::max(flows[t], 0.0) * in.cost(cells[t].first, cells[t].second);
      best = std::min(best, c);
    }
    // next combination
    int pos = basis_size - 1;
    while (pos >= 0 && idx[pos] == cells_total - basis_size + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int k = pos + 1; k < basis_size; ++k) idx[k] = idx[k - 1] + 1;
  }
  if (!std::isfinite(best)) throw std::runtime_error("enumerate: no feasible basis");
  return best;
}

/// Transportation simplex (MODI) from the northwest-corner start.
inline double transport_cost_simplex(const TransportInstance& in) {
  const int m = static_cast<int>(in.supply.size());
  const int n = static_cast<int>(in.demand.size());
  std::vector<std::vector<double>> x(m, std::vector<double>(n, 0.0));
  std::vector<std::vector<bool>> basic(m, std::vector<bool>(n, false));

  {  // northwest corner
    std::vector<double> a = in.supply, b = in.demand;
    int i = 0, j = 0;
    while (i < m && j < n) {
      const double f = std::min(a[i], b[j]);
      x[i][j] = f;
      basic[i][j] = true;
      a[i] -= f;
      b[j] -= f;
      if (a[i] <= b[j] && i < m - 1)
        ++i;
      else if (j < n - 1)
        ++j;
      else
        ++i;
    }
  }

  const auto compute_duals = [&](std::vector<double>& u, std::vector<double>& v) {
    u.assign(m, std::numeric_limits<double>::quiet_NaN());
    v.assign(n, std::numeric_limits<double>::quiet_NaN());
    u[0] = 0.0;
    bool progress = true;
    while (progress) {
      progress = false;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
          if (!basic[i][j]) continue;
          if (!std::isnan(u[i]) && std::isnan(v[j])) {
            v[j] = in.cost(i, j) - u[i];
            progress = true;
          } else if (std::isnan(u[i]) && !std::isnan(v[j])) {
            u[i] = in.cost(i, j) - v[j];
            progress = true;
          }
        }
    }
  };

  // Find the unique alternating cycle created by adding (ei, ej): a path of
  // basic cells from row ei to column ej, found by depth-first search.
  const auto find_cycle = [&](int ei, int ej) {
    std::vector<std::pair<int, int>> path;  // cells along the path
    std::vector<bool> row_seen(m, false), col_seen(n, false);
    row_seen[ei] = true;
    const std::function<bool(int)> from_row = [&](int i) -> bool {
      for (int j = 0; j < n; ++j) {
        if (!basic[i][j] || col_seen[j]) continue;
        col_seen[j] = true;
        path.emplace_back(i, j);
        if (j == ej) return true;
        for (int i2 = 0; i2 < m; ++i2) {
          if (!basic[i2][j] || row_seen[i2]) continue;
          row_seen[i2] = true;
          path.emplace_back(i2, j);
          if (from_row(i2)) return true;
          path.pop_back();
        }
        path.pop_back();
        // col_seen stays: already explored fully
      }
      return false;
    };
    if (!from_row(ei)) throw std::runtime_error("simplex: basis not connected");
    return path;
  };

  for (int iter = 0; iter < 20000; ++iter) {
    std::vector<double> u, v;
    compute_duals(u, v);
    int ei = -1, ej = -1;
    for (int i = 0; i < m && ei < 0; ++i)
      for (int j = 0; j < n; ++j) {
        if (basic[i][j]) continue;
        if (in.cost(i, j) - u[i] - v[j] < -1e-12) {
          ei = i;
          ej = j;
          break;
        }
      }
    if (ei < 0) break;  // optimal

    const auto path = find_cycle(ei, ej);
    // cycle: entering (+), then path cells alternate (-, +, -, ...)
    double theta = std::numeric_limits<double>::infinity();
    int leave = -1;
    for (std::size_t t = 0; t < path.size(); t += 2) {
      if (x[path[t].first][path[t].second] < theta) {
        theta = x[path[t].first][path[t].second];
        leave = static_cast<int>(t);
      }
    }
    x[ei][ej] += theta;
    basic[ei][ej] = true;
    for (std::size_t t = 0; t < path.size(); ++t) {
      auto [i, j] = path[t];
      x[i][j] += (t % 2 == 0) ? -theta : theta;
    }
    basic[path[leave].first][path[leave].second] = false;
    x[path[leave].first][path[leave].second] = 0.0;
  }

  double c = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) c += x[i][j] * in.cost(i, j);
  return c;
}

}  // namespace tikhlab::testutil

#endif
