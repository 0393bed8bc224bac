#include "tikhlab/distance_table.hpp"

#include <cmath>
#include <stdexcept>

namespace tikhlab {

DistanceTable::DistanceTable(std::vector<std::pair<double, double>> entries)
    : entries_(std::move(entries)) {
  if (entries_.size() < 2) throw std::invalid_argument("DistanceTable: need at least 2 entries");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    auto& [r, v] = entries_[i];
    if (!(r > 0.0)) throw std::invalid_argument("DistanceTable: r must be positive");
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("DistanceTable: values must be finite and nonnegative");
    if (i > 0) {
      const auto& [rp, vp] = entries_[i - 1];
      if (!(r > rp)) throw std::invalid_argument("DistanceTable: r must be strictly increasing");
      if (v > vp + 1e-12 * std::max(1.0, vp))
        throw std::invalid_argument("DistanceTable: values must be nonincreasing");
      if (v > vp) v = vp;  // clamp rounding-level violations
    }
  }
}

double DistanceTable::value(double r, bool* extrapolated) const {
  if (extrapolated) *extrapolated = false;
  if (r <= r_min()) {
    if (extrapolated && r < r_min()) *extrapolated = true;
    return entries_.front().second;
  }
  if (r >= r_max()) {
    if (extrapolated && r > r_max()) *extrapolated = true;
    return entries_.back().second;
  }
  std::size_t lo = 0, hi = entries_.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (entries_[mid].first <= r ? lo : hi) = mid;
  }
  const auto& [r0, v0] = entries_[lo];
  const auto& [r1, v1] = entries_[hi];
  const double t = (std::log(r) - std::log(r0)) / (std::log(r1) - std::log(r0));
  if (v0 > 0.0 && v1 > 0.0) return std::exp((1.0 - t) * std::log(v0) + t * std::log(v1));
  // A zero endpoint cannot be represented by a power law; interpolate the raw
  // values linearly in log r so the node values are still met.
  return (1.0 - t) * v0 + t * v1;
}

bool DistanceTable::strictly_decreasing() const {
  for (std::size_t i = 1; i < entries_.size(); ++i)
    if (!(entries_[i].second < entries_[i - 1].second)) return false;
  return true;
}

bool DistanceTable::strictly_positive() const {
  for (const auto& [r, v] : entries_)
    if (!(v > 0.0)) return false;
  return true;
}

std::vector<double> DistanceTable::log_grid(double lo, double hi, int count) {
  if (!(lo > 0.0 && hi > lo) || count < 2)
    throw std::invalid_argument("log_grid: need 0 < lo < hi and count >= 2");
  std::vector<double> g(count);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < count; ++i)
    g[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / (count - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace tikhlab
