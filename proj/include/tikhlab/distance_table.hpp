#ifndef TIKHLAB_DISTANCE_TABLE_HPP
#define TIKHLAB_DISTANCE_TABLE_HPP

#include <utility>
#include <vector>

namespace tikhlab {

/// Sampled decreasing distance function r |-> d(r) with power-law (linear in
/// log-log) interpolation between nodes and clamped, flagged extrapolation
/// outside the sampled range.
class DistanceTable {
 public:
  /// Entries must be sorted by strictly increasing positive r with
  /// nonnegative, nonincreasing values (1e-12 relative slack, after which
  /// tiny violations are clamped).
  explicit DistanceTable(std::vector<std::pair<double, double>> entries);

  double value(double r, bool* extrapolated = nullptr) const;

  double r_min() const { return entries_.front().first; }
  double r_max() const { return entries_.back().first; }
  const std::vector<std::pair<double, double>>& entries() const { return entries_; }

  bool strictly_decreasing() const;
  bool strictly_positive() const;

  /// Samples a closed-form function on a log-spaced grid.
  template <typename F>
  static DistanceTable sample(F&& f, double r_lo, double r_hi, int count);

  static std::vector<double> log_grid(double lo, double hi, int count);

 private:
  std::vector<std::pair<double, double>> entries_;
};

template <typename F>
DistanceTable DistanceTable::sample(F&& f, double r_lo, double r_hi, int count) {
  std::vector<std::pair<double, double>> e;
  for (double r : log_grid(r_lo, r_hi, count)) e.emplace_back(r, f(r));
  return DistanceTable(std::move(e));
}

}  // namespace tikhlab

#endif
