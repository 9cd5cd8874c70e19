#pragma once

// Shape checks on sweep datasets shared by the unit and acceptance suites.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "dtunnel/scenarios.hpp"

namespace dtunnel::testing {

inline std::size_t count_local_maxima(const SweepDataset& d) {
  std::size_t n = 0;
  for (std::size_t i = 1; i + 1 < d.rows.size(); ++i) {
    if (d.rows[i].tau_p > d.rows[i - 1].tau_p && d.rows[i].tau_p > d.rows[i + 1].tau_p) ++n;
  }
  return n;
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Rows in the off-resonance half of the grid: |T|^2 at or below its median.
inline std::vector<const SweepRow*> off_resonance_rows(const SweepDataset& d) {
  std::vector<double> t2;
  for (const auto& r : d.rows) t2.push_back(r.T2);
  const double cut = median(t2);
  std::vector<const SweepRow*> out;
  for (const auto& r : d.rows) {
    if (r.T2 <= cut) out.push_back(&r);
  }
  return out;
}

/// Median phase time over the off-resonance rows.
inline double off_resonance_baseline(const SweepDataset& d) {
  std::vector<double> tp;
  for (const SweepRow* r : off_resonance_rows(d)) tp.push_back(r->tau_p);
  return median(tp);
}

/// Least-squares slope of tau_p against the swept value over off-resonance
/// rows with lo <= swept <= hi.
inline double off_resonance_slope(const SweepDataset& d, double lo, double hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double n = 0;
  for (const SweepRow* r : off_resonance_rows(d)) {
    if (r->swept < lo || r->swept > hi) continue;
    sx += r->swept;
    sy += r->tau_p;
    sxx += r->swept * r->swept;
    sxy += r->swept * r->tau_p;
    n += 1;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace dtunnel::testing
