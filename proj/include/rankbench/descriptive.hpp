#pragma once
// Descriptive statistics shared by the ranking, stability and plotting code.
// Quantiles use linear interpolation between order statistics:
//   h = (n - 1) * q + 1  (1-based), interpolate between floor(h) and ceil(h).

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "rankbench/error.hpp"

namespace rankbench {

inline double mean(std::span<const double> values) {
  if (values.empty()) fail(ErrorCode::EmptyInput, "mean of empty sample");
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

// q-quantile of an ascending-sorted sample.
inline double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) fail(ErrorCode::EmptyInput, "quantile of empty sample");
  if (!(q >= 0.0 && q <= 1.0)) fail(ErrorCode::OutOfRange, "quantile level outside [0,1]");
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = (static_cast<double>(n) - 1.0) * q;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, n - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

inline double quantile(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  return quantile_sorted(values, q);
}

inline double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

inline double sample_sd(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  const double m = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

inline double interquartile_range(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return quantile_sorted(values, 0.75) - quantile_sorted(values, 0.25);
}

}  // namespace rankbench
