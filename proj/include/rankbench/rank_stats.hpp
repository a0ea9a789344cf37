#pragma once
// Statistical kernels for ranking analysis:
//   - rank correlation and distance measures (Kendall tau-b, Spearman's
//     footrule, Spearman's distance),
//   - the one-sided paired Wilcoxon signed-rank test (exact for small
//     tie-free samples, normal approximation otherwise),
//   - Holm's step-down multiplicity adjustment,
//   - the pairwise significance matrix over a task.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "rankbench/assessment_data.hpp"
#include "rankbench/error.hpp"
#include "rankbench/rng.hpp"
#include "rankbench/text.hpp"

namespace rankbench {

enum class Adjustment { Holm, None };

inline const char* adjustment_name(Adjustment a) {
  return a == Adjustment::Holm ? "holm" : "none";
}

// Rank list keyed by algorithm; fractional ranks encode average-rank ties.
using RankList = std::map<std::string, double>;

namespace detail {

inline void check_same_keys(const RankList& a, const RankList& b) {
  if (a.empty() || b.empty()) fail(ErrorCode::EmptyInput, "empty rank list");
  if (a.size() != b.size()) fail(ErrorCode::KeyMismatch, "rank lists differ in size");
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end(); ++ia, ++ib)
    if (ia->first != ib->first)
      fail(ErrorCode::KeyMismatch, "rank lists keyed differently at '" + ia->first + "'");
}

inline std::pair<std::vector<double>, std::vector<double>> aligned(const RankList& a,
                                                                   const RankList& b) {
  check_same_keys(a, b);
  std::vector<double> va, vb;
  va.reserve(a.size());
  vb.reserve(b.size());
  for (const auto& [k, v] : a) va.push_back(v);
  for (const auto& [k, v] : b) vb.push_back(v);
  return {std::move(va), std::move(vb)};
}

}  // namespace detail

// Kendall's tau-b. With C concordant pairs, D discordant pairs and T_a / T_b
// the pairs tied only in a / only in b:
//   tau = (C - D) / sqrt((C + D + T_a) (C + D + T_b))
// Tie-free inputs reduce to (C - D) / (n(n-1)/2). Lists with zero variance
// have an undefined tau and raise DegenerateInput.
inline double kendall_tau(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) fail(ErrorCode::LengthMismatch, "rank lists differ in length");
  const std::size_t n = a.size();
  if (n < 2) fail(ErrorCode::EmptyInput, "kendall_tau needs at least 2 items");
  long long concordant = 0, discordant = 0, tied_a_only = 0, tied_b_only = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double da = a[i] - a[j];
      const double db = b[i] - b[j];
      if (da == 0.0 && db == 0.0) continue;
      if (da == 0.0) ++tied_a_only;
      else if (db == 0.0) ++tied_b_only;
      else if ((da > 0.0) == (db > 0.0)) ++concordant;
      else ++discordant;
    }
  const double fa = static_cast<double>(concordant + discordant + tied_a_only);
  const double fb = static_cast<double>(concordant + discordant + tied_b_only);
  if (fa == 0.0 || fb == 0.0)
    fail(ErrorCode::DegenerateInput, "kendall_tau undefined for an all-tied list");
  return static_cast<double>(concordant - discordant) / std::sqrt(fa * fb);
}

inline double kendall_tau(const RankList& a, const RankList& b) {
  auto [va, vb] = detail::aligned(a, b);
  return kendall_tau(va, vb);
}

// Spearman's footrule: sum of absolute rank differences.
inline double spearman_footrule(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) fail(ErrorCode::LengthMismatch, "rank lists differ in length");
  if (a.empty()) fail(ErrorCode::EmptyInput, "empty rank list");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

inline double spearman_footrule(const RankList& a, const RankList& b) {
  auto [va, vb] = detail::aligned(a, b);
  return spearman_footrule(va, vb);
}

// Spearman's distance: sum of squared rank differences.
inline double spearman_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) fail(ErrorCode::LengthMismatch, "rank lists differ in length");
  if (a.empty()) fail(ErrorCode::EmptyInput, "empty rank list");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

inline double spearman_distance(const RankList& a, const RankList& b) {
  auto [va, vb] = detail::aligned(a, b);
  return spearman_distance(va, vb);
}

// Exact right tail P(W+ >= w) of the signed-rank statistic for n tie-free
// ranks 1..n, via the subset-sum count distribution (equivalent to
// enumerating all 2^n sign assignments).
inline double wilcoxon_exact_tail(double w_plus, int n) {
  const int max_sum = n * (n + 1) / 2;
  std::vector<double> count(static_cast<std::size_t>(max_sum) + 1, 0.0);
  count[0] = 1.0;
  for (int r = 1; r <= n; ++r)
    for (int s = max_sum; s >= r; --s) count[s] += count[s - r];
  const int w = static_cast<int>(std::ceil(w_plus - 1e-9));
  double tail = 0.0;
  for (int s = std::max(w, 0); s <= max_sum; ++s) tail += count[s];
  return tail / std::ldexp(1.0, n);
}

// Normal approximation with tie correction and 0.5 continuity correction.
// tie_term is sum over tie groups of (t^3 - t) on the |d| ranks.
inline double wilcoxon_normal_tail(double w_plus, int n, double tie_term) {
  const double mu = n * (n + 1.0) / 4.0;
  const double sigma2 = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
  const double z = (w_plus - mu - 0.5) / std::sqrt(sigma2);
  return normal_upper_tail(z);
}

// One-sided paired Wilcoxon signed-rank test of "x tends to be greater than
// y". Zero differences are dropped; an all-zero difference vector returns
// p = 1 (no evidence of superiority). Exact when the reduced sample has
// n' <= 25 and no tied |d|, normal approximation otherwise.
inline double wilcoxon_signed_rank_one_sided(std::span<const double> x,
                                             std::span<const double> y) {
  if (x.size() != y.size())
    fail(ErrorCode::LengthMismatch, "paired samples differ in length");
  if (x.empty()) fail(ErrorCode::EmptyInput, "empty paired sample");

  std::vector<double> d;
  d.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
      fail(ErrorCode::NonFiniteValue, "non-finite value in paired sample");
    const double di = x[i] - y[i];
    if (di != 0.0) d.push_back(di);
  }
  if (d.empty()) return 1.0;

  const int n = static_cast<int>(d.size());
  std::vector<int> order(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return std::fabs(d[i]) < std::fabs(d[j]); });

  std::vector<double> rank(d.size(), 0.0);
  bool any_tie = false;
  double tie_term = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() &&
           std::fabs(d[order[j + 1]]) == std::fabs(d[order[i]]))
      ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
    const double t = static_cast<double>(j - i + 1);
    if (t > 1.0) {
      any_tie = true;
      tie_term += t * t * t - t;
    }
    i = j + 1;
  }

  double w_plus = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > 0.0) w_plus += rank[i];

  double p = (n <= 25 && !any_tie) ? wilcoxon_exact_tail(w_plus, n)
                                   : wilcoxon_normal_tail(w_plus, n, tie_term);
  if (p <= 0.0) p = std::numeric_limits<double>::min();
  return std::min(p, 1.0);
}

// Holm's step-down adjustment. Sorted ascending, the k-th smallest raw value
// is multiplied by (m - k) [0-based] and a running maximum enforces
// monotonicity; results return in input order, capped at 1.
inline std::vector<double> holm_adjust(std::span<const double> p_values) {
  const std::size_t m = p_values.size();
  for (double p : p_values)
    if (!(p >= 0.0 && p <= 1.0))
      fail(ErrorCode::OutOfRange, "p-value outside [0,1]");
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (p_values[a] != p_values[b]) return p_values[a] < p_values[b];
    return a < b;
  });
  std::vector<double> adjusted(m, 0.0);
  double running = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    running = std::max(running, static_cast<double>(m - k) * p_values[order[k]]);
    adjusted[order[k]] = std::min(1.0, running);
  }
  return adjusted;
}

struct SignificanceMatrix {
  std::vector<std::string> algorithms;
  std::vector<double> p_raw;            // p x p row-major, diagonal NaN
  std::vector<double> p_adj;
  std::vector<std::uint8_t> superior;   // [i*p + j]: i significantly better than j
  double alpha = 0.05;
  Adjustment adjustment = Adjustment::Holm;

  std::size_t size() const { return algorithms.size(); }
  double raw(std::size_t i, std::size_t j) const { return p_raw[i * size() + j]; }
  double adjusted(std::size_t i, std::size_t j) const { return p_adj[i * size() + j]; }
  bool is_superior(std::size_t i, std::size_t j) const { return superior[i * size() + j] != 0; }

  std::vector<int> win_counts() const {
    const std::size_t p = size();
    std::vector<int> wins(p, 0);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j)
        if (i != j && superior[i * p + j]) ++wins[i];
    return wins;
  }
};

namespace detail {

// Values of one algorithm over the selected case rows; the grid must be fully
// valued (worst-rank flags have no metric value to test or aggregate).
inline std::vector<double> algorithm_values(const ChallengeData& data, std::size_t task,
                                            std::size_t algo,
                                            std::span<const std::uint32_t> case_rows) {
  const auto& table = data.tasks.at(task);
  const std::size_t p = data.algorithms.size();
  std::vector<double> out;
  auto push = [&](std::size_t k) {
    const Cell& c = table.at(k, algo, p);
    if (!c.has_value())
      fail(ErrorCode::IncompleteGrid,
           "cell (" + table.id + ", " + table.cases[k] + ", " + data.algorithms[algo] +
               ") has no metric value; apply a value-imputing missing policy first");
    out.push_back(c.value);
  };
  if (case_rows.empty())
    for (std::size_t k = 0; k < table.case_count(); ++k) push(k);
  else
    for (std::uint32_t k : case_rows) push(k);
  return out;
}

}  // namespace detail

// Pairwise one-sided Wilcoxon tests over every ordered algorithm pair of one
// task, adjusted jointly across all p(p-1) tests. For smaller-is-better
// metrics the difference sign flips, so "superior" always means better.
inline SignificanceMatrix significance_matrix(const ChallengeData& data, std::size_t task,
                                              double alpha, Adjustment adjustment,
                                              std::span<const std::uint32_t> case_rows = {}) {
  if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorCode::OutOfRange, "alpha must be in (0,1)");
  const std::size_t p = data.algorithms.size();
  if (p < 2) fail(ErrorCode::EmptyInput, "significance matrix needs at least 2 algorithms");

  std::vector<std::vector<double>> values(p);
  for (std::size_t a = 0; a < p; ++a)
    values[a] = detail::algorithm_values(data, task, a, case_rows);

  SignificanceMatrix sm;
  sm.algorithms = data.algorithms;
  sm.alpha = alpha;
  sm.adjustment = adjustment;
  sm.p_raw.assign(p * p, std::numeric_limits<double>::quiet_NaN());
  sm.p_adj.assign(p * p, std::numeric_limits<double>::quiet_NaN());
  sm.superior.assign(p * p, 0);

  std::vector<double> flat;
  flat.reserve(p * (p - 1));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      if (i == j) continue;
      const double pv = data.direction == Direction::LargerBetter
                            ? wilcoxon_signed_rank_one_sided(values[i], values[j])
                            : wilcoxon_signed_rank_one_sided(values[j], values[i]);
      sm.p_raw[i * p + j] = pv;
      flat.push_back(pv);
    }

  const std::vector<double> adjusted =
      adjustment == Adjustment::Holm ? holm_adjust(flat) : flat;

  std::size_t idx = 0;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      if (i == j) continue;
      sm.p_adj[i * p + j] = adjusted[idx++];
      sm.superior[i * p + j] = sm.p_adj[i * p + j] < alpha ? 1 : 0;
    }

  // One-sided tests on shared data cannot reject both directions at any
  // alpha below 1/2.
  if (alpha <= 0.5)
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i + 1; j < p; ++j)
        if (sm.is_superior(i, j) && sm.is_superior(j, i))
          throw std::logic_error("mutually superior pair in significance matrix");

  return sm;
}

inline void write_significance_csv(std::ostream& out, const SignificanceMatrix& sm) {
  csv::write_row(out, std::vector<std::string>{"algorithm_a", "algorithm_b", "raw_p", "adj_p",
                                               "significant"});
  const std::size_t p = sm.size();
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      if (i == j) continue;
      csv::write_row(out, std::vector<std::string>{
                              sm.algorithms[i], sm.algorithms[j], format_double(sm.raw(i, j)),
                              format_double(sm.adjusted(i, j)),
                              sm.is_superior(i, j) ? "true" : "false"});
    }
}

}  // namespace rankbench
