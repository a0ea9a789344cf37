#pragma once
// The three ranking schemes (aggregate-then-rank, rank-then-aggregate,
// test-based) plus the mean-rank consensus across tasks.
//
// Challenge-facing ranks are integers with min-rank ties: a group of k tied
// scores at best remaining position r all receive rank r, the next distinct
// score receives r + k. Average-rank ties (the mean of the occupied
// positions) are used inside consensus and distance computations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "rankbench/assessment_data.hpp"
#include "rankbench/descriptive.hpp"
#include "rankbench/error.hpp"
#include "rankbench/rank_stats.hpp"
#include "rankbench/text.hpp"

namespace rankbench {

enum class TiePolicy { MinRank, AverageRank };
enum class RankScheme { AggregateThenRank, RankThenAggregate, TestBased };
enum class AggregateKind { Mean, Median, Quantile };

struct RankingMethodSpec {
  RankScheme scheme = RankScheme::TestBased;
  AggregateKind aggregate = AggregateKind::Mean;
  double quantile = 0.5;                      // AggregateKind::Quantile only
  double alpha = 0.05;                        // TestBased only
  Adjustment test_adjustment = Adjustment::None;  // TestBased win counting

  static RankingMethodSpec mean_then_rank() {
    return {RankScheme::AggregateThenRank, AggregateKind::Mean};
  }
  static RankingMethodSpec median_then_rank() {
    return {RankScheme::AggregateThenRank, AggregateKind::Median};
  }
  static RankingMethodSpec rank_then_mean() {
    return {RankScheme::RankThenAggregate, AggregateKind::Mean};
  }
  static RankingMethodSpec rank_then_median() {
    return {RankScheme::RankThenAggregate, AggregateKind::Median};
  }
  static RankingMethodSpec test_based(double alpha = 0.05,
                                      Adjustment adj = Adjustment::None) {
    RankingMethodSpec s{RankScheme::TestBased, AggregateKind::Mean};
    s.alpha = alpha;
    s.test_adjustment = adj;
    return s;
  }

  std::string name() const {
    switch (scheme) {
      case RankScheme::AggregateThenRank:
        switch (aggregate) {
          case AggregateKind::Mean: return "mean-then-rank";
          case AggregateKind::Median: return "median-then-rank";
          case AggregateKind::Quantile:
            return "q" + format_double(quantile) + "-then-rank";
        }
        break;
      case RankScheme::RankThenAggregate:
        switch (aggregate) {
          case AggregateKind::Mean: return "rank-then-mean";
          case AggregateKind::Median: return "rank-then-median";
          case AggregateKind::Quantile:
            return "rank-then-q" + format_double(quantile);
        }
        break;
      case RankScheme::TestBased:
        return "test-based";
    }
    return "unknown";
  }

  static std::optional<RankingMethodSpec> from_name(std::string_view name) {
    if (name == "mean-then-rank") return mean_then_rank();
    if (name == "median-then-rank") return median_then_rank();
    if (name == "rank-then-mean") return rank_then_mean();
    if (name == "rank-then-median") return rank_then_median();
    if (name == "test-based") return test_based();
    return std::nullopt;
  }
};

// The five methods shown in the ranking-robustness line plot.
inline std::vector<RankingMethodSpec> standard_method_set() {
  return {RankingMethodSpec::mean_then_rank(), RankingMethodSpec::median_then_rank(),
          RankingMethodSpec::rank_then_mean(), RankingMethodSpec::rank_then_median(),
          RankingMethodSpec::test_based()};
}

// Smaller rank = better score under `direction`. MinRank gives integer ranks;
// AverageRank gives the mean of the positions a tie group occupies.
inline std::vector<double> assign_ranks(std::span<const double> scores, Direction direction,
                                        TiePolicy tie) {
  if (scores.empty()) fail(ErrorCode::EmptyInput, "assign_ranks on empty score set");
  for (double s : scores)
    if (!std::isfinite(s)) fail(ErrorCode::NonFiniteValue, "non-finite score");

  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b])
      return direction == Direction::LargerBetter ? scores[a] > scores[b]
                                                  : scores[a] < scores[b];
    return a < b;
  });

  std::vector<double> ranks(n, 0.0);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double value = tie == TiePolicy::MinRank
                             ? static_cast<double>(i + 1)
                             : (static_cast<double>(i + j) / 2.0 + 1.0);
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = value;
    i = j + 1;
  }
  return ranks;
}

inline std::map<std::string, double> assign_ranks(const std::map<std::string, double>& scores,
                                                  Direction direction, TiePolicy tie) {
  std::vector<double> flat;
  flat.reserve(scores.size());
  for (const auto& [k, v] : scores) flat.push_back(v);
  const auto ranks = assign_ranks(flat, direction, tie);
  std::map<std::string, double> out;
  std::size_t i = 0;
  for (const auto& [k, v] : scores) out[k] = ranks[i++];
  return out;
}

struct Ranking {
  std::string task;
  std::vector<std::string> algorithms;
  std::vector<int> ranks;                // min-rank ties
  std::vector<double> aggregates;        // score that induced the rank
  RankingMethodSpec method;
  // Direction under which the aggregates sort (metric direction for
  // aggregate-then-rank, smaller-better for aggregated ranks, larger-better
  // for win counts). Lets consensus re-rank with average ties without
  // touching the raw data.
  Direction aggregate_direction = Direction::LargerBetter;

  int rank_of(std::string_view algorithm) const {
    for (std::size_t i = 0; i < algorithms.size(); ++i)
      if (algorithms[i] == algorithm) return ranks[i];
    fail(ErrorCode::KeyMismatch, "no algorithm named '" + std::string(algorithm) + "'");
  }

  bool all_tied() const {
    for (int r : ranks)
      if (r != 1) return false;
    return true;
  }
};

// The same ranking with average-rank tie values.
inline std::vector<double> average_ranks(const Ranking& r) {
  return assign_ranks(r.aggregates, r.aggregate_direction, TiePolicy::AverageRank);
}

inline RankList to_rank_list(const Ranking& r) {
  const auto avg = average_ranks(r);
  RankList out;
  for (std::size_t i = 0; i < r.algorithms.size(); ++i) out[r.algorithms[i]] = avg[i];
  return out;
}

// Display order: by rank, original data order breaking ties.
inline std::vector<std::size_t> display_order(const Ranking& r) {
  std::vector<std::size_t> order(r.algorithms.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (r.ranks[a] != r.ranks[b]) return r.ranks[a] < r.ranks[b];
    return a < b;
  });
  return order;
}

namespace detail {

inline double aggregate_values(std::vector<double> values, const RankingMethodSpec& spec) {
  switch (spec.aggregate) {
    case AggregateKind::Mean: return mean(values);
    case AggregateKind::Median: return quantile(std::move(values), 0.5);
    case AggregateKind::Quantile: return quantile(std::move(values), spec.quantile);
  }
  fail(ErrorCode::InvalidArgument, "unknown aggregate");
}

inline Ranking make_ranking(const ChallengeData& data, std::size_t task,
                            std::vector<double> aggregates, Direction agg_direction,
                            const RankingMethodSpec& spec) {
  Ranking r;
  r.task = data.tasks.at(task).id;
  r.algorithms = data.algorithms;
  r.aggregates = std::move(aggregates);
  r.method = spec;
  r.aggregate_direction = agg_direction;
  const auto ranks = assign_ranks(r.aggregates, agg_direction, TiePolicy::MinRank);
  r.ranks.reserve(ranks.size());
  for (double v : ranks) r.ranks.push_back(static_cast<int>(v));
  return r;
}

// Ranks of one case row. Cells flagged RankWorst share the min-rank position
// after all valued cells; Missing cells are a caller error.
inline std::vector<double> case_ranks(const ChallengeData& data, std::size_t task,
                                      std::size_t case_idx, TiePolicy tie) {
  const auto& table = data.tasks.at(task);
  const std::size_t p = data.algorithms.size();
  std::vector<double> values;
  std::vector<std::size_t> valued, worst;
  for (std::size_t a = 0; a < p; ++a) {
    const Cell& c = table.at(case_idx, a, p);
    switch (c.state) {
      case CellState::Observed:
      case CellState::Imputed:
        valued.push_back(a);
        values.push_back(c.value);
        break;
      case CellState::RankWorst:
        worst.push_back(a);
        break;
      case CellState::Missing:
        fail(ErrorCode::IncompleteGrid, "missing cell (" + table.id + ", " +
                                            table.cases[case_idx] + ", " + data.algorithms[a] +
                                            "); apply a missing policy first");
    }
  }
  std::vector<double> out(p, 0.0);
  if (!values.empty()) {
    const auto ranks = assign_ranks(values, data.direction, tie);
    for (std::size_t i = 0; i < valued.size(); ++i) out[valued[i]] = ranks[i];
  }
  if (!worst.empty()) {
    const double base = static_cast<double>(valued.size());
    const double w = static_cast<double>(worst.size());
    const double rank = tie == TiePolicy::MinRank ? base + 1.0 : base + (w + 1.0) / 2.0;
    for (std::size_t a : worst) out[a] = rank;
  }
  return out;
}

inline std::vector<std::uint32_t> all_rows(const ChallengeData& data, std::size_t task) {
  std::vector<std::uint32_t> rows(data.tasks.at(task).case_count());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = static_cast<std::uint32_t>(i);
  return rows;
}

}  // namespace detail

// Aggregate each algorithm's metric values over the task's cases, then rank
// the aggregates.
inline Ranking aggregate_then_rank(const ChallengeData& data, std::size_t task,
                                   const RankingMethodSpec& spec,
                                   std::span<const std::uint32_t> case_rows = {}) {
  const std::size_t p = data.algorithms.size();
  std::vector<double> aggregates(p, 0.0);
  for (std::size_t a = 0; a < p; ++a)
    aggregates[a] = detail::aggregate_values(
        detail::algorithm_values(data, task, a, case_rows), spec);
  return detail::make_ranking(data, task, std::move(aggregates), data.direction, spec);
}

// Rank within every case, aggregate the per-case ranks per algorithm, then
// rank the aggregated ranks (smaller aggregated rank is better).
inline Ranking rank_then_aggregate(const ChallengeData& data, std::size_t task,
                                   const RankingMethodSpec& spec,
                                   std::span<const std::uint32_t> case_rows = {}) {
  const auto& table = data.tasks.at(task);
  const std::size_t p = data.algorithms.size();
  std::vector<std::uint32_t> rows_storage;
  if (case_rows.empty()) {
    rows_storage = detail::all_rows(data, task);
    case_rows = rows_storage;
  }
  if (case_rows.empty()) fail(ErrorCode::EmptyInput, "task '" + table.id + "' has no cases");

  std::vector<std::vector<double>> per_algo(p);
  for (auto& v : per_algo) v.reserve(case_rows.size());
  for (std::uint32_t k : case_rows) {
    const auto ranks = detail::case_ranks(data, task, k, TiePolicy::MinRank);
    for (std::size_t a = 0; a < p; ++a) per_algo[a].push_back(ranks[a]);
  }
  std::vector<double> aggregates(p, 0.0);
  for (std::size_t a = 0; a < p; ++a)
    aggregates[a] = detail::aggregate_values(std::move(per_algo[a]), spec);
  return detail::make_ranking(data, task, std::move(aggregates), Direction::SmallerBetter,
                              spec);
}

// Score every algorithm by its number of significant one-sided pairwise wins
// and rank the counts; equal counts share a rank.
inline Ranking test_based_ranking(const ChallengeData& data, std::size_t task, double alpha,
                                  Adjustment adjustment = Adjustment::None,
                                  std::span<const std::uint32_t> case_rows = {}) {
  const SignificanceMatrix sm = significance_matrix(data, task, alpha, adjustment, case_rows);
  const auto wins = sm.win_counts();
  std::vector<double> aggregates(wins.begin(), wins.end());
  RankingMethodSpec spec = RankingMethodSpec::test_based(alpha, adjustment);
  return detail::make_ranking(data, task, std::move(aggregates), Direction::LargerBetter,
                              spec);
}

inline Ranking compute_ranking(const ChallengeData& data, std::size_t task,
                               const RankingMethodSpec& spec,
                               std::span<const std::uint32_t> case_rows = {}) {
  switch (spec.scheme) {
    case RankScheme::AggregateThenRank: return aggregate_then_rank(data, task, spec, case_rows);
    case RankScheme::RankThenAggregate: return rank_then_aggregate(data, task, spec, case_rows);
    case RankScheme::TestBased:
      return test_based_ranking(data, task, spec.alpha, spec.test_adjustment, case_rows);
  }
  fail(ErrorCode::InvalidArgument, "unknown ranking scheme");
}

inline std::vector<Ranking> per_task_rankings(const ChallengeData& data,
                                              const RankingMethodSpec& spec) {
  std::vector<Ranking> out;
  out.reserve(data.task_count());
  for (std::size_t t = 0; t < data.task_count(); ++t)
    out.push_back(compute_ranking(data, t, spec));
  return out;
}

// Mean of per-task average ranks (optionally task-weighted), ranked smaller-
// better with min-rank ties. Tasks absent from a non-empty weight map get
// weight 1.
inline Ranking consensus_ranking(std::span<const Ranking> rankings,
                                 const std::map<std::string, double>& weights = {}) {
  if (rankings.empty()) fail(ErrorCode::EmptyInput, "consensus of zero rankings");
  const auto& first = rankings.front();
  const std::size_t p = first.algorithms.size();

  for (const auto& [task, w] : weights) {
    if (!(w > 0.0)) fail(ErrorCode::NonPositiveWeight, "weight for task '" + task + "'");
    bool known = false;
    for (const auto& r : rankings)
      if (r.task == task) known = true;
    if (!known) fail(ErrorCode::UnknownTask, "weight names unknown task '" + task + "'");
  }

  std::vector<double> sums(p, 0.0);
  double total_weight = 0.0;
  for (const auto& r : rankings) {
    if (r.algorithms.size() != p)
      fail(ErrorCode::AlgorithmSetMismatch, "rankings cover different algorithm sets");
    const auto avg = average_ranks(r);
    auto it = weights.find(r.task);
    const double w = it == weights.end() ? 1.0 : it->second;
    total_weight += w;
    for (std::size_t a = 0; a < p; ++a) {
      const std::size_t idx = first.algorithms[a] == r.algorithms[a]
                                  ? a
                                  : [&] {
                                      for (std::size_t b = 0; b < p; ++b)
                                        if (r.algorithms[b] == first.algorithms[a]) return b;
                                      fail(ErrorCode::AlgorithmSetMismatch,
                                           "algorithm '" + first.algorithms[a] +
                                               "' missing from task '" + r.task + "'");
                                    }();
      sums[a] += w * avg[idx];
    }
  }

  Ranking out;
  out.task = "consensus";
  out.algorithms = first.algorithms;
  out.aggregates.resize(p);
  for (std::size_t a = 0; a < p; ++a) out.aggregates[a] = sums[a] / total_weight;
  out.method = first.method;
  out.aggregate_direction = Direction::SmallerBetter;
  const auto ranks = assign_ranks(out.aggregates, Direction::SmallerBetter, TiePolicy::MinRank);
  out.ranks.reserve(p);
  for (double v : ranks) out.ranks.push_back(static_cast<int>(v));
  return out;
}

inline void write_rankings_csv(std::ostream& out, std::span<const Ranking> rankings) {
  csv::write_row(out,
                 std::vector<std::string>{"task", "algorithm", "rank", "aggregate", "method"});
  for (const auto& r : rankings) {
    const std::string method = r.task == "consensus" ? "consensus" : r.method.name();
    for (std::size_t a = 0; a < r.algorithms.size(); ++a)
      csv::write_row(out, std::vector<std::string>{r.task, r.algorithms[a],
                                                   format_int(r.ranks[a]),
                                                   format_double(r.aggregates[a]), method});
  }
}

}  // namespace rankbench
