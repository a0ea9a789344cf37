#pragma once
// Bootstrap engine and rank-distribution summaries. Every bootstrap sample k
// draws its case indices from the counter stream (seed, k), so the results
// are identical for any thread count.

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "rankbench/assessment_data.hpp"
#include "rankbench/descriptive.hpp"
#include "rankbench/error.hpp"
#include "rankbench/parallel.hpp"
#include "rankbench/ranking.hpp"
#include "rankbench/rng.hpp"

namespace rankbench {

struct BootstrapConfig {
  int samples = 1000;  // b
  std::uint64_t seed = 0;
};

inline std::vector<std::uint32_t> bootstrap_sample_indices(std::size_t n, std::uint64_t seed,
                                                           std::uint64_t sample_index) {
  if (n == 0) fail(ErrorCode::EmptyInput, "cannot resample zero cases");
  CounterRng rng(seed, sample_index);
  std::vector<std::uint32_t> idx(n);
  for (auto& v : idx) v = rng.next_below(static_cast<std::uint32_t>(n));
  return idx;
}

// All b index lists; each of length n, drawn with replacement.
inline std::vector<std::vector<std::uint32_t>> draw_bootstrap_indices(
    std::size_t n, const BootstrapConfig& cfg) {
  if (cfg.samples < 1) fail(ErrorCode::InvalidArgument, "bootstrap sample count must be >= 1");
  std::vector<std::vector<std::uint32_t>> out;
  out.reserve(static_cast<std::size_t>(cfg.samples));
  for (int k = 0; k < cfg.samples; ++k)
    out.push_back(bootstrap_sample_indices(n, cfg.seed, static_cast<std::uint64_t>(k)));
  return out;
}

enum class DistributionSource { Bootstrap, AcrossTasks };

struct RankDistribution {
  DistributionSource source = DistributionSource::Bootstrap;
  int total = 0;  // b for bootstrap, task count across tasks
  // Display columns: algorithms for the standard plots, task ids for the
  // per-algorithm panels of a multi-task analysis.
  std::vector<std::string> columns;
  std::vector<std::map<int, int>> counts;             // per column: rank -> frequency
  std::vector<double> medians;                        // per column
  std::vector<std::pair<double, double>> intervals;   // 2.5/97.5 percentiles, or min/max

  int max_rank() const {
    int m = 1;
    for (const auto& c : counts)
      for (const auto& [rank, freq] : c) m = std::max(m, rank);
    return m;
  }
};

namespace detail {

inline std::vector<double> expand_counts(const std::map<int, int>& counts) {
  std::vector<double> out;
  for (const auto& [rank, freq] : counts)
    for (int i = 0; i < freq; ++i) out.push_back(static_cast<double>(rank));
  return out;
}

inline void summarize_bootstrap_column(const std::vector<int>& rank_samples, double& median_out,
                                       std::pair<double, double>& interval_out) {
  std::vector<double> sorted(rank_samples.begin(), rank_samples.end());
  std::sort(sorted.begin(), sorted.end());
  median_out = quantile_sorted(sorted, 0.5);
  interval_out = {quantile_sorted(sorted, 0.025), quantile_sorted(sorted, 0.975)};
}

}  // namespace detail

// Recomputes the ranking on each bootstrap sample and tabulates the rank each
// algorithm achieves; intervals span the 2.5th to 97.5th percentile.
inline RankDistribution bootstrap_rank_distribution(const ChallengeData& data, std::size_t task,
                                                    const RankingMethodSpec& method,
                                                    const BootstrapConfig& cfg,
                                                    int threads = 1) {
  if (cfg.samples < 1) fail(ErrorCode::InvalidArgument, "bootstrap sample count must be >= 1");
  const std::size_t n = data.tasks.at(task).case_count();
  const std::size_t p = data.algorithms.size();
  const std::size_t b = static_cast<std::size_t>(cfg.samples);

  std::vector<std::vector<int>> rank_samples(p, std::vector<int>(b, 0));
  parallel_for(b, threads, [&](std::size_t k) {
    const auto idx = bootstrap_sample_indices(n, cfg.seed, k);
    const Ranking r = compute_ranking(data, task, method, idx);
    for (std::size_t a = 0; a < p; ++a) rank_samples[a][k] = r.ranks[a];
  });

  RankDistribution dist;
  dist.source = DistributionSource::Bootstrap;
  dist.total = cfg.samples;
  dist.columns = data.algorithms;
  dist.counts.resize(p);
  dist.medians.resize(p);
  dist.intervals.resize(p);
  for (std::size_t a = 0; a < p; ++a) {
    for (int r : rank_samples[a]) ++dist.counts[a][r];
    detail::summarize_bootstrap_column(rank_samples[a], dist.medians[a], dist.intervals[a]);
  }
  return dist;
}

struct TauSamples {
  std::string task;
  RankingMethodSpec method;
  std::vector<double> values;  // length b, each in [-1, 1]

  double median_tau() const {
    return median(values);
  }
};

// Kendall's tau between the full-data ranking and each bootstrap ranking.
// The full-data ranking must not be all-tied; an all-tied *bootstrap* ranking
// carries no ordering information and is recorded as tau = 0.
inline TauSamples bootstrap_tau_samples(const ChallengeData& data, std::size_t task,
                                        const RankingMethodSpec& method,
                                        const BootstrapConfig& cfg, int threads = 1) {
  if (cfg.samples < 1) fail(ErrorCode::InvalidArgument, "bootstrap sample count must be >= 1");
  const Ranking full = compute_ranking(data, task, method);
  if (full.all_tied())
    fail(ErrorCode::DegenerateInput,
         "full-data ranking of task '" + full.task + "' is all-tied; tau is undefined");

  std::vector<double> full_ranks(full.ranks.begin(), full.ranks.end());
  const std::size_t n = data.tasks.at(task).case_count();
  const std::size_t b = static_cast<std::size_t>(cfg.samples);

  TauSamples out;
  out.task = full.task;
  out.method = method;
  out.values.assign(b, 0.0);
  parallel_for(b, threads, [&](std::size_t k) {
    const auto idx = bootstrap_sample_indices(n, cfg.seed, k);
    const Ranking r = compute_ranking(data, task, method, idx);
    if (r.all_tied()) {
      out.values[k] = 0.0;
      return;
    }
    std::vector<double> boot_ranks(r.ranks.begin(), r.ranks.end());
    out.values[k] = kendall_tau(full_ranks, boot_ranks);
  });
  return out;
}

// Distribution of ranks across tasks instead of bootstrap samples; the
// interval is the attained min..max rank.
inline RankDistribution cross_task_rank_distribution(std::span<const Ranking> rankings) {
  if (rankings.empty()) fail(ErrorCode::EmptyInput, "no rankings");
  const auto& first = rankings.front();
  const std::size_t p = first.algorithms.size();

  RankDistribution dist;
  dist.source = DistributionSource::AcrossTasks;
  dist.total = static_cast<int>(rankings.size());
  dist.columns = first.algorithms;
  dist.counts.resize(p);
  dist.medians.resize(p);
  dist.intervals.resize(p);

  for (const auto& r : rankings) {
    if (r.algorithms.size() != p)
      fail(ErrorCode::AlgorithmSetMismatch, "rankings cover different algorithm sets");
    for (std::size_t a = 0; a < p; ++a) {
      std::size_t idx = a;
      if (r.algorithms[a] != first.algorithms[a]) {
        bool found = false;
        for (std::size_t i = 0; i < p; ++i)
          if (r.algorithms[i] == first.algorithms[a]) {
            idx = i;
            found = true;
            break;
          }
        if (!found)
          fail(ErrorCode::AlgorithmSetMismatch,
               "algorithm '" + first.algorithms[a] + "' missing from task '" + r.task + "'");
      }
      ++dist.counts[a][r.ranks[idx]];
    }
  }

  for (std::size_t a = 0; a < p; ++a) {
    const auto expanded = detail::expand_counts(dist.counts[a]);
    std::vector<double> sorted = expanded;
    std::sort(sorted.begin(), sorted.end());
    dist.medians[a] = quantile_sorted(sorted, 0.5);
    dist.intervals[a] = {sorted.front(), sorted.back()};
  }
  return dist;
}

// Bootstrap rank distributions for every task, re-indexable per algorithm for
// the task-stratified blob panels. Numerical content equals
// bootstrap_rank_distribution per task cell for cell.
struct PerAlgorithmBootstrap {
  std::vector<std::string> algorithms;
  std::vector<std::string> tasks;
  std::vector<RankDistribution> per_task;  // aligned with `tasks`
  int samples = 0;

  // Columns become tasks; absent (algorithm, task) pairs are skipped.
  RankDistribution for_algorithm(const std::string& algorithm) const {
    RankDistribution dist;
    dist.source = DistributionSource::Bootstrap;
    dist.total = samples;
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      const auto& src = per_task[t];
      for (std::size_t a = 0; a < src.columns.size(); ++a) {
        if (src.columns[a] != algorithm) continue;
        dist.columns.push_back(tasks[t]);
        dist.counts.push_back(src.counts[a]);
        dist.medians.push_back(src.medians[a]);
        dist.intervals.push_back(src.intervals[a]);
        break;
      }
    }
    if (dist.columns.empty())
      fail(ErrorCode::KeyMismatch, "algorithm '" + algorithm + "' absent from all tasks");
    return dist;
  }
};

inline PerAlgorithmBootstrap per_algorithm_task_bootstrap(const ChallengeData& data,
                                                          const RankingMethodSpec& method,
                                                          const BootstrapConfig& cfg,
                                                          int threads = 1) {
  PerAlgorithmBootstrap out;
  out.algorithms = data.algorithms;
  out.samples = cfg.samples;
  for (std::size_t t = 0; t < data.task_count(); ++t) {
    out.tasks.push_back(data.tasks[t].id);
    out.per_task.push_back(bootstrap_rank_distribution(data, t, method, cfg, threads));
  }
  return out;
}

inline void write_rank_distribution_csv(std::ostream& out, const RankDistribution& dist,
                                        const std::string& task) {
  csv::write_row(out, std::vector<std::string>{"task", "column", "rank", "count", "median",
                                               "interval_lo", "interval_hi"});
  for (std::size_t a = 0; a < dist.columns.size(); ++a)
    for (const auto& [rank, freq] : dist.counts[a])
      csv::write_row(out, std::vector<std::string>{
                              task, dist.columns[a], format_int(rank), format_int(freq),
                              format_double(dist.medians[a]),
                              format_double(dist.intervals[a].first),
                              format_double(dist.intervals[a].second)});
}

inline void write_tau_samples_csv(std::ostream& out, std::span<const TauSamples> samples) {
  csv::write_row(out, std::vector<std::string>{"task", "method", "sample", "tau"});
  for (const auto& ts : samples)
    for (std::size_t i = 0; i < ts.values.size(); ++i)
      csv::write_row(out, std::vector<std::string>{ts.task, ts.method.name(),
                                                   format_int(static_cast<long long>(i)),
                                                   format_double(ts.values[i])});
}

}  // namespace rankbench
