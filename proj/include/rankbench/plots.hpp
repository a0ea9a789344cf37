#pragma once
// Scene builders for the eight figure families: dot/box, podium, ranking
// heatmap, ranking-method line plot, blob plot, violin plot, significance
// map, dendrogram and network graph. All builders are pure functions of
// their inputs (plus an explicit seed where ties break randomly), so a scene
// serializes to byte-identical SVG on every run.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rankbench/assessment_data.hpp"
#include "rankbench/descriptive.hpp"
#include "rankbench/error.hpp"
#include "rankbench/rank_stats.hpp"
#include "rankbench/ranking.hpp"
#include "rankbench/rng.hpp"
#include "rankbench/scene.hpp"
#include "rankbench/stability.hpp"
#include "rankbench/task_similarity.hpp"

namespace rankbench {

// Categorical palette, 19 entries (beyond that, colors cycle and dot markers
// change shape).
inline const char* palette_color(std::size_t i) {
  static constexpr std::array<const char*, 19> kPalette = {
      "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2",
      "#7f7f7f", "#bcbd22", "#17becf", "#aec7e8", "#ffbb78", "#98df8a", "#ff9896",
      "#c5b0d5", "#c49c94", "#f7b6d2", "#c7c7c7", "#dbdb8d"};
  return kPalette[i % kPalette.size()];
}

inline int marker_shape(std::size_t i) { return static_cast<int>((i / 19) % 3); }

struct BoxStats {
  double median = 0.0, q1 = 0.0, q3 = 0.0;
  double whisker_lo = 0.0, whisker_hi = 0.0;
  std::vector<double> outliers;
};

// Tukey boxplot statistics: whiskers reach the most extreme points within
// 1.5 IQR of the quartiles.
inline BoxStats box_stats(std::span<const double> values) {
  if (values.empty()) fail(ErrorCode::EmptyInput, "box stats of empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  BoxStats s;
  s.q1 = quantile_sorted(sorted, 0.25);
  s.median = quantile_sorted(sorted, 0.5);
  s.q3 = quantile_sorted(sorted, 0.75);
  const double reach = 1.5 * (s.q3 - s.q1);
  s.whisker_lo = sorted.back();
  s.whisker_hi = sorted.front();
  for (double v : sorted) {
    if (v >= s.q1 - reach) {
      s.whisker_lo = v;
      break;
    }
  }
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
    if (*it <= s.q3 + reach) {
      s.whisker_hi = *it;
      break;
    }
  }
  for (double v : sorted)
    if (v < s.whisker_lo || v > s.whisker_hi) s.outliers.push_back(v);
  return s;
}

namespace detail {

struct Frame {
  double x0, x1, y0, y1;  // plot area in pixels; y0 is the top
};

inline double band_center(std::size_t i, std::size_t n, double lo, double hi) {
  return lo + (static_cast<double>(i) + 0.5) * (hi - lo) / static_cast<double>(n);
}

inline double band_width(std::size_t n, double lo, double hi) {
  return (hi - lo) / static_cast<double>(std::max<std::size_t>(n, 1));
}

// Low-discrepancy jitter offset in [-0.35, 0.35] of a category slot.
inline double jitter_offset(std::size_t i) {
  const double phi = 0.6180339887498949;
  const double frac = std::fmod(static_cast<double>(i + 1) * phi, 1.0);
  return (frac - 0.5) * 0.7;
}

inline std::pair<double, double> padded_domain(double lo, double hi) {
  if (lo > hi) std::swap(lo, hi);
  if (lo == hi) return {lo - 0.5, hi + 0.5};
  const double pad = 0.04 * (hi - lo);
  return {lo - pad, hi + pad};
}

inline Axis value_axis_left(const Frame& f, const LinearScale& scale, double lo, double hi,
                            const std::string& title) {
  Axis axis;
  axis.side = Axis::Side::Left;
  axis.lo = f.y0;
  axis.hi = f.y1;
  axis.cross = f.x0;
  for (double v : nice_ticks(lo, hi))
    axis.ticks.push_back({scale(v), format_double(v, 6)});
  axis.title = title;
  return axis;
}

inline Axis category_axis_bottom(const Frame& f, std::span<const std::string> labels,
                                 const std::string& title) {
  Axis axis;
  axis.side = Axis::Side::Bottom;
  axis.lo = f.x0;
  axis.hi = f.x1;
  axis.cross = f.y1;
  for (std::size_t i = 0; i < labels.size(); ++i)
    axis.ticks.push_back({band_center(i, labels.size(), f.x0, f.x1), labels[i]});
  axis.title = title;
  return axis;
}

inline Axis rank_axis_left(const Frame& f, int max_rank, const std::string& title = "rank") {
  Axis axis;
  axis.side = Axis::Side::Left;
  axis.lo = f.y0;
  axis.hi = f.y1;
  axis.cross = f.x0;
  int step = 1;
  if (max_rank > 15) step = (max_rank + 14) / 15;
  for (int r = 1; r <= max_rank; r += step)
    axis.ticks.push_back(
        {band_center(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(max_rank),
                     f.y0, f.y1),
         format_int(r)});
  axis.title = title;
  return axis;
}

inline std::string heat_color(double t) {
  // white -> dark blue
  auto channel = [&](int from, int to) {
    const double v = from + t * (to - from);
    const int c = std::clamp(static_cast<int>(std::lround(v)), 0, 255);
    static const char* hex = "0123456789abcdef";
    return std::string{hex[c / 16], hex[c % 16]};
  };
  return "#" + channel(0xff, 0x08) + channel(0xff, 0x30) + channel(0xff, 0x6b);
}

inline double plot_width_for(std::size_t columns) {
  return std::clamp(140.0 + 64.0 * static_cast<double>(columns), 420.0, 1600.0);
}

// Maps display columns of `ordering` onto `columns` by name.
inline std::vector<std::size_t> order_for_columns(const Ranking& ordering,
                                                  std::span<const std::string> columns) {
  if (ordering.algorithms.size() != columns.size())
    fail(ErrorCode::KeyMismatch, "ordering covers a different algorithm set");
  std::vector<std::size_t> out;
  out.reserve(columns.size());
  for (std::size_t pos : display_order(ordering)) {
    const std::string& name = ordering.algorithms[pos];
    bool found = false;
    for (std::size_t c = 0; c < columns.size(); ++c)
      if (columns[c] == name) {
        out.push_back(c);
        found = true;
        break;
      }
    if (!found) fail(ErrorCode::KeyMismatch, "ordering names unknown column '" + name + "'");
  }
  return out;
}

inline void add_dot(Scene& scene, const char* cls, double cx, double cy, double r,
                    const std::string& color, std::size_t algo_index) {
  Style style{.fill = color, .stroke = "none", .opacity = 0.85};
  switch (marker_shape(algo_index)) {
    case 1:
      scene.add(cls, style, RectMark{cx - r, cy - r, 2 * r, 2 * r});
      break;
    case 2: {
      std::string d = "M" + format_double(cx, 6) + " " + format_double(cy - 1.3 * r, 6) + "L" +
                      format_double(cx + 1.3 * r, 6) + " " + format_double(cy, 6) + "L" +
                      format_double(cx, 6) + " " + format_double(cy + 1.3 * r, 6) + "L" +
                      format_double(cx - 1.3 * r, 6) + " " + format_double(cy, 6) + "Z";
      scene.add(cls, style, PathMark{std::move(d)});
      break;
    }
    default:
      scene.add(cls, style, CircleMark{cx, cy, r});
      break;
  }
}

}  // namespace detail

// Boxplots with all test-case values overlaid as jittered dots; algorithms
// ordered by the given ranking.
inline Scene dot_box_plot(const ChallengeData& data, std::size_t task, const Ranking& ordering) {
  const auto& table = data.tasks.at(task);
  const std::size_t p = data.algorithms.size();
  const auto order = detail::order_for_columns(ordering, data.algorithms);

  Scene scene;
  scene.width = detail::plot_width_for(p);
  scene.height = 420.0;
  scene.title = "Dot and box plot: " + table.id;
  const detail::Frame f{56.0, scene.width - 18.0, 36.0, scene.height - 56.0};

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> values(p);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t k = 0; k < table.case_count(); ++k) {
      const Cell& c = table.at(k, a, p);
      if (!c.has_value()) continue;  // rank-only cells have nothing to draw
      values[a].push_back(c.value);
      lo = std::min(lo, c.value);
      hi = std::max(hi, c.value);
    }
  if (!(lo <= hi)) {
    lo = 0.0;
    hi = 1.0;
  }
  const auto [dlo, dhi] = detail::padded_domain(lo, hi);
  const LinearScale y{dlo, dhi, f.y1, f.y0};

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t a = order[i];
    labels.push_back(data.algorithms[a]);
    if (values[a].empty()) continue;
    const double cx = detail::band_center(i, p, f.x0, f.x1);
    const double w = detail::band_width(p, f.x0, f.x1);
    const BoxStats s = box_stats(values[a]);

    scene.add("box-whisker", Style{.stroke = "#444444"},
              LineMark{cx, y(s.q3), cx, y(s.whisker_hi)});
    scene.add("box-whisker", Style{.stroke = "#444444"},
              LineMark{cx, y(s.q1), cx, y(s.whisker_lo)});
    scene.add("box", Style{.fill = "#f4f4f4", .stroke = "#444444"},
              RectMark{cx - 0.25 * w, y(s.q3), 0.5 * w, y(s.q1) - y(s.q3)});
    scene.add("box-median", Style{.stroke = "#222222", .stroke_width = 1.6},
              LineMark{cx - 0.25 * w, y(s.median), cx + 0.25 * w, y(s.median)});
    for (std::size_t j = 0; j < values[a].size(); ++j) {
      const double jx = cx + detail::jitter_offset(j) * w;
      detail::add_dot(scene, "dot", jx, y(values[a][j]), 2.2, palette_color(a), a);
    }
  }

  scene.axes.push_back(detail::value_axis_left(f, y, dlo, dhi, "metric value"));
  scene.axes.push_back(detail::category_axis_bottom(f, labels, "algorithm"));
  return scene;
}

// Podium plot: per test case, algorithms are assigned to podium places by
// their case rank (ties broken randomly with the given seed); dots of one
// case are connected. The lower band shows how often each algorithm attains
// each podium place.
inline Scene podium_plot(const ChallengeData& data, std::size_t task, const Ranking& ordering,
                         std::uint64_t seed) {
  const auto& table = data.tasks.at(task);
  const std::size_t p = data.algorithms.size();
  const std::size_t n = table.case_count();
  const auto order = detail::order_for_columns(ordering, data.algorithms);
  std::vector<std::size_t> display_pos(p, 0);
  for (std::size_t i = 0; i < order.size(); ++i) display_pos[order[i]] = i;

  Scene scene;
  scene.width = std::clamp(140.0 + 90.0 * static_cast<double>(p), 480.0, 1800.0);
  scene.height = 560.0;
  scene.title = "Podium plot: " + table.id;
  const detail::Frame top{56.0, scene.width - 110.0, 36.0, 350.0};
  const detail::Frame bars{top.x0, top.x1, 380.0, scene.height - 56.0};

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t k = 0; k < n; ++k) {
      const Cell& c = table.at(k, a, p);
      if (c.has_value()) {
        lo = std::min(lo, c.value);
        hi = std::max(hi, c.value);
      }
    }
  if (!(lo <= hi)) {
    lo = 0.0;
    hi = 1.0;
  }
  const auto [dlo, dhi] = detail::padded_domain(lo, hi);
  const LinearScale y{dlo, dhi, top.y1, top.y0};

  const double place_w = detail::band_width(p, top.x0, top.x1);
  const double sub_w = place_w / static_cast<double>(p);
  auto dot_x = [&](std::size_t place, std::size_t algo) {
    const double band_lo = top.x0 + static_cast<double>(place) * place_w;
    return band_lo + (static_cast<double>(display_pos[algo]) + 0.5) * sub_w;
  };

  // counts[algo][place]
  std::vector<std::vector<int>> place_counts(p, std::vector<int>(p, 0));
  struct DotPoint {
    double x, y;
    std::size_t algo;
    bool valued;
  };
  for (std::size_t k = 0; k < n; ++k) {
    const auto ranks = detail::case_ranks(data, task, k, TiePolicy::MinRank);
    CounterRng rng(seed ^ 0x706f6469756dull, k);
    std::vector<double> tie_break(p);
    for (auto& t : tie_break) t = rng.next_unit();
    std::vector<std::size_t> by_place(p);
    for (std::size_t a = 0; a < p; ++a) by_place[a] = a;
    std::sort(by_place.begin(), by_place.end(), [&](std::size_t a, std::size_t b) {
      if (ranks[a] != ranks[b]) return ranks[a] < ranks[b];
      if (tie_break[a] != tie_break[b]) return tie_break[a] < tie_break[b];
      return a < b;
    });

    std::vector<DotPoint> pts;
    for (std::size_t place = 0; place < p; ++place) {
      const std::size_t a = by_place[place];
      ++place_counts[a][place];
      const Cell& c = table.at(k, a, p);
      if (!c.has_value()) continue;
      pts.push_back({dot_x(place, a), y(c.value), a, true});
    }
    if (pts.size() >= 2) {
      PolylineMark line;
      for (const auto& pt : pts) line.points.push_back({pt.x, pt.y});
      scene.add("podium-line", Style{.stroke = "#999999", .stroke_width = 0.8, .opacity = 0.5},
                std::move(line));
    }
    for (const auto& pt : pts)
      scene.add("podium-dot", Style{.fill = palette_color(pt.algo), .opacity = 0.9},
                CircleMark{pt.x, pt.y, 2.0});
  }

  // Relative podium-place frequencies.
  const LinearScale bar_y{0.0, 1.0, bars.y1, bars.y0};
  for (std::size_t place = 0; place < p; ++place)
    for (std::size_t a = 0; a < p; ++a) {
      if (place_counts[a][place] == 0) continue;
      const double freq = static_cast<double>(place_counts[a][place]) / static_cast<double>(n);
      const double x = dot_x(place, a);
      scene.add("podium-bar", Style{.fill = palette_color(a), .opacity = 0.9},
                RectMark{x - 0.4 * sub_w, bar_y(freq), 0.8 * sub_w, bars.y1 - bar_y(freq)});
    }

  std::vector<std::string> place_labels;
  for (std::size_t i = 1; i <= p; ++i) place_labels.push_back(format_int(static_cast<int>(i)));
  scene.axes.push_back(detail::value_axis_left(top, y, dlo, dhi, "metric value"));
  {
    Axis freq_axis;
    freq_axis.side = Axis::Side::Left;
    freq_axis.lo = bars.y0;
    freq_axis.hi = bars.y1;
    freq_axis.cross = bars.x0;
    for (double v : {0.0, 0.5, 1.0})
      freq_axis.ticks.push_back({bar_y(v), format_double(v, 2)});
    freq_axis.title = "frequency";
    scene.axes.push_back(freq_axis);
  }
  scene.axes.push_back(detail::category_axis_bottom(bars, place_labels, "podium place"));
  for (std::size_t i = 0; i < order.size(); ++i)
    scene.legend.push_back({data.algorithms[order[i]], palette_color(order[i])});
  return scene;
}

// Heatmap of per-case ranks: cell (rank i, algorithm j) counts the test cases
// in which algorithm j achieved rank i.
inline Scene ranking_heatmap(const ChallengeData& data, std::size_t task,
                             const Ranking& ordering) {
  const auto& table = data.tasks.at(task);
  const std::size_t p = data.algorithms.size();
  const std::size_t n = table.case_count();
  const auto order = detail::order_for_columns(ordering, data.algorithms);

  std::vector<std::vector<int>> counts(p, std::vector<int>(p, 0));  // [algo][rank-1]
  for (std::size_t k = 0; k < n; ++k) {
    const auto ranks = detail::case_ranks(data, task, k, TiePolicy::MinRank);
    for (std::size_t a = 0; a < p; ++a)
      ++counts[a][static_cast<std::size_t>(ranks[a]) - 1];
  }

  Scene scene;
  const double cell = std::clamp(340.0 / static_cast<double>(p), 16.0, 56.0);
  scene.width = 120.0 + cell * static_cast<double>(p) + 30.0;
  scene.height = 90.0 + cell * static_cast<double>(p) + 40.0;
  scene.title = "Ranking heatmap: " + table.id;
  const detail::Frame f{70.0, 70.0 + cell * static_cast<double>(p), 40.0,
                        40.0 + cell * static_cast<double>(p)};

  std::vector<std::string> labels;
  for (std::size_t col = 0; col < order.size(); ++col) {
    const std::size_t a = order[col];
    labels.push_back(data.algorithms[a]);
    for (std::size_t r = 0; r < p; ++r) {
      const double t = n == 0 ? 0.0 : static_cast<double>(counts[a][r]) / static_cast<double>(n);
      const double x = f.x0 + cell * static_cast<double>(col);
      const double yy = f.y0 + cell * static_cast<double>(r);
      scene.add("heatmap-cell",
                Style{.fill = detail::heat_color(t), .stroke = "#dddddd", .stroke_width = 0.5},
                RectMark{x, yy, cell, cell});
      if (counts[a][r] > 0)
        scene.add("heatmap-count",
                  Style{.fill = t > 0.5 ? "#ffffff" : "#222222"},
                  TextMark{x + cell / 2.0, yy + cell / 2.0 + 3.5, format_int(counts[a][r]),
                           TextAnchor::Middle, 9.0});
    }
  }

  scene.axes.push_back(detail::category_axis_bottom(f, labels, "algorithm"));
  scene.axes.push_back(detail::rank_axis_left(f, static_cast<int>(p), "rank per test case"));
  return scene;
}

// One line per algorithm across ranking methods; horizontal lines mean the
// rank is method-independent.
inline Scene line_plot_methods(const ChallengeData& data, std::size_t task,
                               std::span<const RankingMethodSpec> methods) {
  if (methods.empty()) fail(ErrorCode::EmptyInput, "no ranking methods given");
  const std::size_t p = data.algorithms.size();
  std::vector<Ranking> rankings;
  rankings.reserve(methods.size());
  for (const auto& spec : methods) rankings.push_back(compute_ranking(data, task, spec));

  Scene scene;
  scene.width = std::clamp(200.0 + 110.0 * static_cast<double>(methods.size()), 520.0, 1600.0);
  scene.height = 420.0;
  scene.title = "Ranking methods: " + data.tasks.at(task).id;
  const detail::Frame f{56.0, scene.width - 120.0, 36.0, scene.height - 56.0};

  int max_rank = 1;
  for (const auto& r : rankings)
    for (int v : r.ranks) max_rank = std::max(max_rank, v);

  auto rank_y = [&](int rank) {
    return detail::band_center(static_cast<std::size_t>(rank - 1),
                               static_cast<std::size_t>(max_rank), f.y0, f.y1);
  };

  for (std::size_t a = 0; a < p; ++a) {
    PolylineMark line;
    for (std::size_t mi = 0; mi < rankings.size(); ++mi)
      line.points.push_back(
          {detail::band_center(mi, rankings.size(), f.x0, f.x1), rank_y(rankings[mi].ranks[a])});
    scene.add("method-line",
              Style{.stroke = palette_color(a), .stroke_width = 2.0, .opacity = 0.9},
              std::move(line));
  }

  std::vector<std::string> labels;
  for (const auto& spec : methods) labels.push_back(spec.name());
  scene.axes.push_back(detail::category_axis_bottom(f, labels, "ranking method"));
  scene.axes.push_back(detail::rank_axis_left(f, max_rank));
  for (std::size_t a = 0; a < p; ++a)
    scene.legend.push_back({data.algorithms[a], palette_color(a)});
  return scene;
}

// Rank-frequency blob plot. Blob area is proportional to relative frequency;
// the black cross marks the median rank and the vertical line the attained
// interval (percentiles rounded outward to whole ranks).
inline Scene blob_plot(const RankDistribution& dist, std::span<const std::size_t> order,
                       const std::string& title, const std::string& x_title = "algorithm") {
  if (dist.columns.empty()) fail(ErrorCode::EmptyInput, "empty rank distribution");
  if (order.size() != dist.columns.size())
    fail(ErrorCode::KeyMismatch, "column order does not cover the distribution");
  const std::size_t cols = dist.columns.size();
  const int max_rank = dist.max_rank();

  Scene scene;
  scene.width = detail::plot_width_for(cols);
  scene.height = std::clamp(120.0 + 26.0 * static_cast<double>(max_rank), 340.0, 900.0);
  scene.title = title;
  const detail::Frame f{56.0, scene.width - 18.0, 36.0, scene.height - 56.0};

  const double col_w = detail::band_width(cols, f.x0, f.x1);
  const double row_h = (f.y1 - f.y0) / static_cast<double>(max_rank);
  const double r_max = 0.45 * std::min(col_w, row_h);
  auto rank_y = [&](double rank) {
    return detail::band_center(0, static_cast<std::size_t>(max_rank), f.y0, f.y1) +
           (rank - 1.0) * row_h;
  };

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < cols; ++i) {
    const std::size_t c = order[i];
    labels.push_back(dist.columns[c]);
    const double cx = detail::band_center(i, cols, f.x0, f.x1);

    const double lo = std::floor(dist.intervals[c].first + 1e-9);
    const double hi = std::ceil(dist.intervals[c].second - 1e-9);
    scene.add("blob-interval", Style{.stroke = "#000000", .stroke_width = 1.2},
              LineMark{cx, rank_y(lo), cx, rank_y(hi)});

    for (const auto& [rank, freq] : dist.counts[c]) {
      const double rel = static_cast<double>(freq) / static_cast<double>(dist.total);
      scene.add("blob",
                Style{.fill = palette_color(c), .stroke = "none", .opacity = 0.75},
                CircleMark{cx, rank_y(static_cast<double>(rank)), r_max * std::sqrt(rel)});
    }

    const double my = rank_y(dist.medians[c]);
    const double s = 4.0;
    scene.add("blob-median", Style{.stroke = "#000000", .stroke_width = 1.4},
              PathMark{"M" + format_double(cx - s, 6) + " " + format_double(my - s, 6) + "L" +
                       format_double(cx + s, 6) + " " + format_double(my + s, 6) + "M" +
                       format_double(cx - s, 6) + " " + format_double(my + s, 6) + "L" +
                       format_double(cx + s, 6) + " " + format_double(my - s, 6)});
  }

  scene.axes.push_back(detail::category_axis_bottom(f, labels, x_title));
  scene.axes.push_back(detail::rank_axis_left(f, max_rank));
  return scene;
}

inline Scene blob_plot(const RankDistribution& dist, const Ranking& ordering,
                       const std::string& title) {
  return blob_plot(dist, detail::order_for_columns(ordering, dist.columns), title);
}

// Identity order helper for task-stratified blob panels.
inline std::vector<std::size_t> identity_order(std::size_t n) {
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

// Violin plot of bootstrap-tau distributions, one violin per task, arranged
// by descending median tau. Zero-variance samples render as a flat bar.
inline Scene violin_plot(std::span<const TauSamples> samples,
                         const std::string& title = "Bootstrap ranking stability") {
  if (samples.empty()) fail(ErrorCode::EmptyInput, "no tau samples");
  std::vector<std::size_t> order(samples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<double> medians(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].values.empty()) fail(ErrorCode::EmptyInput, "empty tau sample");
    medians[i] = samples[i].median_tau();
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (medians[a] != medians[b]) return medians[a] > medians[b];
    return a < b;
  });

  Scene scene;
  scene.width = detail::plot_width_for(samples.size());
  scene.height = 420.0;
  scene.title = title;
  const detail::Frame f{56.0, scene.width - 18.0, 36.0, scene.height - 56.0};
  const LinearScale y{-1.0, 1.0, f.y1, f.y0};
  const double col_w = detail::band_width(samples.size(), f.x0, f.x1);

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& ts = samples[order[i]];
    labels.push_back(ts.task);
    const double cx = detail::band_center(i, samples.size(), f.x0, f.x1);
    const auto& v = ts.values;
    const double sd = sample_sd(v);
    const std::string color = palette_color(order[i]);

    if (sd == 0.0) {
      scene.add("violin", Style{.fill = color, .stroke = "#333333", .opacity = 0.8},
                RectMark{cx - 0.3 * col_w, y(v.front()) - 2.0, 0.6 * col_w, 4.0});
      continue;
    }

    std::vector<double> sorted(v.begin(), v.end());
    std::sort(sorted.begin(), sorted.end());
    const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    double spread = std::min(sd, iqr / 1.34);
    if (spread == 0.0) spread = sd;  // heavy point mass but nonzero variance
    const double bw = 0.9 * spread * std::pow(static_cast<double>(v.size()), -0.2);

    const double glo = std::max(-1.0, sorted.front() - 3.0 * bw);
    const double ghi = std::min(1.0, sorted.back() + 3.0 * bw);
    constexpr int kGrid = 81;
    std::vector<double> gy(kGrid), gd(kGrid);
    double dmax = 0.0;
    for (int g = 0; g < kGrid; ++g) {
      gy[g] = glo + (ghi - glo) * static_cast<double>(g) / (kGrid - 1);
      double dens = 0.0;
      for (double x : v) {
        const double z = (gy[g] - x) / bw;
        dens += std::exp(-0.5 * z * z);
      }
      dens /= static_cast<double>(v.size()) * bw * std::sqrt(2.0 * std::numbers::pi);
      gd[g] = dens;
      dmax = std::max(dmax, dens);
    }
    const double half_w = 0.42 * col_w;
    std::string d;
    for (int g = 0; g < kGrid; ++g) {
      const double px = cx + half_w * (dmax > 0 ? gd[g] / dmax : 0.0);
      d += (g == 0 ? "M" : "L");
      d += format_double(px, 6) + " " + format_double(y(gy[g]), 6);
    }
    for (int g = kGrid - 1; g >= 0; --g) {
      const double px = cx - half_w * (dmax > 0 ? gd[g] / dmax : 0.0);
      d += "L" + format_double(px, 6) + " " + format_double(y(gy[g]), 6);
    }
    d += "Z";
    scene.add("violin", Style{.fill = color, .stroke = "#333333", .opacity = 0.65},
              PathMark{std::move(d)});

    const double q1 = quantile_sorted(sorted, 0.25);
    const double q3 = quantile_sorted(sorted, 0.75);
    const double med = quantile_sorted(sorted, 0.5);
    scene.add("violin-whisker", Style{.stroke = "#111111"},
              LineMark{cx, y(sorted.front()), cx, y(sorted.back())});
    scene.add("violin-box", Style{.fill = "#ffffff", .stroke = "#111111"},
              RectMark{cx - 3.0, y(q3), 6.0, y(q1) - y(q3)});
    scene.add("violin-median", Style{.stroke = "#111111", .stroke_width = 1.6},
              LineMark{cx - 5.0, y(med), cx + 5.0, y(med)});
  }

  Axis tau_axis;
  tau_axis.side = Axis::Side::Left;
  tau_axis.lo = f.y0;
  tau_axis.hi = f.y1;
  tau_axis.cross = f.x0;
  for (double v : {-1.0, -0.5, 0.0, 0.5, 1.0})
    tau_axis.ticks.push_back({y(v), format_double(v, 2)});
  tau_axis.title = "Kendall's tau";
  scene.axes.push_back(tau_axis);
  scene.axes.push_back(detail::category_axis_bottom(f, labels, "task"));
  return scene;
}

// Incidence matrix of pairwise one-sided superiority: yellow cells mean the
// column algorithm is significantly better than the row algorithm.
inline Scene significance_map_plot(const SignificanceMatrix& sm, const Ranking& ordering) {
  const std::size_t p = sm.size();
  const auto order = detail::order_for_columns(ordering, sm.algorithms);

  Scene scene;
  const double cell = std::clamp(340.0 / static_cast<double>(p), 16.0, 56.0);
  scene.width = 120.0 + cell * static_cast<double>(p) + 30.0;
  scene.height = 90.0 + cell * static_cast<double>(p) + 40.0;
  scene.title = "Significance map";
  const detail::Frame f{70.0, 70.0 + cell * static_cast<double>(p), 40.0,
                        40.0 + cell * static_cast<double>(p)};

  const char* kYellow = "#ffd92f";
  const char* kBlue = "#4575b4";
  const char* kNeutral = "#cccccc";

  std::vector<std::string> labels;
  for (std::size_t col = 0; col < p; ++col) labels.push_back(sm.algorithms[order[col]]);
  for (std::size_t col = 0; col < p; ++col)
    for (std::size_t row = 0; row < p; ++row) {
      const std::size_t i = order[col];
      const std::size_t j = order[row];
      const char* fill = i == j ? kNeutral : (sm.is_superior(i, j) ? kYellow : kBlue);
      scene.add("sig-cell",
                Style{.fill = fill, .stroke = "#ffffff", .stroke_width = 0.5},
                RectMark{f.x0 + cell * static_cast<double>(col),
                         f.y0 + cell * static_cast<double>(row), cell, cell});
    }

  scene.axes.push_back(detail::category_axis_bottom(f, labels, "algorithm (superior if yellow)"));
  {
    Axis left;
    left.side = Axis::Side::Left;
    left.lo = f.y0;
    left.hi = f.y1;
    left.cross = f.x0;
    for (std::size_t row = 0; row < p; ++row)
      left.ticks.push_back(
          {f.y0 + cell * (static_cast<double>(row) + 0.5), sm.algorithms[order[row]]});
    left.title = "algorithm";
    scene.axes.push_back(left);
  }
  return scene;
}

// Rectangular dendrogram; merge heights on the y-axis, leaves at height zero.
inline Scene dendrogram_plot(const Dendrogram& tree) {
  const auto leaves = tree.leaf_order();
  const std::size_t m = leaves.size();

  Scene scene;
  scene.width = detail::plot_width_for(m);
  scene.height = 380.0;
  scene.title = "Task clustering (complete linkage)";
  const detail::Frame f{56.0, scene.width - 18.0, 36.0, scene.height - 66.0};

  double max_h = 0.0;
  for (const auto& node : tree.nodes) max_h = std::max(max_h, node.height);
  if (max_h == 0.0) max_h = 1.0;
  const LinearScale y{0.0, max_h, f.y1, f.y0};

  std::map<std::string, double> leaf_x;
  for (std::size_t i = 0; i < m; ++i)
    leaf_x[leaves[i]] = detail::band_center(i, m, f.x0, f.x1);

  // Post-order positions for internal nodes.
  std::vector<double> node_x(tree.nodes.size(), 0.0);
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const auto& node = tree.nodes[i];
    if (node.is_leaf()) node_x[i] = leaf_x[node.leaf];
    else node_x[i] = (node_x[static_cast<std::size_t>(node.left)] +
                      node_x[static_cast<std::size_t>(node.right)]) / 2.0;
  }

  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const auto& node = tree.nodes[i];
    if (node.is_leaf()) continue;
    const auto& l = tree.nodes[static_cast<std::size_t>(node.left)];
    const auto& r = tree.nodes[static_cast<std::size_t>(node.right)];
    const std::string d =
        "M" + format_double(node_x[static_cast<std::size_t>(node.left)], 6) + " " +
        format_double(y(l.height), 6) + "L" +
        format_double(node_x[static_cast<std::size_t>(node.left)], 6) + " " +
        format_double(y(node.height), 6) + "L" +
        format_double(node_x[static_cast<std::size_t>(node.right)], 6) + " " +
        format_double(y(node.height), 6) + "L" +
        format_double(node_x[static_cast<std::size_t>(node.right)], 6) + " " +
        format_double(y(r.height), 6);
    scene.add("dendro-link", Style{.stroke = "#333333", .stroke_width = 1.4}, PathMark{d});
  }
  for (const auto& leaf : leaves)
    scene.add("dendro-leaf", Style{.fill = "#000000"},
              TextMark{leaf_x[leaf], f.y1 + 16.0, leaf, TextAnchor::Middle, 10.0});

  scene.axes.push_back(detail::value_axis_left(f, y, 0.0, max_h, "merge height"));
  return scene;
}

// Network view of task similarity: nodes at the stress-minimizing layout,
// complete edge set, nodes colored by unique winner (uncolored when rank 1
// is shared).
inline Scene network_plot(const NetworkLayout& layout,
                          std::span<const std::string> algorithms = {}) {
  const std::size_t m = layout.size();

  Scene scene;
  scene.width = 560.0;
  scene.height = 480.0;
  scene.title = "Task similarity network";
  const detail::Frame f{50.0, scene.width - 130.0, 46.0, scene.height - 46.0};

  double xlo = layout.positions[0][0], xhi = xlo;
  double ylo = layout.positions[0][1], yhi = ylo;
  for (const auto& pos : layout.positions) {
    xlo = std::min(xlo, pos[0]);
    xhi = std::max(xhi, pos[0]);
    ylo = std::min(ylo, pos[1]);
    yhi = std::max(yhi, pos[1]);
  }
  const double span_x = xhi - xlo;
  const double span_y = yhi - ylo;
  const double span = std::max({span_x, span_y, 1e-9});
  const double scale = std::min(f.x1 - f.x0, f.y1 - f.y0) / span;
  auto px = [&](double v) { return f.x0 + (v - xlo + (span - span_x) / 2.0) * scale; };
  auto py = [&](double v) { return f.y0 + (v - ylo + (span - span_y) / 2.0) * scale; };

  auto color_of = [&](const std::string& algo) -> std::string {
    for (std::size_t i = 0; i < algorithms.size(); ++i)
      if (algorithms[i] == algo) return palette_color(i);
    return "#888888";
  };

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      scene.add("network-edge", Style{.stroke = "#aaaaaa", .stroke_width = 1.0, .opacity = 0.8},
                LineMark{px(layout.positions[i][0]), py(layout.positions[i][1]),
                         px(layout.positions[j][0]), py(layout.positions[j][1])});

  for (std::size_t i = 0; i < m; ++i) {
    const bool has_winner = layout.winners[i].has_value();
    scene.add("network-node",
              Style{.fill = has_winner ? color_of(*layout.winners[i]) : "#ffffff",
                    .stroke = "#333333", .stroke_width = 1.2},
              CircleMark{px(layout.positions[i][0]), py(layout.positions[i][1]), 11.0});
    scene.add("network-label", Style{.fill = "#000000"},
              TextMark{px(layout.positions[i][0]), py(layout.positions[i][1]) + 3.5,
                       layout.tasks[i], TextAnchor::Middle, 9.0});
  }

  std::vector<std::string> seen;
  for (const auto& w : layout.winners) {
    if (!w) continue;
    if (std::find(seen.begin(), seen.end(), *w) != seen.end()) continue;
    seen.push_back(*w);
  }
  std::sort(seen.begin(), seen.end());
  for (const auto& w : seen) scene.legend.push_back({"winner: " + w, color_of(w)});
  return scene;
}

}  // namespace rankbench
