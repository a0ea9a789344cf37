#pragma once
// Report orchestration: runs the full single-task or multi-task analysis and
// writes a self-contained bundle (index document, SVG figures, machine-
// readable CSV results, reproducibility metadata). Identical input data,
// configuration and seed produce a byte-identical bundle.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rankbench/assessment_data.hpp"
#include "rankbench/plots.hpp"
#include "rankbench/rank_stats.hpp"
#include "rankbench/ranking.hpp"
#include "rankbench/simgen.hpp"
#include "rankbench/stability.hpp"
#include "rankbench/task_similarity.hpp"
#include "rankbench/text.hpp"

namespace rankbench {

inline constexpr const char* kVersion = "0.1.0";

enum class ReportFormat { Html, Markdown };

struct ReportConfig {
  RankingMethodSpec method = RankingMethodSpec::test_based();
  std::map<std::string, double> weights;  // consensus weights (multi-task)
  BootstrapConfig bootstrap;
  double alpha = 0.05;
  Adjustment adjustment = Adjustment::Holm;  // significance map
  ReportFormat format = ReportFormat::Html;
  std::filesystem::path output_dir;
  std::optional<int> top_k;  // restrict figures to the top k algorithms
  int threads = 1;
  // Free-form entries echoed into run.json (CLI flags, input path, ...).
  std::map<std::string, std::string> config_echo;
};

struct ReportBundle {
  std::filesystem::path index_file;
  std::vector<std::filesystem::path> figures;
  std::vector<std::filesystem::path> data_files;
  std::filesystem::path run_metadata;
  std::vector<std::string> warnings;
};

namespace detail {

struct Section {
  std::string id;        // file stem, e.g. "dotbox_T1"
  std::string title;
  std::string caption;
  std::string svg;
};

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << content;
}

inline std::string svg_for_embedding(const std::string& svg) {
  if (svg.rfind("<?xml", 0) == 0) {
    const auto pos = svg.find('\n');
    if (pos != std::string::npos) return svg.substr(pos + 1);
  }
  return svg;
}

struct BundleWriter {
  std::filesystem::path root;
  ReportBundle bundle;

  explicit BundleWriter(const std::filesystem::path& dir) : root(dir) {
    std::filesystem::create_directories(root / "figures");
    std::filesystem::create_directories(root / "data");
  }

  void add_figure(const Section& section) {
    const auto path = root / "figures" / (section.id + ".svg");
    write_text_file(path, section.svg);
    bundle.figures.push_back(path);
  }

  template <typename Fn>
  void add_data(const std::string& name, Fn&& writer) {
    const auto path = root / "data" / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + path.string());
    writer(out);
    bundle.data_files.push_back(path);
  }
};

inline nlohmann::ordered_json config_json(const ChallengeData& data, const ReportConfig& cfg) {
  nlohmann::ordered_json j;
  j["method"] = cfg.method.name();
  j["alpha"] = cfg.alpha;
  j["adjustment"] = adjustment_name(cfg.adjustment);
  j["bootstrap_samples"] = cfg.bootstrap.samples;
  j["seed"] = cfg.bootstrap.seed;
  j["direction"] =
      data.direction == Direction::LargerBetter ? "larger-better" : "smaller-better";
  j["format"] = cfg.format == ReportFormat::Html ? "html" : "md";
  // The worker thread count is deliberately not echoed: it cannot influence
  // any output byte, so the metadata stays identical across thread counts.
  if (cfg.top_k) j["top_k"] = *cfg.top_k;
  if (!cfg.weights.empty()) {
    nlohmann::ordered_json w;
    for (const auto& [task, weight] : cfg.weights) w[task] = weight;
    j["weights"] = w;
  }
  for (const auto& [key, value] : cfg.config_echo) j[key] = value;
  return j;
}

inline void write_run_metadata(BundleWriter& writer, const ChallengeData& data,
                               const ReportConfig& cfg,
                               const std::vector<std::string>& warnings) {
  nlohmann::ordered_json j;
  j["tool"] = "rankbench";
  j["version"] = kVersion;
  j["seed"] = cfg.bootstrap.seed;
  j["config"] = config_json(data, cfg);
  nlohmann::ordered_json input;
  input["tasks"] = data.task_count();
  input["algorithms"] = data.algorithm_count();
  nlohmann::ordered_json cases;
  for (const auto& t : data.tasks) cases[t.id] = t.case_count();
  input["cases_per_task"] = cases;
  j["input"] = input;
  j["warnings"] = warnings;
  const auto path = writer.root / "run.json";
  write_text_file(path, j.dump(2) + "\n");
  writer.bundle.run_metadata = path;
}

inline std::string html_table(const std::vector<std::string>& header,
                              const std::vector<std::vector<std::string>>& rows) {
  std::string out = "<table>\n<tr>";
  for (const auto& h : header) out += "<th>" + xml_escape(h) + "</th>";
  out += "</tr>\n";
  for (const auto& row : rows) {
    out += "<tr>";
    for (const auto& cell : row) out += "<td>" + xml_escape(cell) + "</td>";
    out += "</tr>\n";
  }
  out += "</table>\n";
  return out;
}

inline std::string md_table(const std::vector<std::string>& header,
                            const std::vector<std::vector<std::string>>& rows) {
  std::string out = "|";
  for (const auto& h : header) out += " " + h + " |";
  out += "\n|";
  for (std::size_t i = 0; i < header.size(); ++i) out += " --- |";
  out += "\n";
  for (const auto& row : rows) {
    out += "|";
    for (const auto& cell : row) out += " " + cell + " |";
    out += "\n";
  }
  return out;
}

inline std::vector<std::vector<std::string>> ranking_rows(std::span<const Ranking> rankings) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : rankings)
    for (std::size_t pos : display_order(r))
      rows.push_back({r.task, r.algorithms[pos], format_int(r.ranks[pos]),
                      format_double(r.aggregates[pos]),
                      r.task == "consensus" ? "consensus" : r.method.name()});
  return rows;
}

inline void write_index(BundleWriter& writer, const std::string& report_title,
                        const ChallengeData& data, const ReportConfig& cfg,
                        std::span<const Ranking> table_rankings,
                        const std::vector<Section>& sections,
                        const std::vector<std::string>& warnings) {
  const auto config = config_json(data, cfg);
  const std::vector<std::string> table_header = {"task", "algorithm", "rank", "aggregate",
                                                 "method"};
  const auto rows = ranking_rows(table_rankings);

  if (cfg.format == ReportFormat::Html) {
    std::string html;
    html += "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\"/>\n";
    html += "<title>" + xml_escape(report_title) + "</title>\n";
    html += "<style>\n";
    html += "body{font-family:Helvetica,Arial,sans-serif;max-width:1200px;margin:24px auto;"
            "padding:0 16px;color:#222}\n";
    html += "table{border-collapse:collapse;margin:12px 0}\n";
    html += "th,td{border:1px solid #ccc;padding:3px 10px;font-size:13px}\n";
    html += "th{background:#f0f0f0}\n";
    html += "pre{background:#f7f7f7;padding:8px;font-size:12px}\n";
    html += ".warning{color:#8a5a00;background:#fff6e0;padding:6px 10px;margin:4px 0}\n";
    html += "</style>\n</head>\n<body>\n";
    html += "<h1>" + xml_escape(report_title) + "</h1>\n";

    html += "<h2>Configuration</h2>\n<pre>" + xml_escape(config.dump(2)) + "</pre>\n";

    html += "<h2>Warnings</h2>\n";
    if (warnings.empty()) {
      html += "<p>none</p>\n";
    } else {
      for (const auto& w : warnings) html += "<div class=\"warning\">" + xml_escape(w) + "</div>\n";
    }

    html += "<h2>Rankings</h2>\n" + html_table(table_header, rows);

    for (const auto& section : sections) {
      html += "<h2>" + xml_escape(section.title) + "</h2>\n";
      if (!section.caption.empty()) html += "<p>" + xml_escape(section.caption) + "</p>\n";
      html += "<!-- figure: figures/" + section.id + ".svg -->\n";
      html += svg_for_embedding(section.svg);
    }

    html += "</body>\n</html>\n";
    const auto path = writer.root / "index.html";
    write_text_file(path, html);
    writer.bundle.index_file = path;
    return;
  }

  std::string md;
  md += "# " + report_title + "\n\n";
  md += "## Configuration\n\n```json\n" + config.dump(2) + "\n```\n\n";
  md += "## Warnings\n\n";
  if (warnings.empty()) md += "none\n\n";
  else
    for (const auto& w : warnings) md += "- " + w + "\n";
  md += "\n## Rankings\n\n" + md_table(table_header, rows) + "\n";
  for (const auto& section : sections) {
    md += "## " + section.title + "\n\n";
    if (!section.caption.empty()) md += section.caption + "\n\n";
    md += "![" + section.title + "](figures/" + section.id + ".svg)\n\n";
  }
  const auto path = writer.root / "report.md";
  write_text_file(path, md);
  writer.bundle.index_file = path;
}

inline std::vector<std::string> issue_warnings(const ChallengeData& data) {
  std::vector<std::string> warnings;
  for (const auto& issue : validate(data)) {
    switch (issue.kind) {
      case Issue::Kind::SmallSampleWarning:
        warnings.push_back("small sample: " + issue.message + " (task " + issue.task + ")");
        break;
      case Issue::Kind::NonFiniteValue:
        warnings.push_back("non-finite value: " + issue.message);
        break;
      case Issue::Kind::DifferingAlgorithmSets:
        warnings.push_back("differing algorithm sets: " + issue.message);
        break;
      case Issue::Kind::RangeViolation:
        warnings.push_back("range violation: " + issue.message);
        break;
    }
  }
  for (const auto& t : data.tasks)
    if (t.case_count() < 10)
      warnings.push_back("task '" + t.id + "' has fewer than 10 test cases; bootstrap "
                         "intervals may be unreliable");
  return warnings;
}

// Methods from the standard set that are computable on this data (a grid with
// rank-only placeholders cannot feed value-based schemes).
inline std::vector<RankingMethodSpec> feasible_methods(const ChallengeData& data,
                                                       std::size_t task,
                                                       std::vector<std::string>& warnings) {
  std::vector<RankingMethodSpec> out;
  for (const auto& spec : standard_method_set()) {
    try {
      compute_ranking(data, task, spec);
      out.push_back(spec);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IncompleteGrid) throw;
      warnings.push_back("method " + spec.name() + " skipped on task '" +
                         data.tasks[task].id + "': " + e.what());
    }
  }
  return out;
}

}  // namespace detail

// Full single-task report: dot/box plot, podium plot, ranking heatmap,
// ranking-method line plot, bootstrap blob plot, bootstrap-tau violin plot
// and the significance map, ordered by the configured ranking method.
inline ReportBundle render_single_task_report(const ChallengeData& data,
                                              const ReportConfig& cfg) {
  if (data.task_count() != 1)
    fail(ErrorCode::InvalidArgument, "single-task report needs exactly 1 task, got " +
                                         std::to_string(data.task_count()));
  if (cfg.output_dir.empty()) fail(ErrorCode::InvalidArgument, "output directory not set");
  if (data.has_rank_worst() && cfg.method.scheme != RankScheme::RankThenAggregate)
    fail(ErrorCode::IncompleteGrid,
         "the worst-rank missing policy leaves cells without metric values; choose a "
         "rank-then-* ranking method or a value-imputing policy");

  detail::BundleWriter writer(cfg.output_dir);
  std::vector<std::string> warnings = detail::issue_warnings(data);

  const Ranking full_ranking = compute_ranking(data, 0, cfg.method);
  const std::size_t p = data.algorithm_count();

  ChallengeData fig_data = data;
  const bool restricted = cfg.top_k && static_cast<std::size_t>(*cfg.top_k) < p;
  if (restricted) {
    if (*cfg.top_k < 1) fail(ErrorCode::InvalidArgument, "top-k must be >= 1");
    auto order = display_order(full_ranking);
    order.resize(static_cast<std::size_t>(*cfg.top_k));
    fig_data = restrict_algorithms(data, order);
    warnings.push_back("figures restricted to the top " + std::to_string(*cfg.top_k) +
                       " algorithms; tables cover all " + std::to_string(p));
  }
  const Ranking fig_ranking = compute_ranking(fig_data, 0, cfg.method);
  const std::string task_id = sanitize_id(data.tasks[0].id);

  std::vector<detail::Section> sections;
  auto add_section = [&](const std::string& stem, const std::string& title,
                         const std::string& caption, const Scene& scene) {
    sections.push_back({stem + "_" + task_id, title, caption, to_svg(scene)});
    writer.add_figure(sections.back());
  };

  add_section("dotbox", "Assessment data: dot and box plot",
              "Boxplots of the metric values per algorithm with one jittered dot per test case.",
              dot_box_plot(fig_data, 0, fig_ranking));
  add_section("podium", "Assessment data: podium plot",
              "Per test case, algorithms are placed on podium positions by their case rank; "
              "dots of one test case are connected. Bars show how often each algorithm "
              "attains each podium place.",
              podium_plot(fig_data, 0, fig_ranking, cfg.bootstrap.seed));
  add_section("rankheat", "Assessment data: ranking heatmap",
              "Cell (i, A) counts the test cases in which algorithm A achieved rank i.",
              ranking_heatmap(fig_data, 0, fig_ranking));

  const auto methods = detail::feasible_methods(fig_data, 0, warnings);
  if (!methods.empty())
    add_section("methods", "Ranking robustness across methods",
                "One line per algorithm; a horizontal line means the rank does not depend on "
                "the ranking method.",
                line_plot_methods(fig_data, 0, methods));

  const RankDistribution dist =
      bootstrap_rank_distribution(fig_data, 0, cfg.method, cfg.bootstrap, cfg.threads);
  add_section("blob_bootstrap", "Ranking stability: bootstrap blob plot",
              "Blob area is proportional to the frequency of each rank across " +
                  std::to_string(cfg.bootstrap.samples) +
                  " bootstrap samples; crosses mark median ranks, lines the 95% bootstrap "
                  "intervals.",
              blob_plot(dist, fig_ranking,
                        "Bootstrap ranks: " + data.tasks[0].id + " (" + cfg.method.name() + ")"));

  std::optional<TauSamples> tau;
  try {
    tau = bootstrap_tau_samples(fig_data, 0, cfg.method, cfg.bootstrap, cfg.threads);
    const TauSamples samples[] = {*tau};
    add_section("violin", "Ranking stability: bootstrap tau violin plot",
                "Kendall's tau between the full-data ranking and each bootstrap ranking.",
                violin_plot(samples));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateInput) throw;
    warnings.push_back(std::string("violin plot skipped: ") + e.what());
  }

  std::optional<SignificanceMatrix> sm;
  if (!fig_data.has_rank_worst()) {
    sm = significance_matrix(fig_data, 0, cfg.alpha, cfg.adjustment);
    add_section("significance", "Ranking stability: significance map",
                "Yellow cells: the column algorithm is significantly superior to the row "
                "algorithm (one-sided Wilcoxon signed rank, alpha=" + format_double(cfg.alpha) +
                    ", adjustment=" + adjustment_name(cfg.adjustment) + ").",
                significance_map_plot(*sm, fig_ranking));
  } else {
    warnings.push_back("significance map skipped: grid contains rank-only placeholders");
  }

  // Machine-readable results. Tables always cover the full algorithm set.
  std::vector<Ranking> table_rankings = {full_ranking};
  writer.add_data("rankings.csv",
                  [&](std::ostream& out) { write_rankings_csv(out, table_rankings); });
  {
    std::vector<std::string> tmp_warnings;
    const auto full_methods = detail::feasible_methods(data, 0, tmp_warnings);
    std::vector<Ranking> per_method;
    for (const auto& spec : full_methods) per_method.push_back(compute_ranking(data, 0, spec));
    writer.add_data("method_rankings.csv",
                    [&](std::ostream& out) { write_rankings_csv(out, per_method); });
  }
  writer.add_data("rank_distribution_" + task_id + ".csv", [&](std::ostream& out) {
    write_rank_distribution_csv(out, dist, data.tasks[0].id);
  });
  if (tau) {
    const TauSamples samples[] = {*tau};
    writer.add_data("tau_samples.csv",
                    [&](std::ostream& out) { write_tau_samples_csv(out, samples); });
  }
  if (sm)
    writer.add_data("significance_" + task_id + ".csv",
                    [&](std::ostream& out) { write_significance_csv(out, *sm); });
  if (restricted) {
    std::vector<Ranking> fig_rankings = {fig_ranking};
    writer.add_data("figure_rankings.csv",
                    [&](std::ostream& out) { write_rankings_csv(out, fig_rankings); });
  }
  writer.add_data("normalized_data.csv",
                  [&](std::ostream& out) { write_assessment_csv(out, data); });

  detail::write_run_metadata(writer, data, cfg, warnings);
  detail::write_index(writer, "Challenge analysis report: " + data.tasks[0].id, data, cfg,
                      table_rankings, sections, warnings);
  writer.bundle.warnings = warnings;
  return writer.bundle;
}

// Full multi-task report: consensus ranking, rank distributions across tasks,
// task-stratified and algorithm-stratified bootstrap blob panels, per-task
// violin plots sorted by median tau, and the task-similarity dendrogram and
// network graph. Algorithms are ordered by the consensus ranking throughout.
inline ReportBundle render_multi_task_report(const ChallengeData& data,
                                             const ReportConfig& cfg) {
  if (data.task_count() < 2)
    fail(ErrorCode::TooFewTasks,
         "multi-task report needs at least 2 tasks; use the single-task report");
  if (cfg.output_dir.empty()) fail(ErrorCode::InvalidArgument, "output directory not set");
  if (data.has_rank_worst() && cfg.method.scheme != RankScheme::RankThenAggregate)
    fail(ErrorCode::IncompleteGrid,
         "the worst-rank missing policy leaves cells without metric values; choose a "
         "rank-then-* ranking method or a value-imputing policy");

  detail::BundleWriter writer(cfg.output_dir);
  std::vector<std::string> warnings = detail::issue_warnings(data);

  const std::vector<Ranking> full_rankings = per_task_rankings(data, cfg.method);
  const Ranking full_consensus = consensus_ranking(full_rankings, cfg.weights);
  const std::size_t p = data.algorithm_count();

  ChallengeData fig_data = data;
  const bool restricted = cfg.top_k && static_cast<std::size_t>(*cfg.top_k) < p;
  if (restricted) {
    if (*cfg.top_k < 1) fail(ErrorCode::InvalidArgument, "top-k must be >= 1");
    auto order = display_order(full_consensus);
    order.resize(static_cast<std::size_t>(*cfg.top_k));
    fig_data = restrict_algorithms(data, order);
    warnings.push_back("figures restricted to the top " + std::to_string(*cfg.top_k) +
                       " algorithms; tables cover all " + std::to_string(p));
  }
  const std::vector<Ranking> fig_rankings = per_task_rankings(fig_data, cfg.method);
  const Ranking fig_consensus = consensus_ranking(fig_rankings, cfg.weights);

  std::vector<detail::Section> sections;
  auto add_section = [&](const std::string& id, const std::string& title,
                         const std::string& caption, const Scene& scene) {
    sections.push_back({id, title, caption, to_svg(scene)});
    writer.add_figure(sections.back());
  };

  const RankDistribution across = cross_task_rank_distribution(fig_rankings);
  add_section("blob_tasks_all", "Ranking variability across tasks",
              "Blob area is proportional to the frequency of each rank across tasks; lines "
              "span the attained rank range.",
              blob_plot(across, fig_consensus, "Ranks across tasks (" + cfg.method.name() + ")"));

  const PerAlgorithmBootstrap pab =
      per_algorithm_task_bootstrap(fig_data, cfg.method, cfg.bootstrap, cfg.threads);

  for (std::size_t pos : display_order(fig_consensus)) {
    const std::string& algo = fig_consensus.algorithms[pos];
    const RankDistribution per_algo = pab.for_algorithm(algo);
    add_section("blob_algorithm_" + sanitize_id(algo),
                "Bootstrap ranks per task: " + algo,
                "Rank distribution of " + algo + " across bootstrap samples, per task.",
                blob_plot(per_algo, identity_order(per_algo.columns.size()),
                          "Bootstrap ranks: " + algo, "task"));
  }

  for (std::size_t t = 0; t < fig_data.task_count(); ++t)
    add_section("blob_bootstrap_" + sanitize_id(fig_data.tasks[t].id),
                "Bootstrap ranks for task " + fig_data.tasks[t].id,
                "Rank distribution across bootstrap samples, algorithms in consensus order.",
                blob_plot(pab.per_task[t], fig_consensus,
                          "Bootstrap ranks: " + fig_data.tasks[t].id));

  std::vector<TauSamples> tau_samples;
  for (std::size_t t = 0; t < fig_data.task_count(); ++t) {
    try {
      tau_samples.push_back(
          bootstrap_tau_samples(fig_data, t, cfg.method, cfg.bootstrap, cfg.threads));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateInput) throw;
      warnings.push_back("violin plot skips task '" + fig_data.tasks[t].id + "': " + e.what());
    }
  }
  if (!tau_samples.empty())
    add_section("violin_all", "Ranking stability per task",
                "Bootstrap-tau distributions per task, arranged by median Kendall's tau.",
                violin_plot(tau_samples));

  const TaskDistanceMatrix dm = task_distance_matrix(fig_rankings,
                                                     RankDistanceMeasure::Footrule);
  const Dendrogram dendro = hierarchical_cluster(dm);
  add_section("dendrogram_all", "Task similarity: dendrogram",
              "Complete-linkage clustering of tasks by the footrule distance between their "
              "rankings.",
              dendrogram_plot(dendro));
  const NetworkLayout layout = network_layout(dm, 0.05, task_winners(fig_rankings));
  add_section("network_all", "Task similarity: network graph",
              "Edge lengths grow exponentially in the rank distance; nodes are colored by the "
              "task's unique winner (uncolored when rank 1 is shared).",
              network_plot(layout, fig_data.algorithms));

  // Machine-readable results.
  std::vector<Ranking> table_rankings = full_rankings;
  table_rankings.push_back(full_consensus);
  writer.add_data("rankings.csv",
                  [&](std::ostream& out) { write_rankings_csv(out, table_rankings); });
  writer.add_data("rank_distribution_across_tasks.csv", [&](std::ostream& out) {
    write_rank_distribution_csv(out, across, "all");
  });
  for (std::size_t t = 0; t < fig_data.task_count(); ++t)
    writer.add_data("rank_distribution_" + sanitize_id(fig_data.tasks[t].id) + ".csv",
                    [&](std::ostream& out) {
                      write_rank_distribution_csv(out, pab.per_task[t], fig_data.tasks[t].id);
                    });
  if (!tau_samples.empty())
    writer.add_data("tau_samples.csv",
                    [&](std::ostream& out) { write_tau_samples_csv(out, tau_samples); });
  writer.add_data("task_distances.csv",
                  [&](std::ostream& out) { write_distance_csv(out, dm); });
  writer.add_data("network_positions.csv",
                  [&](std::ostream& out) { write_positions_csv(out, layout); });
  writer.add_data("dendrogram.newick",
                  [&](std::ostream& out) { out << dendro.to_newick() << "\n"; });
  if (restricted) {
    std::vector<Ranking> fr = fig_rankings;
    fr.push_back(fig_consensus);
    writer.add_data("figure_rankings.csv",
                    [&](std::ostream& out) { write_rankings_csv(out, fr); });
  }
  writer.add_data("normalized_data.csv",
                  [&](std::ostream& out) { write_assessment_csv(out, data); });

  detail::write_run_metadata(writer, data, cfg, warnings);
  detail::write_index(writer, "Multi-task challenge analysis report", data, cfg,
                      table_rankings, sections, warnings);
  writer.bundle.warnings = warnings;
  return writer.bundle;
}

}  // namespace rankbench
