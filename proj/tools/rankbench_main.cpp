// rankbench command line tool.
//
//   rankbench analyze  --input results.csv --output report/ [options]
//   rankbench rank     --input results.csv [options]          (CSV to stdout)
//   rankbench simulate {ideal|random} [options]               (CSV out)
//
// Exit codes: 0 ok, 1 usage error, 2 data error, 3 internal error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rankbench/rankbench.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 42;

struct CommonOptions {
  std::string input;
  std::string columns = "task,case,algorithm,value";
  std::string method = "test-based";
  bool small_better = false;
  std::string na = "error";
  std::uint64_t seed = kDefaultSeed;
  double alpha = 0.05;
  std::string adjust = "holm";
  bool intersect = false;
};

rankbench::ColumnMapping parse_columns(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 4)
    throw CLI::ValidationError("--columns", "expected 4 comma-separated names");
  rankbench::ColumnMapping m;
  m.task_col = parts[0];
  m.case_col = parts[1];
  m.algorithm_col = parts[2];
  m.value_col = parts[3];
  return m;
}

rankbench::MissingPolicy parse_na(const std::string& spec) {
  if (spec == "error") return rankbench::MissingPolicy::error();
  if (spec == "worst-rank") return rankbench::MissingPolicy::worst_rank();
  if (spec.rfind("worst-value=", 0) == 0) {
    const std::string num = spec.substr(12);
    try {
      std::size_t used = 0;
      const double v = std::stod(num, &used);
      if (used != num.size()) throw std::invalid_argument(num);
      return rankbench::MissingPolicy::worst_value(v);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--na", "cannot parse worst value '" + num + "'");
    }
  }
  throw CLI::ValidationError("--na", "expected worst-value=X, worst-rank or error");
}

rankbench::RankingMethodSpec parse_method(const std::string& name, double alpha) {
  auto spec = rankbench::RankingMethodSpec::from_name(name);
  if (!spec) throw CLI::ValidationError("--method", "unknown method '" + name + "'");
  spec->alpha = alpha;
  return *spec;
}

std::map<std::string, double> parse_weights(const std::string& spec) {
  std::map<std::string, double> weights;
  if (spec.empty()) return weights;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--weights", "expected task=weight, got '" + item + "'");
    try {
      std::size_t used = 0;
      const double w = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
      weights[item.substr(0, eq)] = w;
    } catch (const std::exception&) {
      throw CLI::ValidationError("--weights", "cannot parse weight in '" + item + "'");
    }
  }
  return weights;
}

// Parse + missing policy + algorithm-set check, shared by analyze and rank.
rankbench::ChallengeData load_data(const CommonOptions& opt) {
  std::ifstream in(opt.input, std::ios::binary);
  if (!in)
    rankbench::fail(rankbench::ErrorCode::InvalidArgument,
                    "cannot open input file '" + opt.input + "'");
  const auto direction = opt.small_better ? rankbench::Direction::SmallerBetter
                                          : rankbench::Direction::LargerBetter;
  rankbench::ChallengeData data =
      rankbench::parse_assessment_csv(in, parse_columns(opt.columns), direction);

  bool differing_sets = false;
  for (const auto& issue : rankbench::validate(data))
    if (issue.kind == rankbench::Issue::Kind::DifferingAlgorithmSets) differing_sets = true;
  if (differing_sets) {
    if (!opt.intersect)
      rankbench::fail(rankbench::ErrorCode::AlgorithmSetMismatch,
                      "tasks in '" + opt.input +
                          "' cover different algorithm sets; rerun with "
                          "--intersect-algorithms to restrict to the common set");
    data = rankbench::intersect_algorithms(data);
  }
  return rankbench::apply_missing_policy(std::move(data), parse_na(opt.na));
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Benchmark challenge ranking analysis and visualization"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string output_dir;
  std::string weights_spec;
  std::string format = "html";
  std::string mode = "auto";
  int bootstrap_samples = 1000;
  int threads = 1;
  int top_k = 0;

  auto add_common = [&](CLI::App* cmd, bool needs_input) {
    auto* in = cmd->add_option("--input", opt.input, "Assessment data CSV");
    if (needs_input) in->required();
    cmd->add_option("--columns", opt.columns,
                    "Column names: task,case,algorithm,value");
    cmd->add_option("--method", opt.method,
                    "Ranking method: mean-then-rank|median-then-rank|rank-then-mean|"
                    "rank-then-median|test-based");
    cmd->add_flag("--small-better", opt.small_better,
                  "Smaller metric values are better");
    cmd->add_option("--na", opt.na, "Missing values: worst-value=X|worst-rank|error");
    cmd->add_option("--seed", opt.seed, "Random seed (fixed default, not time-derived)");
    cmd->add_option("--alpha", opt.alpha, "Significance level in (0,1)")
        ->check(CLI::Range(1e-12, 1.0 - 1e-12));
    cmd->add_option("--adjust", opt.adjust, "Multiple-testing adjustment: holm|none")
        ->check(CLI::IsMember({"holm", "none"}));
    cmd->add_flag("--intersect-algorithms", opt.intersect,
                  "Restrict tasks to the common algorithm set");
  };

  auto* analyze = app.add_subcommand("analyze", "Generate a full analysis report");
  add_common(analyze, true);
  analyze->add_option("--output", output_dir, "Output directory")->required();
  analyze->add_option("--bootstrap", bootstrap_samples, "Bootstrap sample count")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--weights", weights_spec, "Consensus weights: task=w,task=w,...");
  analyze->add_option("--top-k", top_k, "Restrict figures to the top K algorithms")
      ->check(CLI::PositiveNumber);
  analyze->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"html", "md"}));
  analyze->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  analyze->add_option("--mode", mode, "single|multi|auto")
      ->check(CLI::IsMember({"single", "multi", "auto"}));

  auto* rank = app.add_subcommand("rank", "Write rankings as CSV to stdout");
  add_common(rank, true);

  auto* simulate = app.add_subcommand("simulate", "Generate synthetic challenge data");
  std::string sim_kind;
  int sim_cases = 50;
  int sim_algorithms = 5;
  std::string sim_out;
  simulate->add_option("kind", sim_kind, "ideal|random")
      ->required()
      ->check(CLI::IsMember({"ideal", "random"}));
  simulate->add_option("--cases", sim_cases, "Test cases per task")->check(CLI::PositiveNumber);
  simulate->add_option("--algorithms", sim_algorithms, "Algorithm count")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", opt.seed, "Random seed");
  simulate->add_option("--out", sim_out, "Output CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }

  if (simulate->parsed()) {
    rankbench::SimSpec spec;
    spec.kind = sim_kind == "ideal" ? rankbench::SimSpec::Kind::Ideal
                                    : rankbench::SimSpec::Kind::Random;
    spec.cases = sim_cases;
    spec.algorithms = sim_algorithms;
    spec.seed = opt.seed;
    const rankbench::ChallengeData data = rankbench::generate(spec);
    if (sim_out.empty()) {
      rankbench::write_assessment_csv(std::cout, data);
    } else {
      std::ofstream out(sim_out, std::ios::binary);
      if (!out)
        rankbench::fail(rankbench::ErrorCode::InvalidArgument,
                        "cannot write output file '" + sim_out + "'");
      rankbench::write_assessment_csv(out, data);
    }
    return 0;
  }

  const auto adjustment =
      opt.adjust == "holm" ? rankbench::Adjustment::Holm : rankbench::Adjustment::None;
  const auto method = parse_method(opt.method, opt.alpha);

  if (rank->parsed()) {
    const rankbench::ChallengeData data = load_data(opt);
    std::vector<rankbench::Ranking> rankings = rankbench::per_task_rankings(data, method);
    if (data.task_count() > 1)
      rankings.push_back(rankbench::consensus_ranking(rankings));
    rankbench::write_rankings_csv(std::cout, rankings);
    return 0;
  }

  // analyze
  const rankbench::ChallengeData data = load_data(opt);
  rankbench::ReportConfig cfg;
  cfg.method = method;
  cfg.weights = parse_weights(weights_spec);
  cfg.bootstrap.samples = bootstrap_samples;
  cfg.bootstrap.seed = opt.seed;
  cfg.alpha = opt.alpha;
  cfg.adjustment = adjustment;
  cfg.format = format == "html" ? rankbench::ReportFormat::Html
                                : rankbench::ReportFormat::Markdown;
  cfg.output_dir = output_dir;
  if (top_k > 0) cfg.top_k = top_k;
  cfg.threads = threads;
  cfg.config_echo["input"] = std::filesystem::path(opt.input).filename().string();
  cfg.config_echo["na"] = opt.na;
  cfg.config_echo["columns"] = opt.columns;
  cfg.config_echo["mode"] = mode;

  const bool multi = mode == "multi" || (mode == "auto" && data.task_count() > 1);
  if (mode == "single" && data.task_count() > 1)
    rankbench::fail(rankbench::ErrorCode::InvalidArgument,
                    "--mode single but input has " + std::to_string(data.task_count()) +
                        " tasks");
  const rankbench::ReportBundle bundle = multi
                                             ? rankbench::render_multi_task_report(data, cfg)
                                             : rankbench::render_single_task_report(data, cfg);
  print_warnings(bundle.warnings);
  std::cout << "report written to " << bundle.index_file.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const rankbench::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
