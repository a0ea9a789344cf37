#pragma once
// Challenge assessment data: a complete (task x case x algorithm) grid of
// metric values, parsed from CSV, with an explicit missing-value policy.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankbench/csv.hpp"
#include "rankbench/error.hpp"
#include "rankbench/text.hpp"

namespace rankbench {

enum class Direction { LargerBetter, SmallerBetter };

// Cell life cycle: parsing yields Observed or Missing; applying a missing
// policy turns Missing into Imputed (value filled in) or RankWorst (no value,
// but per-case rankings place the algorithm last).
enum class CellState : std::uint8_t { Observed, Missing, Imputed, RankWorst };

struct Cell {
  double value = std::numeric_limits<double>::quiet_NaN();
  CellState state = CellState::Missing;

  bool has_value() const { return state == CellState::Observed || state == CellState::Imputed; }
};

struct TaskTable {
  std::string id;
  std::vector<std::string> cases;     // order of first appearance
  std::vector<Cell> cells;            // row-major: cases.size() x algorithm count
  std::vector<std::uint8_t> algo_observed;  // algorithm appeared in >=1 row of this task

  std::size_t case_count() const { return cases.size(); }

  Cell& at(std::size_t case_idx, std::size_t algo_idx, std::size_t algo_count) {
    return cells[case_idx * algo_count + algo_idx];
  }
  const Cell& at(std::size_t case_idx, std::size_t algo_idx, std::size_t algo_count) const {
    return cells[case_idx * algo_count + algo_idx];
  }
};

struct ChallengeData {
  std::vector<std::string> algorithms;  // order of first appearance, global
  std::vector<TaskTable> tasks;
  Direction direction = Direction::LargerBetter;

  std::size_t algorithm_count() const { return algorithms.size(); }
  std::size_t task_count() const { return tasks.size(); }

  const Cell& cell(std::size_t task, std::size_t case_idx, std::size_t algo) const {
    return tasks[task].at(case_idx, algo, algorithms.size());
  }
  Cell& cell(std::size_t task, std::size_t case_idx, std::size_t algo) {
    return tasks[task].at(case_idx, algo, algorithms.size());
  }

  bool has_missing() const {
    for (const auto& t : tasks)
      for (const auto& c : t.cells)
        if (c.state == CellState::Missing) return true;
    return false;
  }

  bool has_rank_worst() const {
    for (const auto& t : tasks)
      for (const auto& c : t.cells)
        if (c.state == CellState::RankWorst) return true;
    return false;
  }

  std::size_t task_index(std::string_view id) const {
    for (std::size_t i = 0; i < tasks.size(); ++i)
      if (tasks[i].id == id) return i;
    fail(ErrorCode::UnknownTask, "no task named '" + std::string(id) + "'");
  }

  std::size_t algorithm_index(std::string_view id) const {
    for (std::size_t i = 0; i < algorithms.size(); ++i)
      if (algorithms[i] == id) return i;
    fail(ErrorCode::KeyMismatch, "no algorithm named '" + std::string(id) + "'");
  }
};

struct ColumnMapping {
  std::string task_col = "task";
  std::string case_col = "case";
  std::string algorithm_col = "algorithm";
  std::string value_col = "value";
};

struct MissingPolicy {
  enum class Mode { WorstValue, WorstRank, Error };
  Mode mode = Mode::Error;
  double value = 0.0;  // WorstValue only

  static MissingPolicy worst_value(double v) {
    if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "worst value must be finite");
    return {Mode::WorstValue, v};
  }
  static MissingPolicy worst_rank() { return {Mode::WorstRank, 0.0}; }
  static MissingPolicy error() { return {Mode::Error, 0.0}; }
};

struct Issue {
  enum class Kind { NonFiniteValue, DifferingAlgorithmSets, SmallSampleWarning, RangeViolation };
  Kind kind;
  std::string task;
  std::string message;
};

namespace detail {

inline std::optional<double> parse_value_cell(std::string_view raw) {
  // Trim ASCII spaces; `NA` and empty mean missing.
  std::size_t b = 0, e = raw.size();
  while (b < e && (raw[b] == ' ' || raw[b] == '\t')) ++b;
  while (e > b && (raw[e - 1] == ' ' || raw[e - 1] == '\t')) --e;
  std::string_view s = raw.substr(b, e - b);
  if (s.empty() || s == "NA") return std::nullopt;
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    fail(ErrorCode::NonNumericValue, "cannot parse value '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

// Reads challenge results from CSV. The grid covers the Cartesian product of
// the cases and algorithms seen anywhere in the file (per task for cases);
// rows that never appear become Missing cells. First appearance fixes the
// task, case and algorithm orderings.
inline ChallengeData parse_assessment_csv(std::istream& in,
                                          const ColumnMapping& mapping = {},
                                          Direction direction = Direction::LargerBetter) {
  {
    const std::string* cols[4] = {&mapping.task_col, &mapping.case_col,
                                  &mapping.algorithm_col, &mapping.value_col};
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (*cols[i] == *cols[j])
          fail(ErrorCode::InvalidArgument, "column mapping names must be distinct");
  }

  auto rows = csv::parse(in);
  if (rows.empty()) fail(ErrorCode::EmptyInput, "no CSV content");

  const auto& header = rows.front();
  auto find_col = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    fail(ErrorCode::UnknownColumn, "column '" + name + "' not in header");
  };
  const std::size_t task_c = find_col(mapping.task_col);
  const std::size_t case_c = find_col(mapping.case_col);
  const std::size_t algo_c = find_col(mapping.algorithm_col);
  const std::size_t value_c = find_col(mapping.value_col);
  const std::size_t arity = header.size();

  struct RawRow {
    std::size_t task, kase, algo;
    std::optional<double> value;
  };
  std::vector<RawRow> raw;
  raw.reserve(rows.size() - 1);

  std::vector<std::string> task_ids, algo_ids;
  std::map<std::string, std::size_t> task_idx, algo_idx;
  std::vector<std::vector<std::string>> case_ids;          // per task
  std::vector<std::map<std::string, std::size_t>> case_idx;  // per task

  auto intern = [](std::vector<std::string>& ids, std::map<std::string, std::size_t>& index,
                   const std::string& key) {
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    const std::size_t i = ids.size();
    ids.push_back(key);
    index.emplace(key, i);
    return i;
  };

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() == 1 && row[0].empty()) continue;  // tolerate blank lines
    if (row.size() != arity)
      fail(ErrorCode::MalformedCsv, "row " + std::to_string(r + 1) + " has " +
                                        std::to_string(row.size()) + " fields, expected " +
                                        std::to_string(arity));
    const std::size_t t = intern(task_ids, task_idx, row[task_c]);
    if (case_ids.size() <= t) {
      case_ids.resize(t + 1);
      case_idx.resize(t + 1);
    }
    const std::size_t k = intern(case_ids[t], case_idx[t], row[case_c]);
    const std::size_t a = intern(algo_ids, algo_idx, row[algo_c]);
    raw.push_back({t, k, a, detail::parse_value_cell(row[value_c])});
  }

  if (raw.empty()) fail(ErrorCode::EmptyInput, "CSV has a header but no data rows");
  if (algo_ids.size() < 2)
    fail(ErrorCode::InvalidArgument, "need at least 2 algorithms, got " +
                                         std::to_string(algo_ids.size()));

  ChallengeData data;
  data.direction = direction;
  data.algorithms = algo_ids;
  data.tasks.resize(task_ids.size());
  const std::size_t p = algo_ids.size();
  for (std::size_t t = 0; t < task_ids.size(); ++t) {
    auto& table = data.tasks[t];
    table.id = task_ids[t];
    table.cases = case_ids[t];
    table.cells.assign(table.cases.size() * p, Cell{});
    table.algo_observed.assign(p, 0);
  }

  std::vector<std::vector<std::uint8_t>> seen(data.tasks.size());
  for (std::size_t t = 0; t < data.tasks.size(); ++t)
    seen[t].assign(data.tasks[t].case_count() * p, 0);

  for (const auto& rr : raw) {
    auto& table = data.tasks[rr.task];
    std::uint8_t& mark = seen[rr.task][rr.kase * p + rr.algo];
    if (mark)
      fail(ErrorCode::DuplicateCell, "duplicate row for (" + table.id + ", " +
                                         table.cases[rr.kase] + ", " + algo_ids[rr.algo] + ")");
    mark = 1;
    table.algo_observed[rr.algo] = 1;
    if (rr.value) {
      Cell& cell = table.at(rr.kase, rr.algo, p);
      cell.value = *rr.value;
      cell.state = CellState::Observed;
    }
  }
  return data;
}

// Resolves Missing cells according to the policy. Idempotent.
inline ChallengeData apply_missing_policy(ChallengeData data, const MissingPolicy& policy) {
  switch (policy.mode) {
    case MissingPolicy::Mode::WorstValue:
      if (!std::isfinite(policy.value))
        fail(ErrorCode::InvalidArgument, "worst value must be finite");
      for (auto& table : data.tasks)
        for (auto& cell : table.cells)
          if (cell.state == CellState::Missing) {
            cell.value = policy.value;
            cell.state = CellState::Imputed;
          }
      break;
    case MissingPolicy::Mode::WorstRank:
      for (auto& table : data.tasks)
        for (auto& cell : table.cells)
          if (cell.state == CellState::Missing) {
            cell.value = std::numeric_limits<double>::quiet_NaN();
            cell.state = CellState::RankWorst;
          }
      break;
    case MissingPolicy::Mode::Error:
      for (const auto& table : data.tasks)
        for (std::size_t k = 0; k < table.case_count(); ++k)
          for (std::size_t a = 0; a < data.algorithms.size(); ++a)
            if (table.at(k, a, data.algorithms.size()).state == CellState::Missing)
              fail(ErrorCode::MissingPresent, "missing value for (" + table.id + ", " +
                                                  table.cases[k] + ", " + data.algorithms[a] +
                                                  ")");
      break;
  }
  return data;
}

// Diagnostic checks; never throws.
inline std::vector<Issue> validate(
    const ChallengeData& data,
    std::optional<std::pair<double, double>> declared_range = std::nullopt) {
  std::vector<Issue> issues;
  const std::size_t p = data.algorithms.size();

  for (const auto& table : data.tasks) {
    for (std::size_t k = 0; k < table.case_count(); ++k)
      for (std::size_t a = 0; a < p; ++a) {
        const Cell& c = table.at(k, a, p);
        if (!c.has_value()) continue;
        if (!std::isfinite(c.value)) {
          issues.push_back({Issue::Kind::NonFiniteValue, table.id,
                            "non-finite value for (" + table.cases[k] + ", " +
                                data.algorithms[a] + ")"});
        } else if (declared_range &&
                   (c.value < declared_range->first || c.value > declared_range->second)) {
          issues.push_back({Issue::Kind::RangeViolation, table.id,
                            "value " + format_double(c.value) + " outside [" +
                                format_double(declared_range->first) + ", " +
                                format_double(declared_range->second) + "] for (" +
                                table.cases[k] + ", " + data.algorithms[a] + ")"});
        }
      }
    if (table.case_count() < 5)
      issues.push_back({Issue::Kind::SmallSampleWarning, table.id,
                        "task has only " + std::to_string(table.case_count()) + " test cases"});
  }

  if (data.tasks.size() > 1) {
    const auto& ref = data.tasks.front().algo_observed;
    for (std::size_t t = 1; t < data.tasks.size(); ++t)
      if (data.tasks[t].algo_observed != ref) {
        issues.push_back({Issue::Kind::DifferingAlgorithmSets, data.tasks[t].id,
                          "task '" + data.tasks[t].id +
                              "' has a different observed algorithm set than '" +
                              data.tasks.front().id + "'"});
      }
  }
  return issues;
}

// Restricts the data to algorithms observed in every task.
inline ChallengeData intersect_algorithms(const ChallengeData& data) {
  const std::size_t p = data.algorithms.size();
  std::vector<std::size_t> keep;
  for (std::size_t a = 0; a < p; ++a) {
    bool in_all = true;
    for (const auto& table : data.tasks)
      if (!table.algo_observed[a]) {
        in_all = false;
        break;
      }
    if (in_all) keep.push_back(a);
  }
  if (keep.size() < 2)
    fail(ErrorCode::AlgorithmSetMismatch,
         "fewer than 2 algorithms are common to all tasks");

  ChallengeData out;
  out.direction = data.direction;
  for (std::size_t a : keep) out.algorithms.push_back(data.algorithms[a]);
  out.tasks.reserve(data.tasks.size());
  for (const auto& table : data.tasks) {
    TaskTable nt;
    nt.id = table.id;
    nt.cases = table.cases;
    nt.cells.reserve(table.case_count() * keep.size());
    for (std::size_t k = 0; k < table.case_count(); ++k)
      for (std::size_t a : keep) nt.cells.push_back(table.at(k, a, p));
    nt.algo_observed.assign(keep.size(), 1);
    out.tasks.push_back(std::move(nt));
  }
  return out;
}

// Restricts the data to an explicit algorithm subset (display order preserved).
inline ChallengeData restrict_algorithms(const ChallengeData& data,
                                         std::span<const std::size_t> keep) {
  if (keep.empty()) fail(ErrorCode::EmptyInput, "empty algorithm subset");
  const std::size_t p = data.algorithms.size();
  ChallengeData out;
  out.direction = data.direction;
  for (std::size_t a : keep) out.algorithms.push_back(data.algorithms.at(a));
  for (const auto& table : data.tasks) {
    TaskTable nt;
    nt.id = table.id;
    nt.cases = table.cases;
    for (std::size_t k = 0; k < table.case_count(); ++k)
      for (std::size_t a : keep) nt.cells.push_back(table.at(k, a, p));
    for (std::size_t a : keep) nt.algo_observed.push_back(table.algo_observed[a]);
    out.tasks.push_back(std::move(nt));
  }
  return out;
}

// Copy of a single task, keeping the global algorithm list.
inline ChallengeData single_task_view(const ChallengeData& data, std::size_t task) {
  ChallengeData out;
  out.direction = data.direction;
  out.algorithms = data.algorithms;
  out.tasks.push_back(data.tasks.at(task));
  return out;
}

// Normalized re-export: task,case,algorithm,value,imputed. Cells without a
// value (Missing or RankWorst) are written as NA.
inline void write_assessment_csv(std::ostream& out, const ChallengeData& data) {
  csv::write_row(out, std::vector<std::string>{"task", "case", "algorithm", "value", "imputed"});
  const std::size_t p = data.algorithms.size();
  for (const auto& table : data.tasks)
    for (std::size_t k = 0; k < table.case_count(); ++k)
      for (std::size_t a = 0; a < p; ++a) {
        const Cell& c = table.at(k, a, p);
        csv::write_row(out, std::vector<std::string>{
                                table.id, table.cases[k], data.algorithms[a],
                                c.has_value() ? format_double(c.value) : "NA",
                                c.state == CellState::Imputed ? "true" : "false"});
      }
}

}  // namespace rankbench
