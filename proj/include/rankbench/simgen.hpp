#pragma once
// Synthetic challenge generators used for demos, tests and acceptance runs.
//   ideal  - algorithm A_i draws its cases uniformly from the interval
//            [1 - 0.1*i, 1 - 0.1*(i-1)); disjoint intervals make the true
//            ordering unambiguous.
//   random - n*p draws from Normal(1.5, 1) pushed through the logistic
//            function, dealt round-robin to the algorithms: no systematic
//            difference between algorithms exists.

#include <cmath>
#include <cstdint>
#include <string>

#include "rankbench/assessment_data.hpp"
#include "rankbench/error.hpp"
#include "rankbench/rng.hpp"

namespace rankbench {

struct SimSpec {
  enum class Kind { Ideal, Random };
  Kind kind = Kind::Ideal;
  int cases = 50;       // n
  int algorithms = 5;   // p
  std::uint64_t seed = 0;
  std::string task_id = "T1";
};

namespace detail {

inline ChallengeData empty_challenge(const SimSpec& spec) {
  if (spec.cases < 1) fail(ErrorCode::InvalidArgument, "need at least 1 case");
  if (spec.algorithms < 1) fail(ErrorCode::InvalidArgument, "need at least 1 algorithm");
  ChallengeData data;
  data.direction = Direction::LargerBetter;
  for (int a = 1; a <= spec.algorithms; ++a) data.algorithms.push_back("A" + std::to_string(a));
  TaskTable table;
  table.id = spec.task_id;
  for (int k = 1; k <= spec.cases; ++k) table.cases.push_back("case_" + std::to_string(k));
  table.cells.assign(static_cast<std::size_t>(spec.cases) *
                         static_cast<std::size_t>(spec.algorithms),
                     Cell{});
  table.algo_observed.assign(static_cast<std::size_t>(spec.algorithms), 1);
  data.tasks.push_back(std::move(table));
  return data;
}

}  // namespace detail

inline ChallengeData generate_ideal(const SimSpec& spec) {
  if (spec.kind != SimSpec::Kind::Ideal) fail(ErrorCode::InvalidArgument, "spec kind is not ideal");
  if (spec.algorithms > 9)
    fail(ErrorCode::TooManyAlgorithms,
         "disjoint 0.1-wide intervals support at most 9 algorithms");
  ChallengeData data = detail::empty_challenge(spec);
  const std::size_t p = data.algorithms.size();
  for (std::size_t a = 0; a < p; ++a) {
    CounterRng rng(spec.seed, a);
    const double lo = 1.0 - 0.1 * static_cast<double>(a + 1);
    for (std::size_t k = 0; k < data.tasks[0].case_count(); ++k) {
      Cell& cell = data.tasks[0].at(k, a, p);
      cell.value = lo + 0.1 * rng.next_unit();
      cell.state = CellState::Observed;
    }
  }
  return data;
}

inline ChallengeData generate_random(const SimSpec& spec) {
  if (spec.kind != SimSpec::Kind::Random)
    fail(ErrorCode::InvalidArgument, "spec kind is not random");
  ChallengeData data = detail::empty_challenge(spec);
  const std::size_t p = data.algorithms.size();
  const std::size_t n = data.tasks[0].case_count();
  CounterRng rng(spec.seed, 0);
  for (std::size_t i = 0; i < n * p; ++i) {
    const double z = rng.next_normal(1.5, 1.0);
    const double v = 1.0 / (1.0 + std::exp(-z));
    Cell& cell = data.tasks[0].at(i / p, i % p, p);
    cell.value = v;
    cell.state = CellState::Observed;
  }
  return data;
}

inline ChallengeData generate(const SimSpec& spec) {
  return spec.kind == SimSpec::Kind::Ideal ? generate_ideal(spec) : generate_random(spec);
}

}  // namespace rankbench
