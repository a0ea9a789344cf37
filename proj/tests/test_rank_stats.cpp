#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "rankbench/rank_stats.hpp"
#include "rankbench/rng.hpp"
#include "rankbench/simgen.hpp"

using namespace rankbench;

namespace {

RankList list_of(std::initializer_list<std::pair<const char*, double>> items) {
  RankList out;
  for (const auto& [k, v] : items) out[k] = v;
  return out;
}

std::vector<double> random_ranks(CounterRng& rng, std::size_t n, bool with_ties) {
  std::vector<double> v(n);
  if (with_ties) {
    for (auto& x : v)
      x = static_cast<double>(1 + rng.next_below(static_cast<std::uint32_t>(n)));
    return v;
  }
  for (auto& x : v) x = rng.next_unit();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[order[i]] = static_cast<double>(i + 1);
  return perm;
}

bool has_variation(const std::vector<double>& v) {
  for (double x : v)
    if (x != v.front()) return true;
  return false;
}

}  // namespace

TEST(KendallTau, BoundsOnIdenticalAndReversedLists) {
  const std::vector<double> a{1, 2, 3, 4, 5};
  const std::vector<double> rev{5, 4, 3, 2, 1};
  EXPECT_DOUBLE_EQ(kendall_tau(a, a), 1.0);
  EXPECT_DOUBLE_EQ(kendall_tau(a, rev), -1.0);
}

TEST(KendallTau, SingleSwapExample) {
  const std::vector<double> a{1, 2, 3, 4};
  const std::vector<double> b{1, 3, 2, 4};
  // 5 concordant pairs, 1 discordant
  EXPECT_NEAR(kendall_tau(a, b), 4.0 / 6.0, 1e-15);
}

TEST(KendallTau, AllTiedListIsDegenerate) {
  const std::vector<double> a{1, 1, 1};
  const std::vector<double> b{1, 2, 3};
  try {
    kendall_tau(a, b);
    FAIL() << "expected DegenerateInput";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateInput);
  }
}

TEST(KendallTau, KeyMismatchOnMaps) {
  const RankList a = list_of({{"A", 1.0}, {"B", 2.0}});
  const RankList b = list_of({{"A", 1.0}, {"C", 2.0}});
  try {
    kendall_tau(a, b);
    FAIL() << "expected KeyMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::KeyMismatch);
  }
}

TEST(KendallTau, SymmetryAndSharedPermutationInvariance) {
  CounterRng rng(7, 0);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 3 + rng.next_below(5);
    auto a = random_ranks(rng, n, trial % 2 == 0);
    auto b = random_ranks(rng, n, trial % 3 == 0);
    if (!has_variation(a) || !has_variation(b)) continue;
    const double t1 = kendall_tau(a, b);
    EXPECT_NEAR(t1, kendall_tau(b, a), 1e-15);

    // apply one shared random permutation to both lists
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i)
      std::swap(perm[i - 1], perm[rng.next_below(static_cast<std::uint32_t>(i))]);
    std::vector<double> pa(n), pb(n);
    for (std::size_t i = 0; i < n; ++i) {
      pa[i] = a[perm[i]];
      pb[i] = b[perm[i]];
    }
    EXPECT_NEAR(kendall_tau(pa, pb), t1, 1e-15);
  }
}

TEST(KendallTau, MatchesTieGroupFormula) {
  CounterRng rng(11, 0);
  int checked = 0;
  while (checked < 200) {
    const std::size_t n = 2 + rng.next_below(7);
    auto a = random_ranks(rng, n, rng.next_unit() < 0.5);
    auto b = random_ranks(rng, n, rng.next_unit() < 0.5);
    if (!has_variation(a) || !has_variation(b)) continue;
    EXPECT_NEAR(kendall_tau(a, b), oracles::kendall_tau_tie_groups(a, b), 1e-12);
    ++checked;
  }
}

TEST(RankDistances, FootruleAndSpearmanExamples) {
  const std::vector<double> id3{1, 2, 3};
  const std::vector<double> rev3{3, 2, 1};
  const std::vector<double> id2{1, 2};
  const std::vector<double> rev2{2, 1};
  EXPECT_DOUBLE_EQ(spearman_footrule(id3, id3), 0.0);
  EXPECT_DOUBLE_EQ(spearman_footrule(id3, rev3), 4.0);
  EXPECT_DOUBLE_EQ(spearman_footrule(id2, rev2), 2.0);
  EXPECT_DOUBLE_EQ(spearman_distance(id3, id3), 0.0);
  EXPECT_DOUBLE_EQ(spearman_distance(id3, rev3), 8.0);
  EXPECT_DOUBLE_EQ(spearman_distance(id2, rev2), 2.0);
}

TEST(RankDistances, MetricPropertiesOnPermutations) {
  // Footrule is a metric. The summed squared differences violate the triangle
  // inequality (e.g. (1,2,3) -> (1,3,2) -> (2,3,1)), so that property is
  // checked on the square root, the Euclidean distance.
  CounterRng rng(13, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.next_below(6);
    const auto x = random_ranks(rng, n, false);
    const auto y = random_ranks(rng, n, false);
    const auto z = random_ranks(rng, n, false);

    EXPECT_DOUBLE_EQ(spearman_footrule(x, y), spearman_footrule(y, x));
    EXPECT_DOUBLE_EQ(spearman_footrule(x, x), 0.0);
    EXPECT_LE(spearman_footrule(x, z),
              spearman_footrule(x, y) + spearman_footrule(y, z) + 1e-12);
    EXPECT_EQ(spearman_footrule(x, y) == 0.0, x == y);

    EXPECT_DOUBLE_EQ(spearman_distance(x, y), spearman_distance(y, x));
    EXPECT_DOUBLE_EQ(spearman_distance(x, x), 0.0);
    EXPECT_EQ(spearman_distance(x, y) == 0.0, x == y);
    EXPECT_LE(std::sqrt(spearman_distance(x, z)),
              std::sqrt(spearman_distance(x, y)) + std::sqrt(spearman_distance(y, z)) + 1e-12);
  }
}

TEST(Wilcoxon, AllPositiveDistinctSmallSamples) {
  // All differences positive and distinct: only the all-positive sign
  // assignment reaches the observed statistic.
  const std::vector<double> y5{0, 0, 0, 0, 0};
  const std::vector<double> x5{1, 2, 3, 4, 5};
  EXPECT_DOUBLE_EQ(wilcoxon_signed_rank_one_sided(x5, y5), 1.0 / 32.0);

  const std::vector<double> y6{0, 0, 0, 0, 0, 0};
  const std::vector<double> x6{1, 2, 3, 4, 5, 6};
  EXPECT_DOUBLE_EQ(wilcoxon_signed_rank_one_sided(x6, y6), 1.0 / 64.0);
}

TEST(Wilcoxon, IdenticalSamplesGiveOne) {
  const std::vector<double> x{0.3, 0.5, 0.9};
  EXPECT_DOUBLE_EQ(wilcoxon_signed_rank_one_sided(x, x), 1.0);
}

TEST(Wilcoxon, LengthMismatch) {
  const std::vector<double> x{1, 2};
  const std::vector<double> y{1};
  try {
    wilcoxon_signed_rank_one_sided(x, y);
    FAIL() << "expected LengthMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
  }
}

TEST(Wilcoxon, ExactMatchesBruteForceEnumeration) {
  CounterRng rng(17, 0);
  int checked = 0;
  while (checked < 60) {
    const std::size_t n = 1 + rng.next_below(10);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.next_unit();
      y[i] = rng.next_unit();
    }
    std::vector<double> mags;
    bool tie_free = true;
    for (std::size_t i = 0; i < n; ++i) {
      const double m = std::fabs(x[i] - y[i]);
      if (m == 0.0) tie_free = false;
      mags.push_back(m);
    }
    std::sort(mags.begin(), mags.end());
    for (std::size_t i = 1; i < mags.size(); ++i)
      if (mags[i] == mags[i - 1]) tie_free = false;
    if (!tie_free) continue;
    EXPECT_NEAR(wilcoxon_signed_rank_one_sided(x, y), oracles::wilcoxon_brute_force(x, y),
                1e-12);
    ++checked;
  }
}

TEST(Wilcoxon, NormalApproximationTracksExactTail) {
  CounterRng rng(19, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 15 + static_cast<int>(rng.next_below(11));
    const int max_sum = n * (n + 1) / 2;
    const int w = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(max_sum + 1)));
    const double exact = wilcoxon_exact_tail(w, n);
    const double approx = wilcoxon_normal_tail(w, n, 0.0);
    EXPECT_NEAR(approx, exact, 0.01);
  }
}

TEST(Wilcoxon, TiedMagnitudesUseCorrectedApproximation) {
  // |d| = {1,1,2}, all d > 0: average ranks 1.5, 1.5, 3 -> W+ = 6.
  const std::vector<double> x{1, 1, 2};
  const std::vector<double> y{0, 0, 0};
  const double tie_term = 2 * 2 * 2 - 2;  // one tie group of size 2
  EXPECT_DOUBLE_EQ(wilcoxon_signed_rank_one_sided(x, y),
                   wilcoxon_normal_tail(6.0, 3, tie_term));
}

TEST(Holm, WorkedExamples) {
  {
    const std::vector<double> p{0.04};
    EXPECT_EQ(holm_adjust(p), (std::vector<double>{0.04}));
  }
  {
    const std::vector<double> p{0.01, 0.04, 0.03};
    const auto adj = holm_adjust(p);
    ASSERT_EQ(adj.size(), 3u);
    EXPECT_NEAR(adj[0], 0.03, 1e-15);
    EXPECT_NEAR(adj[1], 0.06, 1e-15);
    EXPECT_NEAR(adj[2], 0.06, 1e-15);
  }
  {
    const std::vector<double> p{1.0, 1.0};
    EXPECT_EQ(holm_adjust(p), (std::vector<double>{1.0, 1.0}));
  }
}

TEST(Holm, OutOfRangeRejected) {
  const std::vector<double> p{0.5, 1.5};
  try {
    holm_adjust(p);
    FAIL() << "expected OutOfRange";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
  }
}

TEST(Holm, MatchesDefinitionAndShrinksRejections) {
  CounterRng rng(23, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + rng.next_below(10);
    std::vector<double> p(m);
    for (auto& v : p) v = rng.next_unit();
    const auto adj = holm_adjust(p);
    const auto ref = oracles::holm_definition(p);
    ASSERT_EQ(adj.size(), ref.size());
    for (std::size_t i = 0; i < m; ++i) {
      EXPECT_NEAR(adj[i], ref[i], 1e-12);
      EXPECT_GE(adj[i], p[i]);
      if (adj[i] < 0.05) {
        EXPECT_LT(p[i], 0.05);  // Holm rejections are a subset
      }
    }
  }
}

TEST(SignificanceMatrixTest, IdealDataSeparatesAllOrderedPairs) {
  SimSpec spec;
  spec.kind = SimSpec::Kind::Ideal;
  spec.seed = 5;
  const ChallengeData data = generate_ideal(spec);
  const SignificanceMatrix sm = significance_matrix(data, 0, 0.05, Adjustment::Holm);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      if (i == j) continue;
      EXPECT_EQ(sm.is_superior(i, j), i < j) << "pair " << i << "," << j;
    }
  EXPECT_EQ(sm.win_counts(), (std::vector<int>{4, 3, 2, 1, 0}));
}

TEST(SignificanceMatrixTest, IdenticalAlgorithmsShowNothing) {
  std::istringstream in(
      "task,case,algorithm,value\n"
      "T1,c1,A1,0.5\nT1,c1,A2,0.5\nT1,c2,A1,0.7\nT1,c2,A2,0.7\n");
  const ChallengeData data = parse_assessment_csv(in);
  const SignificanceMatrix sm = significance_matrix(data, 0, 0.05, Adjustment::Holm);
  EXPECT_FALSE(sm.is_superior(0, 1));
  EXPECT_FALSE(sm.is_superior(1, 0));
  EXPECT_DOUBLE_EQ(sm.raw(0, 1), 1.0);
}

TEST(SignificanceMatrixTest, NoMutualSuperiorityOnRandomData) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SimSpec spec;
    spec.kind = SimSpec::Kind::Random;
    spec.cases = 20;
    spec.algorithms = 4;
    spec.seed = seed;
    const ChallengeData data = generate_random(spec);
    const SignificanceMatrix sm = significance_matrix(data, 0, 0.05, Adjustment::None);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j)
        EXPECT_FALSE(sm.is_superior(i, j) && sm.is_superior(j, i));
  }
}

TEST(SignificanceMatrixTest, SmallerBetterFlipsDirection) {
  std::istringstream in(
      "task,case,algorithm,value\n"
      "T1,c1,A1,1\nT1,c1,A2,2\nT1,c2,A1,1\nT1,c2,A2,3\n"
      "T1,c3,A1,2\nT1,c3,A2,4\nT1,c4,A1,1\nT1,c4,A2,5\n"
      "T1,c5,A1,2\nT1,c5,A2,6\nT1,c6,A1,1\nT1,c6,A2,7\n");
  const ChallengeData data = parse_assessment_csv(in, {}, Direction::SmallerBetter);
  const SignificanceMatrix sm = significance_matrix(data, 0, 0.05, Adjustment::None);
  EXPECT_TRUE(sm.is_superior(0, 1));  // A1 has the smaller values
  EXPECT_FALSE(sm.is_superior(1, 0));
}

TEST(SignificanceMatrixTest, CsvExport) {
  SimSpec spec;
  spec.kind = SimSpec::Kind::Ideal;
  spec.algorithms = 3;
  spec.cases = 10;
  const ChallengeData data = generate_ideal(spec);
  const SignificanceMatrix sm = significance_matrix(data, 0, 0.05, Adjustment::Holm);
  std::ostringstream out;
  write_significance_csv(out, sm);
  const std::string text = out.str();
  EXPECT_NE(text.find("algorithm_a,algorithm_b,raw_p,adj_p,significant"), std::string::npos);
  EXPECT_EQ(oracles::count_occurrences(text, "\n"), 1u + 6u);  // header + p(p-1) rows
}
