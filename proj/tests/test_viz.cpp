#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "rankbench/plots.hpp"
#include "rankbench/simgen.hpp"

using namespace rankbench;

namespace {

ChallengeData parse(const std::string& text) {
  std::istringstream in(text);
  return parse_assessment_csv(in);
}

ChallengeData ideal_data(std::uint64_t seed = 21, int cases = 20, int algos = 5) {
  SimSpec spec;
  spec.kind = SimSpec::Kind::Ideal;
  spec.cases = cases;
  spec.algorithms = algos;
  spec.seed = seed;
  return generate_ideal(spec);
}

Ranking mean_ranking(const ChallengeData& data) {
  return compute_ranking(data, 0, RankingMethodSpec::mean_then_rank());
}

template <typename ShapeT>
std::vector<const Mark*> marks_of(const Scene& scene, std::string_view cls) {
  std::vector<const Mark*> out;
  for (const auto& m : scene.marks)
    if (m.cls == cls && std::holds_alternative<ShapeT>(m.shape)) out.push_back(&m);
  return out;
}

void expect_in_canvas(const Scene& scene) {
  auto inside = [&](double x, double y) {
    EXPECT_GE(x, -1e-9);
    EXPECT_LE(x, scene.width + 1e-9);
    EXPECT_GE(y, -1e-9);
    EXPECT_LE(y, scene.height + 1e-9);
  };
  for (const auto& m : scene.marks) {
    if (const auto* r = std::get_if<RectMark>(&m.shape)) {
      inside(r->x, r->y);
      inside(r->x + r->w, r->y + r->h);
    } else if (const auto* c = std::get_if<CircleMark>(&m.shape)) {
      inside(c->cx - c->r, c->cy - c->r);
      inside(c->cx + c->r, c->cy + c->r);
    } else if (const auto* l = std::get_if<LineMark>(&m.shape)) {
      inside(l->x1, l->y1);
      inside(l->x2, l->y2);
    } else if (const auto* p = std::get_if<PolylineMark>(&m.shape)) {
      for (const auto& [x, y] : p->points) inside(x, y);
    } else if (const auto* t = std::get_if<TextMark>(&m.shape)) {
      inside(t->x, t->y);
    }
  }
}

}  // namespace

TEST(DotBoxPlot, IdealDataSeparatesBoxes) {
  const ChallengeData data = ideal_data();
  const Scene scene = dot_box_plot(data, 0, mean_ranking(data));
  EXPECT_EQ(scene.count("box"), 5u);
  EXPECT_EQ(scene.count("dot"), 5u * 20u);
  expect_in_canvas(scene);

  // value ranges of adjacent algorithms do not overlap
  for (std::size_t a = 0; a + 1 < 5; ++a) {
    std::vector<double> hi, lo;
    for (std::size_t k = 0; k < 20; ++k) {
      hi.push_back(data.cell(0, k, a + 1).value);
      lo.push_back(data.cell(0, k, a).value);
    }
    EXPECT_GT(*std::min_element(lo.begin(), lo.end()), *std::max_element(hi.begin(), hi.end()));
  }
}

TEST(DotBoxPlot, DegenerateSingleCase) {
  const ChallengeData data = parse("task,case,algorithm,value\nT1,c1,A1,0.5\nT1,c1,A2,0.25\n");
  const Scene scene = dot_box_plot(data, 0, mean_ranking(data));
  EXPECT_EQ(scene.count("dot"), 2u);
  const BoxStats s = box_stats(std::vector<double>{0.5});
  EXPECT_DOUBLE_EQ(s.median, 0.5);
  EXPECT_DOUBLE_EQ(s.q1, 0.5);
  EXPECT_DOUBLE_EQ(s.q3, 0.5);
  EXPECT_TRUE(s.outliers.empty());
}

TEST(BoxStatsTest, TukeyInvariants) {
  CounterRng rng(71, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.next_below(40);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.next_normal(0.0, 1.0);
    const BoxStats s = box_stats(v);
    EXPECT_LE(s.q1, s.median);
    EXPECT_LE(s.median, s.q3);
    const double reach = 1.5 * (s.q3 - s.q1);
    EXPECT_GE(s.whisker_lo, s.q1 - reach - 1e-12);
    EXPECT_LE(s.whisker_hi, s.q3 + reach + 1e-12);
    for (double o : s.outliers) EXPECT_TRUE(o < s.whisker_lo || o > s.whisker_hi);
  }
}

TEST(PodiumPlot, OneLinePerCaseVisitingEveryPlace) {
  const ChallengeData data = ideal_data(3, 10, 4);
  const Scene scene = podium_plot(data, 0, mean_ranking(data), 99);
  const auto lines = marks_of<PolylineMark>(scene, "podium-line");
  ASSERT_EQ(lines.size(), 10u);
  for (const auto* m : lines)
    EXPECT_EQ(std::get<PolylineMark>(m->shape).points.size(), 4u);
  EXPECT_EQ(scene.count("podium-dot"), 40u);
  expect_in_canvas(scene);
}

TEST(PodiumPlot, IdealFirstPlaceIsOneColor) {
  const ChallengeData data = ideal_data(5, 12, 4);
  const Scene scene = podium_plot(data, 0, mean_ranking(data), 7);
  // all dots in the first podium band share A1's color
  const double x0 = 56.0;
  const double place_w = (scene.width - 110.0 - x0) / 4.0;
  std::size_t first_band_dots = 0;
  for (const auto& m : scene.marks) {
    if (m.cls != "podium-dot") continue;
    const auto& c = std::get<CircleMark>(m.shape);
    if (c.cx < x0 + place_w) {
      EXPECT_EQ(m.style.fill, palette_color(0));
      ++first_band_dots;
    }
  }
  EXPECT_EQ(first_band_dots, 12u);
}

TEST(PodiumPlot, BarFrequenciesPerPlaceSumToOne) {
  SimSpec spec;
  spec.kind = SimSpec::Kind::Random;
  spec.cases = 14;
  spec.algorithms = 4;
  spec.seed = 8;
  const ChallengeData data = generate_random(spec);
  const Scene scene = podium_plot(data, 0, mean_ranking(data), 11);

  // bar heights encode relative frequency; per place they must sum to the
  // full bar-panel height
  const double x0 = 56.0;
  const double place_w = (scene.width - 110.0 - x0) / 4.0;
  const double panel = (scene.height - 56.0) - 380.0;
  std::vector<double> height_sum(4, 0.0);
  for (const auto& m : scene.marks) {
    if (m.cls != "podium-bar") continue;
    const auto& r = std::get<RectMark>(m.shape);
    const auto place = static_cast<std::size_t>((r.x + r.w / 2 - x0) / place_w);
    ASSERT_LT(place, 4u);
    height_sum[place] += r.h;
  }
  for (double h : height_sum) EXPECT_NEAR(h, panel, 1e-6);
}

TEST(RankingHeatmap, IdealConcentratesOnDiagonal) {
  const ChallengeData data = ideal_data(2, 15, 4);
  const Scene scene = ranking_heatmap(data, 0, mean_ranking(data));
  EXPECT_EQ(scene.count("heatmap-cell"), 16u);
  // diagonal counts equal the case count; read back the count labels
  const auto labels = marks_of<TextMark>(scene, "heatmap-count");
  ASSERT_EQ(labels.size(), 4u);  // only diagonal cells are populated
  for (const auto* m : labels)
    EXPECT_EQ(std::get<TextMark>(m->shape).text, "15");
}

TEST(RankingHeatmap, TiedPairPutsAllMassOnRankOne) {
  const ChallengeData data = parse(
      "task,case,algorithm,value\n"
      "T1,c1,A1,0.5\nT1,c1,A2,0.5\nT1,c2,A1,0.8\nT1,c2,A2,0.8\n");
  const Scene scene = ranking_heatmap(data, 0, mean_ranking(data));
  const auto labels = marks_of<TextMark>(scene, "heatmap-count");
  ASSERT_EQ(labels.size(), 2u);
  double rank1_row_y = -1.0;
  for (const auto* m : labels) {
    EXPECT_EQ(std::get<TextMark>(m->shape).text, "2");
    if (rank1_row_y < 0) rank1_row_y = std::get<TextMark>(m->shape).y;
    EXPECT_DOUBLE_EQ(std::get<TextMark>(m->shape).y, rank1_row_y);  // same (top) row
  }
}

TEST(LinePlot, IdealRanksAreHorizontal) {
  const ChallengeData data = ideal_data(9, 18, 5);
  const auto methods = standard_method_set();
  const Scene scene = line_plot_methods(data, 0, methods);
  const auto lines = marks_of<PolylineMark>(scene, "method-line");
  ASSERT_EQ(lines.size(), 5u);
  for (const auto* m : lines) {
    const auto& pts = std::get<PolylineMark>(m->shape).points;
    ASSERT_EQ(pts.size(), methods.size());
    for (const auto& [x, y] : pts) EXPECT_DOUBLE_EQ(y, pts.front().second);
  }
}

TEST(LinePlot, MeanMedianDisagreementCrossesLines) {
  // A1's outlier lifts its mean above A2's, but its median stays below.
  const ChallengeData data = parse(
      "task,case,algorithm,value\n"
      "T1,c1,A1,0.2\nT1,c1,A2,0.3\n"
      "T1,c2,A1,0.25\nT1,c2,A2,0.35\n"
      "T1,c3,A1,1.0\nT1,c3,A2,0.4\n");
  const std::vector<RankingMethodSpec> methods{RankingMethodSpec::mean_then_rank(),
                                               RankingMethodSpec::median_then_rank()};
  const Scene scene = line_plot_methods(data, 0, methods);
  const auto lines = marks_of<PolylineMark>(scene, "method-line");
  ASSERT_EQ(lines.size(), 2u);
  const auto& a = std::get<PolylineMark>(lines[0]->shape).points;
  const auto& b = std::get<PolylineMark>(lines[1]->shape).points;
  EXPECT_LT(a[0].second, b[0].second);  // A1 ranked better under mean
  EXPECT_GT(a[1].second, b[1].second);  // A2 ranked better under median
}

TEST(BlobPlot, PointMassGivesOneFullRadiusBlobPerColumn) {
  RankDistribution dist;
  dist.source = DistributionSource::Bootstrap;
  dist.total = 100;
  dist.columns = {"A", "B"};
  dist.counts = {{{1, 100}}, {{2, 100}}};
  dist.medians = {1.0, 2.0};
  dist.intervals = {{1.0, 1.0}, {2.0, 2.0}};
  const auto order = identity_order(2);
  const Scene scene = blob_plot(dist, order, "test");
  const auto blobs = marks_of<CircleMark>(scene, "blob");
  ASSERT_EQ(blobs.size(), 2u);
  EXPECT_DOUBLE_EQ(std::get<CircleMark>(blobs[0]->shape).r,
                   std::get<CircleMark>(blobs[1]->shape).r);
  EXPECT_EQ(scene.count("blob-median"), 2u);
  EXPECT_EQ(scene.count("blob-interval"), 2u);
}

TEST(BlobPlot, AreaEncodesRelativeFrequency) {
  RankDistribution dist;
  dist.source = DistributionSource::Bootstrap;
  dist.total = 1000;
  dist.columns = {"A"};
  dist.counts = {{{1, 750}, {2, 250}}};
  dist.medians = {1.0};
  dist.intervals = {{1.0, 2.0}};
  const auto order = identity_order(1);
  const Scene scene = blob_plot(dist, order, "test");
  const auto blobs = marks_of<CircleMark>(scene, "blob");
  ASSERT_EQ(blobs.size(), 2u);
  const double r1 = std::get<CircleMark>(blobs[0]->shape).r;
  const double r2 = std::get<CircleMark>(blobs[1]->shape).r;
  EXPECT_NEAR(r1 / r2, std::sqrt(3.0), 1e-12);
}

TEST(BlobPlot, ColumnAreasSumToSameTotal) {
  RankDistribution dist;
  dist.source = DistributionSource::Bootstrap;
  dist.total = 100;
  dist.columns = {"A", "B", "C"};
  dist.counts = {{{1, 60}, {3, 40}}, {{2, 100}}, {{1, 10}, {2, 20}, {3, 70}}};
  dist.medians = {1.0, 2.0, 3.0};
  dist.intervals = {{1.0, 3.0}, {2.0, 2.0}, {1.0, 3.0}};
  const auto order = identity_order(3);
  const Scene scene = blob_plot(dist, order, "test");

  std::map<double, double> area_by_column;  // cx -> sum r^2
  for (const auto* m : marks_of<CircleMark>(scene, "blob")) {
    const auto& c = std::get<CircleMark>(m->shape);
    area_by_column[c.cx] += c.r * c.r;
  }
  ASSERT_EQ(area_by_column.size(), 3u);
  const double first = area_by_column.begin()->second;
  for (const auto& [cx, area] : area_by_column) EXPECT_NEAR(area, first, 1e-9);
}

TEST(BlobPlot, IntervalsRoundOutward) {
  RankDistribution dist;
  dist.source = DistributionSource::Bootstrap;
  dist.total = 10;
  dist.columns = {"A"};
  dist.counts = {{{2, 5}, {3, 5}}};
  dist.medians = {2.5};
  dist.intervals = {{2.225, 2.975}};  // fractional percentiles
  const auto order = identity_order(1);
  const Scene scene = blob_plot(dist, order, "test");
  const auto intervals = marks_of<LineMark>(scene, "blob-interval");
  ASSERT_EQ(intervals.size(), 1u);
  const auto& line = std::get<LineMark>(intervals[0]->shape);
  // end points sit on the centers of whole ranks 2 and 3
  const auto blobs = marks_of<CircleMark>(scene, "blob");
  ASSERT_EQ(blobs.size(), 2u);
  EXPECT_DOUBLE_EQ(line.y1, std::get<CircleMark>(blobs[0]->shape).cy);
  EXPECT_DOUBLE_EQ(line.y2, std::get<CircleMark>(blobs[1]->shape).cy);
}

TEST(ViolinPlot, ZeroVarianceRendersAsBar) {
  TauSamples ts;
  ts.task = "T1";
  ts.method = RankingMethodSpec::mean_then_rank();
  ts.values.assign(200, 1.0);
  const std::vector<TauSamples> samples{ts};
  const Scene scene = violin_plot(samples);
  ASSERT_EQ(scene.count("violin"), 1u);
  const auto bars = marks_of<RectMark>(scene, "violin");
  ASSERT_EQ(bars.size(), 1u);  // rect, not a density path
}

TEST(ViolinPlot, OrderedByDescendingMedian) {
  TauSamples low, high;
  low.task = "low";
  high.task = "high";
  low.method = high.method = RankingMethodSpec::mean_then_rank();
  CounterRng rng(83, 0);
  for (int i = 0; i < 300; ++i) {
    low.values.push_back(0.5 + 0.1 * (rng.next_unit() - 0.5));
    high.values.push_back(0.9 + 0.1 * (rng.next_unit() - 0.5));
  }
  const std::vector<TauSamples> samples{low, high};
  const Scene scene = violin_plot(samples);
  ASSERT_EQ(scene.axes.size(), 2u);
  const Axis& bottom = scene.axes[1];
  ASSERT_EQ(bottom.ticks.size(), 2u);
  EXPECT_EQ(bottom.ticks[0].label, "high");
  EXPECT_EQ(bottom.ticks[1].label, "low");
}

TEST(ViolinPlot, SymmetricSampleCentersMedian) {
  TauSamples ts;
  ts.task = "T1";
  ts.method = RankingMethodSpec::mean_then_rank();
  CounterRng rng(89, 0);
  for (int i = 0; i < 400; ++i) {
    const double v = 0.8 * (rng.next_unit() - 0.5);
    ts.values.push_back(v);
    ts.values.push_back(-v);
  }
  const std::vector<TauSamples> samples{ts};
  const Scene scene = violin_plot(samples);
  const auto medians = marks_of<LineMark>(scene, "violin-median");
  ASSERT_EQ(medians.size(), 1u);
  // y(0) is the vertical center of the plot frame
  const double y_center = (36.0 + scene.height - 56.0) / 2.0;
  EXPECT_NEAR(std::get<LineMark>(medians[0]->shape).y1, y_center, 1.0);
}

TEST(SignificanceMap, IdealPatternAndCellCount) {
  const ChallengeData data = ideal_data(4, 30, 4);
  const Ranking ordering = mean_ranking(data);
  const SignificanceMatrix sm = significance_matrix(data, 0, 0.05, Adjustment::Holm);
  const Scene scene = significance_map_plot(sm, ordering);
  const auto cells = marks_of<RectMark>(scene, "sig-cell");
  ASSERT_EQ(cells.size(), 16u);

  std::size_t yellow = 0, blue = 0, neutral = 0;
  for (const auto* m : cells) {
    if (m->style.fill == "#ffd92f") ++yellow;
    else if (m->style.fill == "#4575b4") ++blue;
    else ++neutral;
  }
  EXPECT_EQ(neutral, 4u);
  EXPECT_EQ(yellow, 6u);  // all ordered better-than pairs
  EXPECT_EQ(blue, 6u);
}

TEST(SignificanceMap, UniformBlueWithoutSignal) {
  const ChallengeData data = parse(
      "task,case,algorithm,value\n"
      "T1,c1,A1,0.5\nT1,c1,A2,0.5\nT1,c2,A1,0.6\nT1,c2,A2,0.6\n");
  const SignificanceMatrix sm = significance_matrix(data, 0, 0.05, Adjustment::Holm);
  const Scene scene = significance_map_plot(sm, mean_ranking(data));
  for (const auto* m : marks_of<RectMark>(scene, "sig-cell"))
    EXPECT_NE(m->style.fill, "#ffd92f");
}

TEST(DendrogramPlot, LeafAndLinkCounts) {
  TaskDistanceMatrix dm;
  dm.tasks = {"T1", "T2", "T3"};
  dm.d = {0, 1, 5, 1, 0, 5, 5, 5, 0};
  const Dendrogram tree = hierarchical_cluster(dm);
  const Scene scene = dendrogram_plot(tree);
  EXPECT_EQ(scene.count("dendro-leaf"), 3u);
  EXPECT_EQ(scene.count("dendro-link"), 2u);
  expect_in_canvas(scene);

  // heights never increase walking down from the root
  std::vector<std::pair<int, double>> stack{{tree.root(), 1e300}};
  while (!stack.empty()) {
    auto [node, parent_h] = stack.back();
    stack.pop_back();
    const auto& n = tree.nodes[static_cast<std::size_t>(node)];
    EXPECT_LE(n.height, parent_h + 1e-12);
    if (!n.is_leaf()) {
      stack.push_back({n.left, n.height});
      stack.push_back({n.right, n.height});
    }
  }
}

TEST(NetworkPlot, CompleteEdgeSetAndWinnerColoring) {
  TaskDistanceMatrix dm;
  dm.tasks = {"T1", "T2", "T3"};
  dm.d = {0, 1, 2, 1, 0, 1.5, 2, 1.5, 0};
  const std::vector<std::optional<std::string>> winners{std::optional<std::string>("A1"),
                                                        std::nullopt,
                                                        std::optional<std::string>("A2")};
  const NetworkLayout layout = network_layout(dm, 0.05, winners);
  const std::vector<std::string> algorithms{"A1", "A2"};
  const Scene scene = network_plot(layout, algorithms);
  EXPECT_EQ(scene.count("network-edge"), 3u);
  const auto nodes = marks_of<CircleMark>(scene, "network-node");
  ASSERT_EQ(nodes.size(), 3u);
  EXPECT_EQ(nodes[0]->style.fill, palette_color(0));
  EXPECT_EQ(nodes[1]->style.fill, "#ffffff");  // shared rank 1 stays uncolored
  EXPECT_EQ(nodes[2]->style.fill, palette_color(1));
  expect_in_canvas(scene);
}

TEST(SvgOutput, WellFormedAndClassTagged) {
  const ChallengeData data = ideal_data(6, 10, 3);
  const Ranking ordering = mean_ranking(data);
  const std::vector<Scene> scenes{
      dot_box_plot(data, 0, ordering),
      podium_plot(data, 0, ordering, 3),
      ranking_heatmap(data, 0, ordering),
  };
  for (const auto& scene : scenes) {
    const std::string svg = to_svg(scene);
    EXPECT_TRUE(oracles::xml_well_formed(svg)) << svg.substr(0, 200);
    EXPECT_NE(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\""), std::string::npos);
  }
  const std::string svg = to_svg(scenes[0]);
  EXPECT_EQ(oracles::count_occurrences(svg, "class=\"dot\""), 30u);
}

TEST(SvgOutput, ByteIdenticalForIdenticalScenes) {
  const ChallengeData data = ideal_data(13, 12, 4);
  const Ranking ordering = mean_ranking(data);
  const std::string a = to_svg(podium_plot(data, 0, ordering, 5));
  const std::string b = to_svg(podium_plot(data, 0, ordering, 5));
  EXPECT_EQ(a, b);
}

TEST(SvgOutput, PodiumTieBreakSeedMatters) {
  // Every case fully tied: podium places are decided by the seeded draw.
  std::string text = "task,case,algorithm,value\n";
  for (int k = 1; k <= 12; ++k)
    for (int a = 1; a <= 3; ++a)
      text += "T1,c" + std::to_string(k) + ",A" + std::to_string(a) + ",0.5\n";
  const ChallengeData data = parse(text);
  const Ranking ordering = mean_ranking(data);
  const std::string s5 = to_svg(podium_plot(data, 0, ordering, 5));
  const std::string s6 = to_svg(podium_plot(data, 0, ordering, 6));
  EXPECT_NE(s5, s6);
}
