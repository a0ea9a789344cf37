#pragma once
// Task similarity from ranking distances: pairwise distance matrix,
// complete-linkage dendrogram, and a stress-minimizing 2-D network layout
// whose target edge lengths grow exponentially in the rank distance.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "rankbench/error.hpp"
#include "rankbench/ranking.hpp"
#include "rankbench/rng.hpp"
#include "rankbench/text.hpp"

namespace rankbench {

enum class RankDistanceMeasure { Footrule, SpearmanDistance };

struct TaskDistanceMatrix {
  std::vector<std::string> tasks;
  std::vector<double> d;  // m x m row-major, symmetric, zero diagonal
  RankDistanceMeasure measure = RankDistanceMeasure::Footrule;

  std::size_t size() const { return tasks.size(); }
  double at(std::size_t i, std::size_t j) const { return d[i * size() + j]; }
};

// Distances between per-task rank lists, on average-rank representations so
// tied rankings compare smoothly.
inline TaskDistanceMatrix task_distance_matrix(std::span<const Ranking> rankings,
                                               RankDistanceMeasure measure) {
  if (rankings.empty()) fail(ErrorCode::EmptyInput, "no rankings");
  const std::size_t m = rankings.size();
  const std::size_t p = rankings.front().algorithms.size();

  std::vector<std::vector<double>> lists(m);
  for (std::size_t t = 0; t < m; ++t) {
    if (rankings[t].algorithms.size() != p)
      fail(ErrorCode::AlgorithmSetMismatch, "rankings cover different algorithm sets");
    const auto avg = average_ranks(rankings[t]);
    // Align to the first ranking's algorithm order.
    lists[t].resize(p);
    for (std::size_t a = 0; a < p; ++a) {
      if (rankings[t].algorithms[a] == rankings.front().algorithms[a]) {
        lists[t][a] = avg[a];
        continue;
      }
      bool found = false;
      for (std::size_t b = 0; b < p; ++b)
        if (rankings[t].algorithms[b] == rankings.front().algorithms[a]) {
          lists[t][a] = avg[b];
          found = true;
          break;
        }
      if (!found)
        fail(ErrorCode::AlgorithmSetMismatch, "algorithm '" + rankings.front().algorithms[a] +
                                                  "' missing from task '" + rankings[t].task +
                                                  "'");
    }
  }

  TaskDistanceMatrix dm;
  dm.measure = measure;
  for (const auto& r : rankings) dm.tasks.push_back(r.task);
  dm.d.assign(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const double dist = measure == RankDistanceMeasure::Footrule
                              ? spearman_footrule(lists[i], lists[j])
                              : spearman_distance(lists[i], lists[j]);
      dm.d[i * m + j] = dist;
      dm.d[j * m + i] = dist;
    }
  return dm;
}

struct Dendrogram {
  struct Node {
    int left = -1;   // node indices; -1 marks a leaf
    int right = -1;
    double height = 0.0;
    std::string leaf;  // leaf task id, empty for internal nodes
    bool is_leaf() const { return left < 0; }
  };

  std::vector<Node> nodes;  // leaves first, merges appended; root is last
  std::size_t leaf_count = 0;

  int root() const { return static_cast<int>(nodes.size()) - 1; }

  void collect_leaves(int node, std::vector<std::string>& out) const {
    const Node& n = nodes[static_cast<std::size_t>(node)];
    if (n.is_leaf()) {
      out.push_back(n.leaf);
      return;
    }
    collect_leaves(n.left, out);
    collect_leaves(n.right, out);
  }

  std::vector<std::string> leaf_order() const {
    std::vector<std::string> out;
    collect_leaves(root(), out);
    return out;
  }

  // Newick text with branch lengths = parent merge height - child height.
  std::string to_newick() const {
    std::string s = newick_node(root());
    s += ";";
    return s;
  }

 private:
  std::string newick_node(int node) const {
    const Node& n = nodes[static_cast<std::size_t>(node)];
    if (n.is_leaf()) return n.leaf;
    auto branch = [&](int child) {
      const Node& c = nodes[static_cast<std::size_t>(child)];
      return newick_node(child) + ":" + format_double(n.height - c.height);
    };
    return "(" + branch(n.left) + "," + branch(n.right) + ")";
  }
};

// Agglomerative clustering with complete linkage (inter-cluster distance =
// maximum pairwise distance). Ties break on the lexicographically smallest
// cluster representatives so results are reproducible.
inline Dendrogram hierarchical_cluster(const TaskDistanceMatrix& dm) {
  const std::size_t m = dm.size();
  if (m < 2) fail(ErrorCode::TooFewTasks, "clustering needs at least 2 tasks");

  Dendrogram tree;
  tree.leaf_count = m;
  tree.nodes.reserve(2 * m - 1);
  for (std::size_t i = 0; i < m; ++i) {
    Dendrogram::Node leaf;
    leaf.leaf = dm.tasks[i];
    tree.nodes.push_back(leaf);
  }

  struct Cluster {
    std::vector<std::size_t> members;  // original task indices
    int node;
    std::string rep;  // lexicographically smallest member id
  };
  std::vector<Cluster> active;
  for (std::size_t i = 0; i < m; ++i)
    active.push_back({{i}, static_cast<int>(i), dm.tasks[i]});

  auto linkage = [&](const Cluster& a, const Cluster& b) {
    double worst = 0.0;
    for (std::size_t x : a.members)
      for (std::size_t y : b.members) worst = std::max(worst, dm.at(x, y));
    return worst;
  };

  while (active.size() > 1) {
    std::size_t best_i = 0, best_j = 1;
    double best_d = linkage(active[0], active[1]);
    for (std::size_t i = 0; i < active.size(); ++i)
      for (std::size_t j = i + 1; j < active.size(); ++j) {
        const double dij = linkage(active[i], active[j]);
        if (dij < best_d) {
          best_d = dij;
          best_i = i;
          best_j = j;
          continue;
        }
        if (dij == best_d) {
          auto key = [&](std::size_t x, std::size_t y) {
            const std::string& a = active[x].rep;
            const std::string& b = active[y].rep;
            return a < b ? std::pair(a, b) : std::pair(b, a);
          };
          if (key(i, j) < key(best_i, best_j)) {
            best_i = i;
            best_j = j;
          }
        }
      }

    Cluster& ci = active[best_i];
    Cluster& cj = active[best_j];
    const bool i_first = ci.rep <= cj.rep;
    Dendrogram::Node merged;
    merged.left = i_first ? ci.node : cj.node;
    merged.right = i_first ? cj.node : ci.node;
    merged.height = best_d;
    tree.nodes.push_back(merged);

    Cluster combined;
    combined.node = static_cast<int>(tree.nodes.size()) - 1;
    combined.members = ci.members;
    combined.members.insert(combined.members.end(), cj.members.begin(), cj.members.end());
    combined.rep = std::min(ci.rep, cj.rep);
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_j));
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_i));
    active.push_back(std::move(combined));
  }
  return tree;
}

struct NetworkLayout {
  std::vector<std::string> tasks;
  std::vector<std::array<double, 2>> positions;
  std::vector<double> targets;  // m x m target edge lengths, exp(growth * d)
  std::vector<std::optional<std::string>> winners;  // unique rank-1 algorithm per task
  double growth = 0.05;
  double stress = 0.0;

  std::size_t size() const { return tasks.size(); }
  double target(std::size_t i, std::size_t j) const { return targets[i * size() + j]; }
};

// Unique rank-1 algorithm per task, empty when rank 1 is shared.
inline std::vector<std::optional<std::string>> task_winners(std::span<const Ranking> rankings) {
  std::vector<std::optional<std::string>> out;
  out.reserve(rankings.size());
  for (const auto& r : rankings) {
    std::optional<std::string> winner;
    int first_ranked = 0;
    for (std::size_t a = 0; a < r.algorithms.size(); ++a)
      if (r.ranks[a] == 1) {
        ++first_ranked;
        winner = r.algorithms[a];
      }
    out.push_back(first_ranked == 1 ? winner : std::nullopt);
  }
  return out;
}

namespace detail {

inline double layout_stress(const std::vector<std::array<double, 2>>& x,
                            const std::vector<double>& targets, std::size_t m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const double dx = x[i][0] - x[j][0];
      const double dy = x[i][1] - x[j][1];
      const double dist = std::sqrt(dx * dx + dy * dy);
      const double r = dist - targets[i * m + j];
      s += r * r;
    }
  return s;
}

}  // namespace detail

// Embeds tasks in the plane so pairwise distances approach the target edge
// lengths exp(growth * d), by iterative stress majorization from a fixed
// seeded start. Stress is non-increasing across iterations. A base-form
// target (1 + r)^d is the same thing with growth = ln(1 + r).
inline NetworkLayout network_layout(const TaskDistanceMatrix& dm, double growth = 0.05,
                                    std::span<const std::optional<std::string>> winners = {}) {
  const std::size_t m = dm.size();
  if (m < 2) fail(ErrorCode::TooFewTasks, "layout needs at least 2 tasks");
  if (!(growth > 0.0)) fail(ErrorCode::InvalidArgument, "growth rate must be positive");

  NetworkLayout layout;
  layout.tasks = dm.tasks;
  layout.growth = growth;
  layout.targets.assign(m * m, 0.0);
  double max_target = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j) {
        layout.targets[i * m + j] = std::exp(growth * dm.at(i, j));
        max_target = std::max(max_target, layout.targets[i * m + j]);
      }
  layout.winners.assign(m, std::nullopt);
  for (std::size_t i = 0; i < winners.size() && i < m; ++i) layout.winners[i] = winners[i];

  CounterRng rng(0x6c61796f7574u, 0);  // fixed layout seed
  layout.positions.resize(m);
  for (auto& pos : layout.positions) {
    pos[0] = rng.next_unit() * max_target;
    pos[1] = rng.next_unit() * max_target;
  }

  constexpr int kMaxIterations = 500;
  constexpr double kRelTol = 1e-8;
  double stress = detail::layout_stress(layout.positions, layout.targets, m);
  for (int it = 0; it < kMaxIterations; ++it) {
    // Guttman transform for unweighted metric stress.
    std::vector<std::array<double, 2>> next(m, {0.0, 0.0});
    for (std::size_t i = 0; i < m; ++i) {
      double diag = 0.0;
      double bx = 0.0, by = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (j == i) continue;
        const double dx = layout.positions[i][0] - layout.positions[j][0];
        const double dy = layout.positions[i][1] - layout.positions[j][1];
        const double dist = std::sqrt(dx * dx + dy * dy);
        double bij = 0.0;
        if (dist > 1e-12) bij = -layout.targets[i * m + j] / dist;
        diag -= bij;
        bx += bij * layout.positions[j][0];
        by += bij * layout.positions[j][1];
      }
      next[i][0] = (diag * layout.positions[i][0] + bx) / static_cast<double>(m);
      next[i][1] = (diag * layout.positions[i][1] + by) / static_cast<double>(m);
    }
    const double next_stress = detail::layout_stress(next, layout.targets, m);
    const double previous = stress;
    layout.positions = next;
    stress = next_stress;
    if (previous - next_stress <= kRelTol * std::max(previous, 1e-300)) break;
    if (next_stress < 1e-16) break;
  }
  layout.stress = stress;
  return layout;
}

inline void write_positions_csv(std::ostream& out, const NetworkLayout& layout) {
  csv::write_row(out, std::vector<std::string>{"task", "x", "y", "winner"});
  for (std::size_t i = 0; i < layout.size(); ++i)
    csv::write_row(out, std::vector<std::string>{layout.tasks[i],
                                                 format_double(layout.positions[i][0]),
                                                 format_double(layout.positions[i][1]),
                                                 layout.winners[i] ? *layout.winners[i] : ""});
}

inline void write_distance_csv(std::ostream& out, const TaskDistanceMatrix& dm) {
  csv::write_row(out, std::vector<std::string>{"task_a", "task_b", "distance"});
  for (std::size_t i = 0; i < dm.size(); ++i)
    for (std::size_t j = i + 1; j < dm.size(); ++j)
      csv::write_row(out, std::vector<std::string>{dm.tasks[i], dm.tasks[j],
                                                   format_double(dm.at(i, j))});
}

}  // namespace rankbench
