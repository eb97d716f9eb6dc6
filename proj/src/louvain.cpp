#include "storyflux/louvain.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "storyflux/error.h"

namespace storyflux {

WeightedGraph::WeightedGraph(std::size_t n_nodes, const std::vector<WeightedEdge>& edges)
    : self_loops_(n_nodes, 0.0), degrees_(n_nodes, 0.0) {
  std::vector<WeightedEdge> sorted;
  sorted.reserve(edges.size());
  for (auto e : edges) {
    if (e.a >= n_nodes || e.b >= n_nodes) {
      throw Error(ErrorKind::InvalidArgument, "edge endpoint out of range");
    }
    if (!(e.weight >= 0.0)) throw Error(ErrorKind::InvalidArgument, "negative edge weight");
    if (e.a > e.b) std::swap(e.a, e.b);
    sorted.push_back(e);
  }
  std::sort(sorted.begin(), sorted.end(), [](const WeightedEdge& x, const WeightedEdge& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  // Merge parallel edges.
  std::vector<WeightedEdge> merged;
  for (const auto& e : sorted) {
    if (!merged.empty() && merged.back().a == e.a && merged.back().b == e.b) {
      merged.back().weight += e.weight;
    } else {
      merged.push_back(e);
    }
  }

  std::vector<std::size_t> counts(n_nodes, 0);
  for (const auto& e : merged) {
    total_weight_ += e.weight;
    if (e.a == e.b) {
      self_loops_[e.a] += e.weight;
      degrees_[e.a] += 2 * e.weight;
      continue;
    }
    ++edge_count_;
    ++counts[e.a];
    ++counts[e.b];
    degrees_[e.a] += e.weight;
    degrees_[e.b] += e.weight;
  }
  offsets_.assign(n_nodes + 1, 0);
  for (std::size_t i = 0; i < n_nodes; ++i) offsets_[i + 1] = offsets_[i] + counts[i];
  targets_.resize(offsets_.back());
  weights_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // merged is sorted by (a, b), so each adjacency list ends up ascending.
  for (const auto& e : merged) {
    if (e.a == e.b) continue;
    targets_[fill[e.a]] = e.b;
    weights_[fill[e.a]++] = e.weight;
  }
  for (const auto& e : merged) {
    if (e.a == e.b) continue;
    targets_[fill[e.b]] = e.a;
    weights_[fill[e.b]++] = e.weight;
  }
  // Lists were filled in two passes; restore ascending order.
  std::vector<std::pair<std::uint32_t, double>> adj;
  for (std::size_t i = 0; i < n_nodes; ++i) {
    adj.clear();
    for (auto k = offsets_[i]; k < offsets_[i + 1]; ++k) adj.emplace_back(targets_[k], weights_[k]);
    std::sort(adj.begin(), adj.end());
    for (std::size_t k = 0; k < adj.size(); ++k) {
      targets_[offsets_[i] + k] = adj[k].first;
      weights_[offsets_[i] + k] = adj[k].second;
    }
  }
}

std::span<const std::uint32_t> WeightedGraph::neighbors(std::uint32_t node) const {
  return {targets_.data() + offsets_[node], offsets_[node + 1] - offsets_[node]};
}

std::span<const double> WeightedGraph::neighbor_weights(std::uint32_t node) const {
  return {weights_.data() + offsets_[node], offsets_[node + 1] - offsets_[node]};
}

double modularity(const WeightedGraph& graph, const std::vector<int>& assignment) {
  const std::size_t n = graph.size();
  if (assignment.size() != n) {
    throw Error(ErrorKind::UnassignedNode, "assignment covers " +
                                               std::to_string(assignment.size()) + " of " +
                                               std::to_string(n) + " nodes");
  }
  int max_comm = -1;
  for (int c : assignment) {
    if (c < 0) throw Error(ErrorKind::UnassignedNode, "negative community index");
    max_comm = std::max(max_comm, c);
  }
  const double m = graph.total_weight();
  if (m <= 0.0) throw Error(ErrorKind::EmptyGraph, "graph has no edge weight");

  std::vector<double> internal(static_cast<std::size_t>(max_comm + 1), 0.0);
  std::vector<double> degree(internal.size(), 0.0);
  for (std::uint32_t i = 0; i < n; ++i) {
    const int ci = assignment[i];
    degree[ci] += graph.degree(i);
    internal[ci] += graph.self_loop(i);
    auto nbrs = graph.neighbors(i);
    auto ws = graph.neighbor_weights(i);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      if (nbrs[k] > i && assignment[nbrs[k]] == ci) internal[ci] += ws[k];
    }
  }
  double q = 0;
  for (std::size_t c = 0; c < internal.size(); ++c) {
    const double frac = degree[c] / (2.0 * m);
    q += internal[c] / m - frac * frac;
  }
  return q;
}

namespace {

// Local-move phase. Returns the community of each node of `graph`, renumbered
// by first appearance, and whether any node moved.
std::pair<std::vector<int>, bool> move_nodes(const WeightedGraph& graph,
                                             const std::vector<std::uint32_t>& order,
                                             double tolerance) {
  const std::size_t n = graph.size();
  const double m = graph.total_weight();
  std::vector<int> community(n);
  std::iota(community.begin(), community.end(), 0);
  std::vector<double> total(n);
  for (std::uint32_t i = 0; i < n; ++i) total[i] = graph.degree(i);

  std::vector<double> link(n, 0.0);
  std::vector<char> seen(n, 0);
  std::vector<int> touched;
  bool any_move = false;
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::uint32_t node : order) {
      const double k = graph.degree(node);
      const int own = community[node];
      auto nbrs = graph.neighbors(node);
      auto ws = graph.neighbor_weights(node);
      touched.clear();
      for (std::size_t j = 0; j < nbrs.size(); ++j) {
        const int c = community[nbrs[j]];
        if (!seen[c]) {
          seen[c] = 1;
          touched.push_back(c);
        }
        link[c] += ws[j];
      }
      total[own] -= k;
      const double own_gain = link[own] - total[own] * k / (2.0 * m);
      int best = own;
      double best_gain = own_gain;
      std::sort(touched.begin(), touched.end());
      for (int c : touched) {
        if (c == own) continue;
        const double gain = link[c] - total[c] * k / (2.0 * m);
        if ((gain - own_gain) / m <= tolerance) continue;
        if (best == own || gain > best_gain) {
          best = c;
          best_gain = gain;
        }
      }
      total[best] += k;
      if (best != own) {
        community[node] = best;
        improved = true;
        any_move = true;
      }
      for (int c : touched) {
        link[c] = 0.0;
        seen[c] = 0;
      }
    }
  }

  std::vector<int> renumber(n, -1);
  int next = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    int& r = renumber[community[i]];
    if (r < 0) r = next++;
    community[i] = r;
  }
  return {std::move(community), any_move};
}

WeightedGraph aggregate(const WeightedGraph& graph, const std::vector<int>& community,
                        int n_communities) {
  // The constructor sums parallel edges.
  std::vector<WeightedEdge> edges;
  for (std::uint32_t i = 0; i < graph.size(); ++i) {
    const auto ci = static_cast<std::uint32_t>(community[i]);
    if (graph.self_loop(i) > 0) edges.push_back({ci, ci, graph.self_loop(i)});
    auto nbrs = graph.neighbors(i);
    auto ws = graph.neighbor_weights(i);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      if (nbrs[k] < i) continue;
      edges.push_back({ci, static_cast<std::uint32_t>(community[nbrs[k]]), ws[k]});
    }
  }
  return WeightedGraph(static_cast<std::size_t>(n_communities), edges);
}


}  // namespace

Partition louvain(const WeightedGraph& graph, const LouvainOptions& options) {
  if (graph.total_weight() <= 0.0) throw Error(ErrorKind::EmptyGraph, "graph has no edges");

  Partition result;
  result.assignment.resize(graph.size());
  std::iota(result.assignment.begin(), result.assignment.end(), 0);
  result.n_communities = static_cast<int>(graph.size());
  result.modularity = modularity(graph, result.assignment);

  std::mt19937_64 rng(options.seed);
  WeightedGraph level = graph;
  while (true) {
    std::vector<std::uint32_t> order(level.size());
    std::iota(order.begin(), order.end(), 0u);
    if (options.shuffle) std::shuffle(order.begin(), order.end(), rng);

    auto [community, moved] = move_nodes(level, order, options.tolerance);
    if (!moved) break;
    const int n_communities = *std::max_element(community.begin(), community.end()) + 1;

    std::vector<int> assignment(graph.size());
    for (std::size_t i = 0; i < graph.size(); ++i) {
      assignment[i] = community[result.assignment[i]];
    }
    const double q = modularity(graph, assignment);
    if (q < result.modularity - options.tolerance) {
      throw Error(ErrorKind::InvariantViolation, "modularity decreased between Louvain levels");
    }
    const bool gained = q - result.modularity > options.tolerance;
    result.assignment = std::move(assignment);
    result.n_communities = n_communities;
    result.modularity = q;
    result.level_modularity.push_back(q);
    if (!gained) break;
    level = aggregate(level, community, n_communities);
  }
  return result;
}

}  // namespace storyflux
