#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace storyflux {

struct WeightedEdge {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  double weight = 0;
};

// Undirected weighted graph in compressed sparse row form. Parallel edges are
// merged by summing; a == b denotes a self-loop, which adds its weight once to
// the internal weight and twice to the node degree.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(std::size_t n_nodes, const std::vector<WeightedEdge>& edges);

  std::size_t size() const { return self_loops_.size(); }
  std::span<const std::uint32_t> neighbors(std::uint32_t node) const;
  std::span<const double> neighbor_weights(std::uint32_t node) const;
  double self_loop(std::uint32_t node) const { return self_loops_[node]; }
  double degree(std::uint32_t node) const { return degrees_[node]; }
  // Sum of edge weights, each undirected edge counted once ("m").
  double total_weight() const { return total_weight_; }
  std::size_t edge_count() const { return edge_count_; }

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> targets_;
  std::vector<double> weights_;
  std::vector<double> self_loops_;
  std::vector<double> degrees_;
  double total_weight_ = 0;
  std::size_t edge_count_ = 0;
};

// Q = sum_c [ L_c / m - (D_c / 2m)^2 ] with L_c the weight inside community c
// and D_c its total degree. Throws Error(UnassignedNode) when the assignment
// does not cover every node and Error(EmptyGraph) when m = 0.
double modularity(const WeightedGraph& graph, const std::vector<int>& assignment);

struct LouvainOptions {
  std::uint64_t seed = 0;
  // Sweep nodes in a seeded random order instead of ascending order.
  bool shuffle = false;
  // Minimum modularity gain for a move or for another aggregation level.
  double tolerance = 1e-12;
};

struct Partition {
  // Community per node, numbered 0.. in order of first appearance.
  std::vector<int> assignment;
  int n_communities = 0;
  double modularity = 0;
  // Modularity after each local-move phase, on the original graph.
  std::vector<double> level_modularity;
};

// Two-phase Louvain on classical (resolution 1) modularity. Each sweep visits
// nodes in ascending order and moves a node to the neighbouring community with
// the largest gain above the tolerance, ties going to the lowest community
// index. Levels repeat until a level adds no more than the tolerance.
// Throws Error(EmptyGraph) when the graph has no edges.
Partition louvain(const WeightedGraph& graph, const LouvainOptions& options = {});

}  // namespace storyflux
