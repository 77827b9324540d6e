#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

namespace qroute {

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Edge {
  int u = 0;  // u < v
  int v = 0;
  double w = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simple undirected graph with positive edge weights. Stored densely; every
/// graph in this project has at most a handful of nodes.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(int n_nodes);
  WeightedGraph(int n_nodes, const std::vector<Edge>& edges);

  /// Throws GraphError on self-loops, duplicates, bad indices or w <= 0.
  void add_edge(int i, int j, double w);
  /// Throws GraphError if the edge is absent.
  void remove_edge(int i, int j);

  int n_nodes() const { return n_; }
  std::size_t edge_count() const { return n_edges_; }
  bool has_edge(int i, int j) const { return weight(i, j) > 0.0; }
  /// 0 when (i, j) is not an edge.
  double weight(int i, int j) const;

  /// Edges with u < v, ordered lexicographically by (u, v).
  std::vector<Edge> edges() const;
  /// Ascending neighbor list.
  std::vector<int> neighbors(int u) const;
  int degree(int u) const;
  bool connected() const;

  /// Row-major n x n weight matrix, 0 for absent edges.
  const std::vector<double>& adjacency() const { return adj_; }

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  void check_node(int i) const;

  int n_ = 0;
  std::size_t n_edges_ = 0;
  std::vector<double> adj_;
};

}  // namespace qroute
