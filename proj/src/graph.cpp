#include "qroute/graph.hpp"

#include <sstream>

namespace qroute {

WeightedGraph::WeightedGraph(int n_nodes) : n_(n_nodes) {
  if (n_nodes < 0) throw GraphError("negative node count");
  adj_.assign(static_cast<std::size_t>(n_nodes) * static_cast<std::size_t>(n_nodes), 0.0);
}

WeightedGraph::WeightedGraph(int n_nodes, const std::vector<Edge>& edges) : WeightedGraph(n_nodes) {
  for (const auto& e : edges) add_edge(e.u, e.v, e.w);
}

void WeightedGraph::check_node(int i) const {
  if (i < 0 || i >= n_) {
    std::ostringstream os;
    os << "node " << i << " out of range [0, " << n_ << ")";
    throw GraphError(os.str());
  }
}

void WeightedGraph::add_edge(int i, int j, double w) {
  check_node(i);
  check_node(j);
  if (i == j) throw GraphError("self-loop on node " + std::to_string(i));
  if (!(w > 0.0)) throw GraphError("edge weight must be positive");
  if (has_edge(i, j)) {
    throw GraphError("duplicate edge (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  }
  adj_[static_cast<std::size_t>(i * n_ + j)] = w;
  adj_[static_cast<std::size_t>(j * n_ + i)] = w;
  ++n_edges_;
}

void WeightedGraph::remove_edge(int i, int j) {
  check_node(i);
  check_node(j);
  if (!has_edge(i, j)) {
    throw GraphError("no edge (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  }
  adj_[static_cast<std::size_t>(i * n_ + j)] = 0.0;
  adj_[static_cast<std::size_t>(j * n_ + i)] = 0.0;
  --n_edges_;
}

double WeightedGraph::weight(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) return 0.0;
  return adj_[static_cast<std::size_t>(i * n_ + j)];
}

std::vector<Edge> WeightedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(n_edges_);
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (const double w = weight(i, j); w > 0.0) out.push_back({i, j, w});
    }
  }
  return out;
}

std::vector<int> WeightedGraph::neighbors(int u) const {
  check_node(u);
  std::vector<int> out;
  for (int v = 0; v < n_; ++v) {
    if (weight(u, v) > 0.0) out.push_back(v);
  }
  return out;
}

int WeightedGraph::degree(int u) const { return static_cast<int>(neighbors(u).size()); }

bool WeightedGraph::connected() const {
  if (n_ == 0) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n_), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int visited = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n_; ++v) {
      if (!seen[static_cast<std::size_t>(v)] && has_edge(u, v)) {
        seen[static_cast<std::size_t>(v)] = true;
        ++visited;
        stack.push_back(v);
      }
    }
  }
  return visited == n_;
}

}  // namespace qroute
