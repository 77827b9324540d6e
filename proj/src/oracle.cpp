#include "qroute/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace qroute::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_endpoints(const WeightedGraph& g, int source, int dest) {
  if (source < 0 || source >= g.n_nodes() || dest < 0 || dest >= g.n_nodes()) {
    throw std::invalid_argument("source/dest out of range");
  }
}

std::vector<double> distances_from(const WeightedGraph& g, int origin) {
  const int n = g.n_nodes();
  std::vector<double> dist(static_cast<std::size_t>(n), kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
  dist[static_cast<std::size_t>(origin)] = 0.0;
  frontier.push({0.0, origin});
  while (!frontier.empty()) {
    const auto [d, u] = frontier.top();
    frontier.pop();
    if (d > dist[static_cast<std::size_t>(u)]) continue;
    for (int v : g.neighbors(u)) {
      const double nd = d + g.weight(u, v);
      if (nd < dist[static_cast<std::size_t>(v)]) {
        dist[static_cast<std::size_t>(v)] = nd;
        frontier.push({nd, v});
      }
    }
  }
  return dist;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

OracleResult minimize_diagonal(const std::vector<double>& energies) {
  OracleResult r;
  r.enumeration_size = energies.size();
  r.optimum = *std::min_element(energies.begin(), energies.end());
  for (std::size_t b = 0; b < energies.size(); ++b) {
    if (close(energies[b], r.optimum)) r.argmin.push_back(b);
  }
  return r;
}

}  // namespace

double path_cost(const WeightedGraph& g, const std::vector<int>& path) {
  double cost = 0.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    if (!g.has_edge(path[k], path[k + 1])) throw GraphError("path uses a missing edge");
    cost += g.weight(path[k], path[k + 1]);
  }
  return cost;
}

PathCost dijkstra(const WeightedGraph& g, int source, int dest) {
  check_endpoints(g, source, dest);
  const auto from_source = distances_from(g, source);
  const double total = from_source[static_cast<std::size_t>(dest)];
  if (total == kInf) {
    throw Unreachable("node " + std::to_string(dest) + " unreachable from " + std::to_string(source));
  }
  const auto to_dest = distances_from(g, dest);

  // Walk forward taking the smallest next node that stays on some shortest
  // path; that yields the lexicographically smallest shortest path.
  PathCost out;
  out.path.push_back(source);
  int u = source;
  double travelled = 0.0;
  while (u != dest) {
    int next = -1;
    for (int v : g.neighbors(u)) {
      if (close(travelled + g.weight(u, v) + to_dest[static_cast<std::size_t>(v)], total)) {
        next = v;
        break;
      }
    }
    if (next < 0) throw Unreachable("shortest-path reconstruction failed");
    travelled += g.weight(u, next);
    out.path.push_back(next);
    u = next;
  }
  out.cost = path_cost(g, out.path);
  return out;
}

std::vector<PathCost> enumerate_simple_paths(const WeightedGraph& g, int source, int dest) {
  check_endpoints(g, source, dest);
  if (g.n_nodes() > kMaxPathNodes) throw SizeCapExceeded("simple-path enumeration capped at 10 nodes");
  std::vector<PathCost> out;
  std::vector<int> path{source};
  std::vector<bool> on_path(static_cast<std::size_t>(g.n_nodes()), false);
  on_path[static_cast<std::size_t>(source)] = true;

  auto dfs = [&](auto&& self, int u) -> void {
    if (u == dest) {
      out.push_back({path, path_cost(g, path)});
      return;
    }
    for (int v : g.neighbors(u)) {
      if (on_path[static_cast<std::size_t>(v)]) continue;
      on_path[static_cast<std::size_t>(v)] = true;
      path.push_back(v);
      self(self, v);
      path.pop_back();
      on_path[static_cast<std::size_t>(v)] = false;
    }
  };
  if (source != dest) dfs(dfs, source);
  return out;
}

OracleResult brute_force_ising_min(const encode::IsingHamiltonian& h) {
  if (h.n_qubits() > kMaxEnumerationQubits) throw SizeCapExceeded("Ising enumeration capped at 20 qubits");
  return minimize_diagonal(h.energies());
}

OracleResult brute_force_qubo_min(const encode::QuboMatrix& q) {
  if (q.dim() > kMaxEnumerationQubits) throw SizeCapExceeded("QUBO enumeration capped at 20 variables");
  const std::size_t dim = std::size_t{1} << q.dim();
  std::vector<double> values(dim);
  for (std::size_t b = 0; b < dim; ++b) values[b] = q.value(b);
  return minimize_diagonal(values);
}

OracleResult brute_force_maxcut(const WeightedGraph& g) {
  if (g.n_nodes() > kMaxEnumerationQubits) throw SizeCapExceeded("Max-Cut enumeration capped at 20 nodes");
  const std::size_t dim = std::size_t{1} << g.n_nodes();
  OracleResult r;
  r.enumeration_size = dim;
  int best = -1;
  for (std::size_t b = 0; b < dim; ++b) {
    const int cut = encode::cut_size(g, b);
    if (cut > best) {
      best = cut;
      r.argmin.clear();
    }
    if (cut == best) r.argmin.push_back(b);
  }
  r.optimum = best;
  return r;
}

}  // namespace qroute::oracle
