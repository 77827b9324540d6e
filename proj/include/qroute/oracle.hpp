#pragma once

// Classical ground truth for every quantum result. These are correctness
// instruments with hard size caps, not scalable solvers.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qroute/encode.hpp"
#include "qroute/graph.hpp"

namespace qroute::oracle {

inline constexpr int kMaxEnumerationQubits = 20;
inline constexpr int kMaxPathNodes = 10;

class SizeCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

class Unreachable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PathCost {
  std::vector<int> path;
  double cost = 0.0;
};

struct OracleResult {
  double optimum = 0.0;
  std::vector<qsim::BasisIndex> argmin;  // ascending
  std::uint64_t enumeration_size = 0;
};

/// Minimum-cost path; among equal-cost paths the lexicographically smallest.
/// Throws Unreachable when dest cannot be reached.
PathCost dijkstra(const WeightedGraph& g, int source, int dest);

/// All simple source -> dest paths in DFS order (neighbors ascending).
/// Empty when dest is unreachable.
std::vector<PathCost> enumerate_simple_paths(const WeightedGraph& g, int source, int dest);

/// Exact minimum energy and every minimizing basis state.
OracleResult brute_force_ising_min(const encode::IsingHamiltonian& h);

/// Exact QUBO minimum over all 2^dim assignments (qubit v -> x_v).
OracleResult brute_force_qubo_min(const encode::QuboMatrix& q);

/// optimum = maximum cut size; argmin lists every optimal partition.
OracleResult brute_force_maxcut(const WeightedGraph& g);

/// Sum of hop weights along a path. Throws GraphError on a missing hop.
double path_cost(const WeightedGraph& g, const std::vector<int>& path);

}  // namespace qroute::oracle
