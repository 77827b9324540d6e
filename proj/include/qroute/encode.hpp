#pragma once

// QUBO / Ising encodings of the routing and Max-Cut problems.
//
// Path problems use N^2 binary variables x(i, k) = "node i sits at position
// k", flattened as var(i, k) = i * N + k. Variable v is read from qubit v of
// a measured basis state, so x(v) = 1 exactly when qubit v reads 1, and the
// Ising spin is z(v) = 1 - 2 x(v).

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qroute/graph.hpp"
#include "qroute/qsim.hpp"

namespace qroute::encode {

using qsim::BasisIndex;

inline constexpr int var_index(int node, int position, int n_nodes) {
  return node * n_nodes + position;
}

/// f(x) = x^T Q x + constant over binary x, Q kept symmetric.
class QuboMatrix {
 public:
  explicit QuboMatrix(int dim);

  int dim() const { return dim_; }
  double at(int i, int j) const { return q_[static_cast<std::size_t>(i * dim_ + j)]; }
  double constant() const { return constant_; }

  void add_linear(int i, double coeff);
  /// coeff * x_i * x_j; split evenly over (i, j) and (j, i). i == j folds
  /// into the linear term since x^2 = x.
  void add_quadratic(int i, int j, double coeff);
  void add_constant(double c) { constant_ += c; }

  double value(std::span<const int> x) const;
  /// Value at the assignment read from basis index b (qubit v -> x_v).
  double value(BasisIndex b) const;

 private:
  int dim_;
  std::vector<double> q_;
  double constant_ = 0.0;
};

/// H = sum_i h_i Z_i + sum_{i<j} J_ij Z_i Z_j + constant.
class IsingHamiltonian {
 public:
  explicit IsingHamiltonian(int n_qubits);

  int n_qubits() const { return n_; }
  double h(int i) const { return h_[static_cast<std::size_t>(i)]; }
  double J(int i, int j) const { return j_[static_cast<std::size_t>(i * n_ + j)]; }
  double constant() const { return constant_; }
  std::span<const double> fields() const { return h_; }

  void set_h(int i, double value) { h_[static_cast<std::size_t>(i)] = value; }
  /// Sets both J_ij and J_ji. Throws std::invalid_argument when i == j.
  void set_J(int i, int j, double value);
  void add_J(int i, int j, double value) { set_J(i, j, J(i, j) + value); }
  void set_constant(double c) { constant_ = c; }

  /// Energy of basis state b (qubit v reading 0 means z_v = +1).
  double energy(BasisIndex b) const;
  /// All 2^n diagonal energies, indexed by basis state.
  std::vector<double> energies() const;

 private:
  int n_;
  std::vector<double> h_;
  std::vector<double> j_;
  double constant_ = 0.0;
};

/// Energy for a "0101"-style bitstring, qubit 0 first. Throws
/// std::invalid_argument when the length differs from n_qubits.
double ising_energy(const IsingHamiltonian& h, std::string_view bitstring);

/// Position-encoded shortest-path QUBO: path cost over both orientations of
/// every edge, plus penalty times (start, end, one-node-per-position,
/// node-at-most-once, and non-edge hop) terms.
QuboMatrix build_shortest_path_qubo(const WeightedGraph& g, int source, int dest, double penalty);

/// Twice the costliest simple source -> dest path. Throws GraphError if the
/// graph is disconnected.
double penalty_coefficient(const WeightedGraph& g, int source, int dest);

IsingHamiltonian qubo_to_ising(const QuboMatrix& q);

/// sum over edges (Z_i Z_j - 1) / 2; edge weights are ignored.
IsingHamiltonian build_maxcut_hamiltonian(const WeightedGraph& g);

/// Number of edges cut by the partition encoded in b (qubit i = side of node i).
int cut_size(const WeightedGraph& g, BasisIndex b);

enum class ViolationKind { kStartPoint, kEndPoint, kPositionUniqueness, kNodeUniqueness, kMissingEdge };

struct Violation {
  ViolationKind kind;
  int index = -1;  // position for position/edge checks, node for node checks

  friend bool operator==(const Violation&, const Violation&) = default;
};

std::string to_string(ViolationKind kind);

struct PathAssignment {
  /// Node at each position, -1 where the position is empty or ambiguous.
  std::vector<int> nodes;
  bool valid = false;
  std::vector<Violation> violations;
  /// Sum of hop weights; set only for valid paths.
  std::optional<double> cost;

  std::size_t count(ViolationKind kind) const;
  std::string describe() const;
};

PathAssignment decode_bitstring_to_path(BasisIndex bits, int n_nodes, const WeightedGraph& g,
                                        int source, int dest);

/// Basis index whose x(path[k], k) = 1 for each position k.
BasisIndex encode_path(std::span<const int> path, int n_nodes);

}  // namespace qroute::encode
