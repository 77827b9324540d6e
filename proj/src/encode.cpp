#include "qroute/encode.hpp"

#include <sstream>
#include <stdexcept>

#include "qroute/oracle.hpp"

namespace qroute::encode {

QuboMatrix::QuboMatrix(int dim) : dim_(dim) {
  if (dim <= 0) throw std::invalid_argument("QUBO dimension must be positive");
  q_.assign(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), 0.0);
}

void QuboMatrix::add_linear(int i, double coeff) {
  q_[static_cast<std::size_t>(i * dim_ + i)] += coeff;
}

void QuboMatrix::add_quadratic(int i, int j, double coeff) {
  if (i == j) {
    add_linear(i, coeff);
    return;
  }
  q_[static_cast<std::size_t>(i * dim_ + j)] += coeff / 2;
  q_[static_cast<std::size_t>(j * dim_ + i)] += coeff / 2;
}

double QuboMatrix::value(std::span<const int> x) const {
  if (x.size() != static_cast<std::size_t>(dim_)) {
    throw std::invalid_argument("assignment length does not match QUBO dimension");
  }
  double total = constant_;
  for (int i = 0; i < dim_; ++i) {
    if (!x[static_cast<std::size_t>(i)]) continue;
    total += at(i, i);
    for (int j = i + 1; j < dim_; ++j) {
      if (x[static_cast<std::size_t>(j)]) total += 2 * at(i, j);
    }
  }
  return total;
}

double QuboMatrix::value(BasisIndex b) const {
  std::vector<int> x(static_cast<std::size_t>(dim_));
  for (int v = 0; v < dim_; ++v) x[static_cast<std::size_t>(v)] = qsim::qubit_value(b, v, dim_);
  return value(x);
}

IsingHamiltonian::IsingHamiltonian(int n_qubits) : n_(n_qubits) {
  if (n_qubits <= 0) throw std::invalid_argument("Ising model needs at least one qubit");
  h_.assign(static_cast<std::size_t>(n_qubits), 0.0);
  j_.assign(static_cast<std::size_t>(n_qubits) * static_cast<std::size_t>(n_qubits), 0.0);
}

void IsingHamiltonian::set_J(int i, int j, double value) {
  if (i == j) throw std::invalid_argument("Ising couplings have zero diagonal");
  j_[static_cast<std::size_t>(i * n_ + j)] = value;
  j_[static_cast<std::size_t>(j * n_ + i)] = value;
}

double IsingHamiltonian::energy(BasisIndex b) const {
  double total = constant_;
  for (int i = 0; i < n_; ++i) {
    const double zi = qsim::qubit_value(b, i, n_) ? -1.0 : 1.0;
    total += h(i) * zi;
    for (int j = i + 1; j < n_; ++j) {
      const double zj = qsim::qubit_value(b, j, n_) ? -1.0 : 1.0;
      total += J(i, j) * zi * zj;
    }
  }
  return total;
}

std::vector<double> IsingHamiltonian::energies() const {
  struct Coupling {
    int i, j;
    double value;
  };
  std::vector<Coupling> couplings;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (J(i, j) != 0.0) couplings.push_back({i, j, J(i, j)});
    }
  }
  const std::size_t dim = std::size_t{1} << n_;
  std::vector<double> out(dim);
  std::vector<double> z(static_cast<std::size_t>(n_));
  for (std::size_t b = 0; b < dim; ++b) {
    double total = constant_;
    for (int i = 0; i < n_; ++i) {
      z[static_cast<std::size_t>(i)] = qsim::qubit_value(b, i, n_) ? -1.0 : 1.0;
      total += h_[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(i)];
    }
    for (const auto& c : couplings) {
      total += c.value * z[static_cast<std::size_t>(c.i)] * z[static_cast<std::size_t>(c.j)];
    }
    out[b] = total;
  }
  return out;
}

double ising_energy(const IsingHamiltonian& h, std::string_view bitstring) {
  if (bitstring.size() != static_cast<std::size_t>(h.n_qubits())) {
    throw std::invalid_argument("bitstring length does not match qubit count");
  }
  return h.energy(qsim::from_bitstring(bitstring));
}

QuboMatrix build_shortest_path_qubo(const WeightedGraph& g, int source, int dest, double penalty) {
  const int n = g.n_nodes();
  if (source < 0 || source >= n || dest < 0 || dest >= n) {
    throw std::invalid_argument("source/dest out of range");
  }
  if (source == dest) throw std::invalid_argument("source and dest must differ");
  if (!(penalty > 0.0)) throw std::invalid_argument("penalty must be positive");

  QuboMatrix q(n * n);
  auto x = [n](int node, int pos) { return var_index(node, pos, n); };

  // Hop cost, or a penalty for hopping between non-adjacent nodes. Ordered
  // pairs, so each undirected edge is counted in both orientations.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double w = g.has_edge(i, j) ? g.weight(i, j) : penalty;
      for (int k = 0; k + 1 < n; ++k) q.add_quadratic(x(i, k), x(j, k + 1), w);
    }
  }

  // (1 - x)^2 = 1 - x for binary x.
  q.add_constant(penalty);
  q.add_linear(x(source, 0), -penalty);
  q.add_constant(penalty);
  q.add_linear(x(dest, n - 1), -penalty);

  // (1 - sum_i x(i,k))^2 = 1 - sum_i x(i,k) + 2 sum_{i<j} x(i,k) x(j,k)
  for (int k = 0; k < n; ++k) {
    q.add_constant(penalty);
    for (int i = 0; i < n; ++i) {
      q.add_linear(x(i, k), -penalty);
      for (int j = i + 1; j < n; ++j) q.add_quadratic(x(i, k), x(j, k), 2 * penalty);
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      for (int kk = k + 1; kk < n; ++kk) q.add_quadratic(x(i, k), x(i, kk), penalty);
    }
  }
  return q;
}

double penalty_coefficient(const WeightedGraph& g, int source, int dest) {
  if (!g.connected()) throw GraphError("penalty calibration needs a connected graph");
  double max_cost = 0.0;
  for (const auto& p : oracle::enumerate_simple_paths(g, source, dest)) {
    max_cost = std::max(max_cost, p.cost);
  }
  return 2.0 * max_cost;
}

IsingHamiltonian qubo_to_ising(const QuboMatrix& q) {
  const int n = q.dim();
  IsingHamiltonian h(n);
  double constant = q.constant();
  for (int i = 0; i < n; ++i) {
    // Q_ii x_i = Q_ii (1 - z_i) / 2
    double field = -q.at(i, i) / 2;
    constant += q.at(i, i) / 2;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      // Pair weight (Q_ij + Q_ji) x_i x_j = 2 Q_ij (1 - z_i - z_j + z_i z_j) / 4,
      // shared between the (i, j) and (j, i) passes.
      field -= q.at(i, j) / 2;
      if (j > i) {
        h.set_J(i, j, q.at(i, j) / 2);
        constant += q.at(i, j) / 2;
      }
    }
    h.set_h(i, field);
  }
  h.set_constant(constant);
  return h;
}

IsingHamiltonian build_maxcut_hamiltonian(const WeightedGraph& g) {
  if (g.n_nodes() == 0 || g.edge_count() == 0) {
    throw std::invalid_argument("Max-Cut needs a graph with at least one edge");
  }
  IsingHamiltonian h(g.n_nodes());
  for (const auto& e : g.edges()) h.add_J(e.u, e.v, 0.5);
  h.set_constant(-0.5 * static_cast<double>(g.edge_count()));
  return h;
}

int cut_size(const WeightedGraph& g, BasisIndex b) {
  const int n = g.n_nodes();
  int cut = 0;
  for (const auto& e : g.edges()) {
    if (qsim::qubit_value(b, e.u, n) != qsim::qubit_value(b, e.v, n)) ++cut;
  }
  return cut;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kStartPoint:
      return "start";
    case ViolationKind::kEndPoint:
      return "end";
    case ViolationKind::kPositionUniqueness:
      return "position";
    case ViolationKind::kNodeUniqueness:
      return "node";
    case ViolationKind::kMissingEdge:
      return "edge";
  }
  return "unknown";
}

std::size_t PathAssignment::count(ViolationKind kind) const {
  std::size_t c = 0;
  for (const auto& v : violations) c += v.kind == kind ? 1 : 0;
  return c;
}

std::string PathAssignment::describe() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (k) os << ",";
    if (nodes[k] < 0) {
      os << "?";
    } else {
      os << nodes[k];
    }
  }
  os << "] ";
  if (valid) {
    os << "valid cost=" << *cost;
    return os.str();
  }
  os << "invalid:";
  for (const auto& v : violations) {
    os << " " << to_string(v.kind);
    if (v.index >= 0) os << "@" << v.index;
  }
  return os.str();
}

PathAssignment decode_bitstring_to_path(BasisIndex bits, int n_nodes, const WeightedGraph& g,
                                        int source, int dest) {
  const int n = n_nodes;
  const int n_vars = n * n;
  auto x = [&](int node, int pos) { return qsim::qubit_value(bits, var_index(node, pos, n), n_vars); };

  PathAssignment out;
  out.nodes.assign(static_cast<std::size_t>(n), -1);

  if (!x(source, 0)) out.violations.push_back({ViolationKind::kStartPoint, 0});
  if (!x(dest, n - 1)) out.violations.push_back({ViolationKind::kEndPoint, n - 1});

  for (int k = 0; k < n; ++k) {
    int occupants = 0;
    int who = -1;
    for (int i = 0; i < n; ++i) {
      if (x(i, k)) {
        ++occupants;
        who = i;
      }
    }
    if (occupants == 1) {
      out.nodes[static_cast<std::size_t>(k)] = who;
    } else {
      out.violations.push_back({ViolationKind::kPositionUniqueness, k});
    }
  }

  for (int i = 0; i < n; ++i) {
    int visits = 0;
    for (int k = 0; k < n; ++k) visits += x(i, k);
    if (visits > 1) out.violations.push_back({ViolationKind::kNodeUniqueness, i});
  }

  double cost = 0.0;
  for (int k = 0; k + 1 < n; ++k) {
    const int a = out.nodes[static_cast<std::size_t>(k)];
    const int b = out.nodes[static_cast<std::size_t>(k + 1)];
    if (a < 0 || b < 0) continue;
    if (!g.has_edge(a, b)) {
      out.violations.push_back({ViolationKind::kMissingEdge, k});
    } else {
      cost += g.weight(a, b);
    }
  }

  out.valid = out.violations.empty();
  if (out.valid) out.cost = cost;
  return out;
}

BasisIndex encode_path(std::span<const int> path, int n_nodes) {
  if (path.size() > static_cast<std::size_t>(n_nodes)) {
    throw std::invalid_argument("path longer than the number of positions");
  }
  const int n_vars = n_nodes * n_nodes;
  BasisIndex b = 0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const int v = var_index(path[k], static_cast<int>(k), n_nodes);
    b |= BasisIndex{1} << (n_vars - 1 - v);
  }
  return b;
}

}  // namespace qroute::encode
