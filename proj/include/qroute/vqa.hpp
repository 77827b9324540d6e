#pragma once

// Variational solvers: VQE over a basic entangler ansatz and QAOA with
// alternating cost/mixer layers, both trained with Adam.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qroute/encode.hpp"
#include "qroute/graph.hpp"
#include "qroute/qsim.hpp"

namespace qroute::vqa {

enum class RotationAxis { kX, kY, kZ };

/// Per layer: one rotation per qubit about `axis`, then a CNOT ring where
/// qubit q controls (q + 1) mod n. The ring is skipped for a single qubit,
/// and on two qubits it is the single CNOT 0 -> 1 (as in PennyLane's
/// BasicEntanglerLayers, where 1 -> 0 would only duplicate the coupling).
struct EntanglerAnsatzSpec {
  int n_qubits = 1;
  int n_layers = 1;
  RotationAxis axis = RotationAxis::kX;

  std::size_t parameter_count() const {
    return static_cast<std::size_t>(n_qubits) * static_cast<std::size_t>(n_layers);
  }
};

/// Gate list of the ansatz; params[l * n_qubits + q] drives qubit q in layer l.
qsim::Circuit entangler_circuit(const EntanglerAnsatzSpec& spec, std::span<const double> params);

/// The ansatz applied to `initial` (default |0...0>).
qsim::StateVector entangler_ansatz_state(const EntanglerAnsatzSpec& spec, std::span<const double> params);
qsim::StateVector entangler_ansatz_state(const EntanglerAnsatzSpec& spec, std::span<const double> params,
                                         qsim::StateVector initial);

struct QaoaParams {
  std::vector<double> gammas;
  std::vector<double> betas;

  std::size_t layers() const { return gammas.size(); }
  /// [gamma_1..gamma_p, beta_1..beta_p]
  std::vector<double> flat() const;
  static QaoaParams from_flat(std::span<const double> flat);
};

/// |+>^n, then for each layer exp(-i gamma H_C) and RX(2 beta) on every qubit.
qsim::StateVector qaoa_ansatz_state(const encode::IsingHamiltonian& h_cost, const QaoaParams& params);
qsim::StateVector qaoa_ansatz_state(int n_qubits, std::shared_ptr<const std::vector<double>> energies,
                                    const QaoaParams& params);

struct AdamConfig {
  double learning_rate = 0.05;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Bias-corrected Adam.
class AdamState {
 public:
  AdamState(AdamConfig config, std::size_t n_params);

  /// params -= lr * m_hat / (sqrt(v_hat) + eps). Throws std::invalid_argument
  /// on length mismatch.
  void step(std::span<double> params, std::span<const double> grads);

  const AdamConfig& config() const { return config_; }
  std::uint64_t step_count() const { return t_; }
  std::span<const double> first_moment() const { return m_; }
  std::span<const double> second_moment() const { return v_; }

 private:
  AdamConfig config_;
  std::vector<double> m_;
  std::vector<double> v_;
  std::uint64_t t_ = 0;
};

/// Functional form: returns the advanced optimizer and updated parameters.
std::pair<AdamState, std::vector<double>> adam_step(AdamState state, std::vector<double> params,
                                                    std::span<const double> grads);

enum class GradientMethod {
  /// Two shifted circuit evaluations per rotation-gate occurrence.
  kParameterShift,
  /// One forward and one reverse sweep; same analytic derivative.
  kAdjoint,
};

std::string to_string(GradientMethod m);
GradientMethod gradient_method_from_string(const std::string& s);

/// dE/dtheta for E = <psi(theta)|H|psi(theta)>, psi the entangler ansatz.
std::vector<double> entangler_gradient(const EntanglerAnsatzSpec& spec, std::span<const double> params,
                                       std::span<const double> energies, GradientMethod method);

/// Gradient over the flat [gammas, betas] vector. Parameter shift treats the
/// cost layer as its Ising terms exp(-i gamma c P), P in {Z_i, Z_i Z_j}, and
/// each mixer as n RX(2 beta) gates, shifting every occurrence.
std::vector<double> qaoa_gradient(const encode::IsingHamiltonian& h_cost, std::span<const double> flat,
                                  GradientMethod method);

/// Shortest-path instance a solver result is decoded against.
struct PathProblem {
  WeightedGraph graph;
  int source = 0;
  int dest = 0;
};

struct TraceRecord {
  int step = 0;
  double energy = 0.0;
  double param_norm = 0.0;
};

struct ConvergenceTrace {
  /// One per optimization step: energy at the parameters the step started from.
  std::vector<TraceRecord> records;
  std::vector<double> initial_params;
  std::vector<double> final_params;
  double final_energy = 0.0;
  qsim::Counts counts;
  qsim::BasisIndex final_bitstring = 0;
  std::optional<encode::PathAssignment> decoded;

  /// "step,energy,param_norm" with a header row.
  std::string to_csv() const;
};

struct VqeOptions {
  int layers = 3;
  RotationAxis axis = RotationAxis::kX;
  int steps = 400;
  double learning_rate = 0.05;
  std::uint64_t seed = 0;
  std::uint64_t shots = 4096;
  GradientMethod gradient = GradientMethod::kParameterShift;
  /// Overrides the seeded uniform [0, 2pi) draw.
  std::optional<std::vector<double>> initial_params;
  std::optional<PathProblem> path_problem;
};

struct QaoaOptions {
  int p = 2;
  int steps = 400;
  double learning_rate = 0.05;
  std::uint64_t seed = 0;
  std::uint64_t shots = 4096;
  GradientMethod gradient = GradientMethod::kParameterShift;
  /// Flat [gammas, betas]; overrides the seeded uniform [0, pi) draw.
  std::optional<std::vector<double>> initial_params;
  std::optional<PathProblem> path_problem;
};

ConvergenceTrace vqe_solve(const encode::IsingHamiltonian& h, const VqeOptions& options);
ConvergenceTrace qaoa_solve(const encode::IsingHamiltonian& h_cost, const QaoaOptions& options);

/// found / optimal, or nullopt (reported as "Invalid") when the solution is
/// not valid. Throws std::invalid_argument on optimal == 0.
std::optional<double> approximation_ratio(double found_cost, double optimal_cost, bool valid);

}  // namespace qroute::vqa
