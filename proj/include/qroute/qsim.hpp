#pragma once

// Ideal statevector simulator with the small gate set the solvers and the
// policy circuit need.
//
// Qubit ordering: qubit 0 is the most significant bit of the basis index, so
// on 3 qubits the basis index 0b100 = 4 is |100>, qubit 0 set.

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qroute::qsim {

using Complex = std::complex<double>;
using BasisIndex = std::uint64_t;

inline constexpr int kMaxQubits = 24;

class InvalidGate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class GateKind { kRX, kRY, kRZ, kH, kCNOT, kDiagPhase };

struct GateOp {
  GateKind kind = GateKind::kH;
  int target = 0;
  std::optional<int> control;
  double angle = 0.0;
  // kDiagPhase only: basis state b picks up exp(-i * angle * (*phases)[b]).
  // Shared so that copying a gate does not copy 2^n doubles.
  std::shared_ptr<const std::vector<double>> phases;

  static GateOp rx(int q, double theta) { return {GateKind::kRX, q, std::nullopt, theta, nullptr}; }
  static GateOp ry(int q, double theta) { return {GateKind::kRY, q, std::nullopt, theta, nullptr}; }
  static GateOp rz(int q, double theta) { return {GateKind::kRZ, q, std::nullopt, theta, nullptr}; }
  static GateOp h(int q) { return {GateKind::kH, q, std::nullopt, 0.0, nullptr}; }
  static GateOp cnot(int control, int target) {
    return {GateKind::kCNOT, target, control, 0.0, nullptr};
  }
  static GateOp diag_phase(std::shared_ptr<const std::vector<double>> phases, double scale) {
    return {GateKind::kDiagPhase, 0, std::nullopt, scale, std::move(phases)};
  }
};

using Circuit = std::vector<GateOp>;

class StateVector {
 public:
  /// |0...0> on n_qubits qubits.
  explicit StateVector(int n_qubits);

  static StateVector basis_state(int n_qubits, BasisIndex index);
  /// Takes amplitudes as given; size must be a power of two. Not renormalized.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  /// In-place gate application. Throws InvalidGate on bad indices.
  void apply(const GateOp& gate);
  void apply(const Circuit& circuit) {
    for (const auto& g : circuit) apply(g);
  }

  /// Multiplies amplitude b by factor(b). The caller keeps |factor| = 1.
  template <typename F>
  void apply_diagonal(F&& factor) {
    for (std::size_t b = 0; b < amps_.size(); ++b) {
      const Complex f = factor(static_cast<BasisIndex>(b));
      const double x_r = amps_[b].real(), x_i = amps_[b].imag();
      amps_[b] = {f.real() * x_r - f.imag() * x_i, f.real() * x_i + f.imag() * x_r};
    }
  }

  double norm_squared() const;
  std::vector<double> probabilities() const;

 private:
  StateVector() = default;

  void apply_single(int q, Complex m00, Complex m01, Complex m10, Complex m11);

  int n_qubits_ = 0;
  std::vector<Complex> amps_;
};

/// Pure form of StateVector::apply.
StateVector apply_gate(StateVector state, const GateOp& gate);

/// Per-basis-state energies of a Z-diagonal operator.
struct DiagonalObservable {
  std::vector<double> energies;
};

/// Sum_b |psi_b|^2 energies[b]. Throws std::invalid_argument on size mismatch.
double expectation_diagonal(const StateVector& state, std::span<const double> energies);
inline double expectation_diagonal(const StateVector& state, const DiagonalObservable& obs) {
  return expectation_diagonal(state, obs.energies);
}

using Counts = std::map<BasisIndex, std::uint64_t>;

/// Draws `shots` computational-basis samples from |psi_b|^2.
Counts sample_counts(const StateVector& state, std::uint64_t shots, std::uint64_t rng_seed);

/// Basis index with the highest count; ties go to the lowest index.
BasisIndex most_frequent_bitstring(const Counts& counts);

using ParamFunction = std::function<double(std::span<const double>)>;

/// Two-term shift rule [E(t + pi/2) - E(t - pi/2)] / 2 for parameter `index`.
/// Exact when that parameter enters the circuit once, as the angle of a
/// rotation exp(-i t P / 2) with P^2 = I.
double parameter_shift_grad(const ParamFunction& circuit_eval, std::span<const double> params,
                            std::size_t index);

/// parameter_shift_grad for every component.
std::vector<double> parameter_shift_gradient(const ParamFunction& circuit_eval,
                                             std::span<const double> params);

/// Bit of qubit q in basis index b (qubit 0 = MSB).
inline int qubit_value(BasisIndex b, int q, int n_qubits) {
  return static_cast<int>((b >> (n_qubits - 1 - q)) & 1U);
}

/// "0110"-style rendering, qubit 0 first.
std::string to_bitstring(BasisIndex b, int n_qubits);
/// Inverse of to_bitstring. Throws std::invalid_argument on non-binary chars.
BasisIndex from_bitstring(std::string_view bits);

}  // namespace qroute::qsim
