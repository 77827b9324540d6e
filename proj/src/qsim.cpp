#include "qroute/qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qroute/rng.hpp"

namespace qroute::qsim {

namespace {

void check_qubit(int q, int n, const char* what) {
  if (q < 0 || q >= n) {
    std::ostringstream os;
    os << what << " qubit " << q << " out of range for " << n << "-qubit state";
    throw InvalidGate(os.str());
  }
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count out of supported range");
  }
  amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::basis_state(int n_qubits, BasisIndex index) {
  StateVector s(n_qubits);
  if (index >= s.dim()) throw std::invalid_argument("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  const std::size_t size = amplitudes.size();
  if (size == 0 || !std::has_single_bit(size)) {
    throw std::invalid_argument("amplitude count must be a power of two");
  }
  StateVector s;
  s.n_qubits_ = std::countr_zero(size);
  s.amps_ = std::move(amplitudes);
  return s;
}

// Complex arithmetic is spelled out in reals below: std::complex operator*
// goes through the NaN-recovering __muldc3 path, which dominates runtime at
// 16 qubits.
void StateVector::apply_single(int q, Complex m00, Complex m01, Complex m10, Complex m11) {
  const std::size_t stride = std::size_t{1} << (n_qubits_ - 1 - q);
  const std::size_t dim = amps_.size();
  const double a_r = m00.real(), a_i = m00.imag();
  const double b_r = m01.real(), b_i = m01.imag();
  const double c_r = m10.real(), c_i = m10.imag();
  const double d_r = m11.real(), d_i = m11.imag();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const double x_r = amps_[i].real(), x_i = amps_[i].imag();
      const double y_r = amps_[i + stride].real(), y_i = amps_[i + stride].imag();
      amps_[i] = {a_r * x_r - a_i * x_i + b_r * y_r - b_i * y_i,
                  a_r * x_i + a_i * x_r + b_r * y_i + b_i * y_r};
      amps_[i + stride] = {c_r * x_r - c_i * x_i + d_r * y_r - d_i * y_i,
                           c_r * x_i + c_i * x_r + d_r * y_i + d_i * y_r};
    }
  }
}

void StateVector::apply(const GateOp& gate) {
  const int n = n_qubits_;
  switch (gate.kind) {
    case GateKind::kRX: {
      check_qubit(gate.target, n, "target");
      const double c = std::cos(gate.angle / 2), s = std::sin(gate.angle / 2);
      apply_single(gate.target, {c, 0}, {0, -s}, {0, -s}, {c, 0});
      return;
    }
    case GateKind::kRY: {
      check_qubit(gate.target, n, "target");
      const double c = std::cos(gate.angle / 2), s = std::sin(gate.angle / 2);
      apply_single(gate.target, {c, 0}, {-s, 0}, {s, 0}, {c, 0});
      return;
    }
    case GateKind::kRZ: {
      check_qubit(gate.target, n, "target");
      const double c = std::cos(gate.angle / 2), s = std::sin(gate.angle / 2);
      apply_single(gate.target, {c, -s}, {0, 0}, {0, 0}, {c, s});
      return;
    }
    case GateKind::kH: {
      check_qubit(gate.target, n, "target");
      const double r = std::numbers::sqrt2 / 2;
      apply_single(gate.target, {r, 0}, {r, 0}, {r, 0}, {-r, 0});
      return;
    }
    case GateKind::kCNOT: {
      if (!gate.control) throw InvalidGate("CNOT requires a control qubit");
      check_qubit(gate.target, n, "target");
      check_qubit(*gate.control, n, "control");
      if (*gate.control == gate.target) throw InvalidGate("CNOT control equals target");
      const std::size_t cmask = std::size_t{1} << (n - 1 - *gate.control);
      const std::size_t tmask = std::size_t{1} << (n - 1 - gate.target);
      for (std::size_t b = 0; b < amps_.size(); ++b) {
        if ((b & cmask) && !(b & tmask)) std::swap(amps_[b], amps_[b | tmask]);
      }
      return;
    }
    case GateKind::kDiagPhase: {
      if (!gate.phases || gate.phases->size() != amps_.size()) {
        throw InvalidGate("diagonal phase vector does not match state dimension");
      }
      const auto& ph = *gate.phases;
      for (std::size_t b = 0; b < amps_.size(); ++b) {
        const double phi = -gate.angle * ph[b];
        const double c = std::cos(phi), s = std::sin(phi);
        const double x_r = amps_[b].real(), x_i = amps_[b].imag();
        amps_[b] = {c * x_r - s * x_i, c * x_i + s * x_r};
      }
      return;
    }
  }
  throw InvalidGate("unknown gate kind");
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const auto& a : amps_) total += std::norm(a);
  return total;
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
  return p;
}

StateVector apply_gate(StateVector state, const GateOp& gate) {
  state.apply(gate);
  return state;
}

double expectation_diagonal(const StateVector& state, std::span<const double> energies) {
  if (energies.size() != state.dim()) {
    throw std::invalid_argument("observable dimension does not match state");
  }
  const auto amps = state.amplitudes();
  double total = 0.0;
  for (std::size_t b = 0; b < amps.size(); ++b) total += std::norm(amps[b]) * energies[b];
  return total;
}

Counts sample_counts(const StateVector& state, std::uint64_t shots, std::uint64_t rng_seed) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  std::vector<double> cumulative(state.dim());
  double running = 0.0;
  for (std::size_t b = 0; b < state.dim(); ++b) {
    running += std::norm(state[b]);
    cumulative[b] = running;
  }
  Rng rng(rng_seed);
  Counts counts;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform01() * running;
    // upper_bound never lands on a zero-probability entry: its cumulative
    // value equals its predecessor's, which is already <= u.
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) {
      it = std::lower_bound(cumulative.begin(), cumulative.end(), running);
    }
    ++counts[static_cast<BasisIndex>(it - cumulative.begin())];
  }
  return counts;
}

BasisIndex most_frequent_bitstring(const Counts& counts) {
  if (counts.empty()) throw std::invalid_argument("empty counts");
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

double parameter_shift_grad(const ParamFunction& circuit_eval, std::span<const double> params,
                            std::size_t index) {
  if (index >= params.size()) throw std::out_of_range("parameter index out of range");
  std::vector<double> shifted(params.begin(), params.end());
  constexpr double kShift = std::numbers::pi / 2;
  shifted[index] = params[index] + kShift;
  const double plus = circuit_eval(shifted);
  shifted[index] = params[index] - kShift;
  const double minus = circuit_eval(shifted);
  return 0.5 * (plus - minus);
}

std::vector<double> parameter_shift_gradient(const ParamFunction& circuit_eval,
                                             std::span<const double> params) {
  std::vector<double> grad(params.size());
  for (std::size_t j = 0; j < params.size(); ++j) {
    grad[j] = parameter_shift_grad(circuit_eval, params, j);
  }
  return grad;
}

std::string to_bitstring(BasisIndex b, int n_qubits) {
  std::string s(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    if (qubit_value(b, q, n_qubits)) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

BasisIndex from_bitstring(std::string_view bits) {
  BasisIndex b = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bitstring must contain only 0/1");
    b = (b << 1) | static_cast<BasisIndex>(c == '1');
  }
  return b;
}

}  // namespace qroute::qsim
