#include "qroute/vqa.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qroute/format.hpp"
#include "qroute/rng.hpp"

namespace qroute::vqa {

using qsim::Complex;
using qsim::GateKind;
using qsim::GateOp;
using qsim::StateVector;

namespace {

constexpr double kShift = std::numbers::pi / 2;

GateOp rotation(RotationAxis axis, int q, double theta) {
  switch (axis) {
    case RotationAxis::kX:
      return GateOp::rx(q, theta);
    case RotationAxis::kY:
      return GateOp::ry(q, theta);
    case RotationAxis::kZ:
      return GateOp::rz(q, theta);
  }
  return GateOp::rx(q, theta);
}

void append_cnot_ring(qsim::Circuit& c, int n) {
  if (n == 2) {
    c.push_back(GateOp::cnot(0, 1));
  } else if (n > 2) {
    for (int q = 0; q < n; ++q) c.push_back(GateOp::cnot(q, (q + 1) % n));
  }
}

// A gate plus how its angle depends on the parameter vector:
// angle = coeff * params[param] when param >= 0.
struct TaggedGate {
  GateOp gate;
  int param = -1;
  double coeff = 0.0;
  // Ising terms of a tagged diagonal-phase gate, used by the shift rule.
  const encode::IsingHamiltonian* terms = nullptr;
};

GateOp inverse(const GateOp& g) {
  GateOp inv = g;
  switch (g.kind) {
    case GateKind::kRX:
    case GateKind::kRY:
    case GateKind::kRZ:
    case GateKind::kDiagPhase:
      inv.angle = -g.angle;
      break;
    case GateKind::kH:
    case GateKind::kCNOT:
      break;
  }
  return inv;
}

// <lambda| G |phi> where G is the generator of a tagged gate: the Pauli of a
// rotation, or the diagonal phase vector.
Complex generator_overlap(const GateOp& g, const StateVector& lambda, const StateVector& phi) {
  const auto l = lambda.amplitudes();
  const auto p = phi.amplitudes();
  const int n = phi.n_qubits();
  Complex total = 0.0;
  if (g.kind == GateKind::kDiagPhase) {
    const auto& ph = *g.phases;
    for (std::size_t b = 0; b < p.size(); ++b) total += std::conj(l[b]) * (ph[b] * p[b]);
    return total;
  }
  const std::size_t mask = std::size_t{1} << (n - 1 - g.target);
  for (std::size_t b = 0; b < p.size(); ++b) {
    const bool one = (b & mask) != 0;
    Complex gp;
    switch (g.kind) {
      case GateKind::kRX:
        gp = p[b ^ mask];
        break;
      case GateKind::kRY:
        gp = one ? Complex{0, 1} * p[b ^ mask] : Complex{0, -1} * p[b ^ mask];
        break;
      case GateKind::kRZ:
        gp = one ? -p[b] : p[b];
        break;
      default:
        throw std::logic_error("gate has no generator");
    }
    total += std::conj(l[b]) * gp;
  }
  return total;
}

std::vector<double> adjoint_gradient(const std::vector<TaggedGate>& circuit, StateVector initial,
                                     std::span<const double> energies, std::size_t n_params) {
  StateVector phi = std::move(initial);
  for (const auto& tg : circuit) phi.apply(tg.gate);

  std::vector<Complex> lam(phi.dim());
  for (std::size_t b = 0; b < phi.dim(); ++b) lam[b] = energies[b] * phi[b];
  StateVector lambda = StateVector::from_amplitudes(std::move(lam));

  std::vector<double> grad(n_params, 0.0);
  for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) {
    if (it->param >= 0) {
      // d/dangle exp(-i angle G') = -i G' U, with G' = P/2 for rotations.
      const Complex ov = generator_overlap(it->gate, lambda, phi);
      const double scale = it->gate.kind == GateKind::kDiagPhase ? 2.0 : 1.0;
      grad[static_cast<std::size_t>(it->param)] += it->coeff * scale * ov.imag();
    }
    const GateOp inv = inverse(it->gate);
    phi.apply(inv);
    lambda.apply(inv);
  }
  return grad;
}

// Multiplies by exp(-i s/2 P) for the Ising term P = Z_i (j < 0) or Z_i Z_j.
void apply_term_rotation(StateVector& state, int i, int j, double s) {
  const int n = state.n_qubits();
  const Complex same{std::cos(s / 2), -std::sin(s / 2)};
  const Complex flipped = std::conj(same);
  state.apply_diagonal([&](qsim::BasisIndex b) {
    int parity = qsim::qubit_value(b, i, n);
    if (j >= 0) parity ^= qsim::qubit_value(b, j, n);
    return parity ? flipped : same;
  });
}

double run_suffix(StateVector state, const std::vector<TaggedGate>& circuit, std::size_t from,
                  std::span<const double> energies) {
  for (std::size_t g = from; g < circuit.size(); ++g) state.apply(circuit[g].gate);
  return qsim::expectation_diagonal(state, energies);
}

// Literal shift rule: every tagged occurrence is shifted by +-pi/2 and the
// rest of the circuit re-run from the cached prefix state.
std::vector<double> shift_gradient(const std::vector<TaggedGate>& circuit, StateVector initial,
                                   std::span<const double> energies, std::size_t n_params) {
  std::vector<double> grad(n_params, 0.0);
  StateVector prefix = std::move(initial);
  for (std::size_t g = 0; g < circuit.size(); ++g) {
    const TaggedGate& tg = circuit[g];
    if (tg.param >= 0 && tg.gate.kind != GateKind::kDiagPhase) {
      GateOp shifted = tg.gate;
      shifted.angle = tg.gate.angle + kShift;
      const double plus = run_suffix(qsim::apply_gate(prefix, shifted), circuit, g + 1, energies);
      shifted.angle = tg.gate.angle - kShift;
      const double minus = run_suffix(qsim::apply_gate(prefix, shifted), circuit, g + 1, energies);
      grad[static_cast<std::size_t>(tg.param)] += tg.coeff * 0.5 * (plus - minus);
    } else if (tg.param >= 0) {
      if (tg.terms == nullptr) throw std::logic_error("diagonal phase gate needs its Ising terms");
      // exp(-i angle H) = prod_t exp(-i (2 angle c_t) P_t / 2); the factors
      // commute, so each term's shift is applied right after the full layer.
      const StateVector after = qsim::apply_gate(prefix, tg.gate);
      const auto& h = *tg.terms;
      const int n = h.n_qubits();
      auto shift_term = [&](int i, int j, double c) {
        if (c == 0.0) return;
        StateVector sp = after;
        apply_term_rotation(sp, i, j, kShift);
        const double plus = run_suffix(std::move(sp), circuit, g + 1, energies);
        StateVector sm = after;
        apply_term_rotation(sm, i, j, -kShift);
        const double minus = run_suffix(std::move(sm), circuit, g + 1, energies);
        grad[static_cast<std::size_t>(tg.param)] += tg.coeff * 2 * c * 0.5 * (plus - minus);
      };
      for (int i = 0; i < n; ++i) shift_term(i, -1, h.h(i));
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) shift_term(i, j, h.J(i, j));
      }
    }
    prefix.apply(tg.gate);
  }
  return grad;
}

std::vector<TaggedGate> tagged_entangler(const EntanglerAnsatzSpec& spec, std::span<const double> params) {
  std::vector<TaggedGate> out;
  for (int l = 0; l < spec.n_layers; ++l) {
    for (int q = 0; q < spec.n_qubits; ++q) {
      const int idx = l * spec.n_qubits + q;
      out.push_back({rotation(spec.axis, q, params[static_cast<std::size_t>(idx)]), idx, 1.0, nullptr});
    }
    qsim::Circuit ring;
    append_cnot_ring(ring, spec.n_qubits);
    for (auto& g : ring) out.push_back({std::move(g), -1, 0.0, nullptr});
  }
  return out;
}

std::vector<TaggedGate> tagged_qaoa(const encode::IsingHamiltonian& h,
                                    std::shared_ptr<const std::vector<double>> energies,
                                    std::span<const double> flat) {
  const QaoaParams params = QaoaParams::from_flat(flat);
  const int n = h.n_qubits();
  const int p = static_cast<int>(params.layers());
  std::vector<TaggedGate> out;
  for (int q = 0; q < n; ++q) out.push_back({GateOp::h(q), -1, 0.0, nullptr});
  for (int k = 0; k < p; ++k) {
    const double gamma = params.gammas[static_cast<std::size_t>(k)];
    const double beta = params.betas[static_cast<std::size_t>(k)];
    out.push_back({GateOp::diag_phase(energies, gamma), k, 1.0, &h});
    for (int q = 0; q < n; ++q) out.push_back({GateOp::rx(q, 2 * beta), p + k, 2.0, nullptr});
  }
  return out;
}

void check_spec(const EntanglerAnsatzSpec& spec, std::span<const double> params) {
  if (spec.n_qubits <= 0 || spec.n_layers <= 0) {
    throw std::invalid_argument("ansatz needs positive qubit and layer counts");
  }
  if (params.size() != spec.parameter_count()) {
    throw std::invalid_argument("entangler ansatz expects " + std::to_string(spec.parameter_count()) +
                                " parameters, got " + std::to_string(params.size()));
  }
}

double l2_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

qsim::Circuit entangler_circuit(const EntanglerAnsatzSpec& spec, std::span<const double> params) {
  check_spec(spec, params);
  qsim::Circuit c;
  for (auto& tg : tagged_entangler(spec, params)) c.push_back(std::move(tg.gate));
  return c;
}

StateVector entangler_ansatz_state(const EntanglerAnsatzSpec& spec, std::span<const double> params) {
  return entangler_ansatz_state(spec, params, StateVector(spec.n_qubits));
}

StateVector entangler_ansatz_state(const EntanglerAnsatzSpec& spec, std::span<const double> params,
                                   StateVector initial) {
  if (initial.n_qubits() != spec.n_qubits) throw std::invalid_argument("initial state has wrong width");
  initial.apply(entangler_circuit(spec, params));
  return initial;
}

std::vector<double> QaoaParams::flat() const {
  std::vector<double> out(gammas);
  out.insert(out.end(), betas.begin(), betas.end());
  return out;
}

QaoaParams QaoaParams::from_flat(std::span<const double> flat) {
  if (flat.empty() || flat.size() % 2 != 0) {
    throw std::invalid_argument("QAOA parameter vector must have even, non-zero length");
  }
  const std::size_t p = flat.size() / 2;
  return {{flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(p)},
          {flat.begin() + static_cast<std::ptrdiff_t>(p), flat.end()}};
}

StateVector qaoa_ansatz_state(const encode::IsingHamiltonian& h_cost, const QaoaParams& params) {
  return qaoa_ansatz_state(h_cost.n_qubits(), std::make_shared<const std::vector<double>>(h_cost.energies()),
                           params);
}

StateVector qaoa_ansatz_state(int n_qubits, std::shared_ptr<const std::vector<double>> energies,
                              const QaoaParams& params) {
  if (params.gammas.size() != params.betas.size() || params.gammas.empty()) {
    throw std::invalid_argument("QAOA needs p >= 1 gammas and as many betas");
  }
  StateVector s(n_qubits);
  for (int q = 0; q < n_qubits; ++q) s.apply(GateOp::h(q));
  for (std::size_t k = 0; k < params.layers(); ++k) {
    s.apply(GateOp::diag_phase(energies, params.gammas[k]));
    for (int q = 0; q < n_qubits; ++q) s.apply(GateOp::rx(q, 2 * params.betas[k]));
  }
  return s;
}

AdamState::AdamState(AdamConfig config, std::size_t n_params)
    : config_(config), m_(n_params, 0.0), v_(n_params, 0.0) {}

void AdamState::step(std::span<double> params, std::span<const double> grads) {
  if (params.size() != m_.size() || grads.size() != m_.size()) {
    throw std::invalid_argument("Adam: parameter/gradient length mismatch");
  }
  ++t_;
  const double c1 = 1.0 - std::pow(config_.beta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(config_.beta2, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    m_[i] = config_.beta1 * m_[i] + (1.0 - config_.beta1) * grads[i];
    v_[i] = config_.beta2 * v_[i] + (1.0 - config_.beta2) * grads[i] * grads[i];
    const double m_hat = m_[i] / c1;
    const double v_hat = v_[i] / c2;
    params[i] -= config_.learning_rate * m_hat / (std::sqrt(v_hat) + config_.epsilon);
  }
}

std::pair<AdamState, std::vector<double>> adam_step(AdamState state, std::vector<double> params,
                                                    std::span<const double> grads) {
  state.step(params, grads);
  return {std::move(state), std::move(params)};
}

std::string to_string(GradientMethod m) {
  return m == GradientMethod::kAdjoint ? "adjoint" : "parameter-shift";
}

GradientMethod gradient_method_from_string(const std::string& s) {
  if (s == "parameter-shift") return GradientMethod::kParameterShift;
  if (s == "adjoint") return GradientMethod::kAdjoint;
  throw std::invalid_argument("unknown gradient method '" + s + "'");
}

std::vector<double> entangler_gradient(const EntanglerAnsatzSpec& spec, std::span<const double> params,
                                       std::span<const double> energies, GradientMethod method) {
  check_spec(spec, params);
  const auto circuit = tagged_entangler(spec, params);
  StateVector init(spec.n_qubits);
  if (energies.size() != init.dim()) throw std::invalid_argument("observable dimension mismatch");
  return method == GradientMethod::kAdjoint ? adjoint_gradient(circuit, std::move(init), energies, params.size())
                                            : shift_gradient(circuit, std::move(init), energies, params.size());
}

std::vector<double> qaoa_gradient(const encode::IsingHamiltonian& h_cost, std::span<const double> flat,
                                  GradientMethod method) {
  auto energies = std::make_shared<const std::vector<double>>(h_cost.energies());
  const auto circuit = tagged_qaoa(h_cost, energies, flat);
  StateVector init(h_cost.n_qubits());
  return method == GradientMethod::kAdjoint ? adjoint_gradient(circuit, std::move(init), *energies, flat.size())
                                            : shift_gradient(circuit, std::move(init), *energies, flat.size());
}

std::string ConvergenceTrace::to_csv() const {
  std::ostringstream os;
  os << "step,energy,param_norm\n";
  for (const auto& r : records) {
    os << r.step << ',' << format_real(r.energy) << ',' << format_real(r.param_norm) << '\n';
  }
  return os.str();
}

namespace {

// Shared optimize-then-measure loop. `prepare` maps parameters to the tagged
// circuit; the initial state is always |0...0>.
template <typename Prepare>
ConvergenceTrace optimize(int n_qubits, std::vector<double> params, int steps, double lr,
                          std::uint64_t shots, std::uint64_t sample_seed, GradientMethod method,
                          std::span<const double> energies, const std::optional<PathProblem>& problem,
                          Prepare&& prepare) {
  if (steps < 0) throw std::invalid_argument("step count must be non-negative");
  auto evaluate = [&](std::span<const double> p) {
    StateVector s(n_qubits);
    for (const auto& tg : prepare(p)) s.apply(tg.gate);
    return s;
  };

  ConvergenceTrace trace;
  trace.initial_params = params;
  AdamState adam(AdamConfig{.learning_rate = lr}, params.size());
  for (int t = 1; t <= steps; ++t) {
    const auto circuit = prepare(params);
    const double energy = qsim::expectation_diagonal(evaluate(params), energies);
    const auto grad = method == GradientMethod::kAdjoint
                          ? adjoint_gradient(circuit, StateVector(n_qubits), energies, params.size())
                          : shift_gradient(circuit, StateVector(n_qubits), energies, params.size());
    trace.records.push_back({t, energy, l2_norm(params)});
    adam.step(params, grad);
  }

  const StateVector final_state = evaluate(params);
  trace.final_params = params;
  trace.final_energy = qsim::expectation_diagonal(final_state, energies);
  trace.counts = qsim::sample_counts(final_state, shots, sample_seed);
  trace.final_bitstring = qsim::most_frequent_bitstring(trace.counts);
  if (problem) {
    trace.decoded = encode::decode_bitstring_to_path(trace.final_bitstring, problem->graph.n_nodes(),
                                                     problem->graph, problem->source, problem->dest);
  }
  return trace;
}

}  // namespace

ConvergenceTrace vqe_solve(const encode::IsingHamiltonian& h, const VqeOptions& options) {
  const EntanglerAnsatzSpec spec{h.n_qubits(), options.layers, options.axis};
  Rng rng(options.seed);
  std::vector<double> params(spec.parameter_count());
  for (auto& p : params) p = rng.uniform(0.0, 2 * std::numbers::pi);
  const std::uint64_t sample_seed = rng.next_u64();
  if (options.initial_params) params = *options.initial_params;
  check_spec(spec, params);

  const auto energies = h.energies();
  return optimize(h.n_qubits(), std::move(params), options.steps, options.learning_rate, options.shots,
                  sample_seed, options.gradient, energies, options.path_problem,
                  [&](std::span<const double> p) { return tagged_entangler(spec, p); });
}

ConvergenceTrace qaoa_solve(const encode::IsingHamiltonian& h_cost, const QaoaOptions& options) {
  if (options.p < 1) throw std::invalid_argument("QAOA needs p >= 1");
  Rng rng(options.seed);
  std::vector<double> params(2 * static_cast<std::size_t>(options.p));
  for (auto& p : params) p = rng.uniform(0.0, std::numbers::pi);
  const std::uint64_t sample_seed = rng.next_u64();
  if (options.initial_params) {
    if (options.initial_params->size() != params.size()) {
      throw std::invalid_argument("QAOA initial parameters must have length 2p");
    }
    params = *options.initial_params;
  }

  auto energies = std::make_shared<const std::vector<double>>(h_cost.energies());
  return optimize(h_cost.n_qubits(), std::move(params), options.steps, options.learning_rate, options.shots,
                  sample_seed, options.gradient, *energies, options.path_problem,
                  [&](std::span<const double> p) { return tagged_qaoa(h_cost, energies, p); });
}

std::optional<double> approximation_ratio(double found_cost, double optimal_cost, bool valid) {
  if (!valid) return std::nullopt;
  if (optimal_cost == 0.0) throw std::invalid_argument("approximation ratio undefined for optimum 0");
  return found_cost / optimal_cost;
}

}  // namespace qroute::vqa
