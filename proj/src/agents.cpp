#include "qroute/agents.hpp"

#include <algorithm>
#include <bit>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qroute/format.hpp"

namespace qroute::agents {

int qubits_for(int n_nodes) {
  if (n_nodes < 2) throw std::invalid_argument("policy needs at least 2 nodes");
  return std::bit_width(static_cast<unsigned>(n_nodes - 1));
}

PolicyCircuit PolicyCircuit::create(int n_nodes, int n_layers, Rng& rng) {
  if (n_layers < 1) throw std::invalid_argument("policy needs at least one layer");
  PolicyCircuit pc{n_nodes, qubits_for(n_nodes), n_layers, {}};
  pc.params.resize(pc.spec().parameter_count());
  for (auto& p : pc.params) p = rng.uniform(0.0, 2 * std::numbers::pi);
  return pc;
}

qsim::StateVector encode_state(const netenv::EnvState& state, int n_qubits) {
  const int n = state.n_nodes;
  if (n > (1 << n_qubits)) throw std::invalid_argument("too few qubits for the node count");
  const double features[3] = {static_cast<double>(state.current), static_cast<double>(state.dest),
                              static_cast<double>(state.degree(state.current))};
  qsim::StateVector s(n_qubits);
  for (int i = 0; i < 3; ++i) {
    s.apply(qsim::GateOp::ry(i % n_qubits, std::numbers::pi * features[i] / n));
  }
  return s;
}

namespace {

void check_params(const PolicyCircuit& pc) {
  if (pc.params.size() != pc.spec().parameter_count()) {
    throw std::invalid_argument("policy parameter count does not match its layers");
  }
}

std::vector<double> probabilities_at(const PolicyCircuit& pc, const qsim::StateVector& encoded,
                                     std::span<const double> params) {
  return vqa::entangler_ansatz_state(pc.spec(), params, encoded).probabilities();
}

}  // namespace

std::vector<double> raw_action_probabilities(const PolicyCircuit& pc, const netenv::EnvState& state) {
  check_params(pc);
  return probabilities_at(pc, encode_state(state, pc.n_qubits), pc.params);
}

std::vector<double> policy_distribution(const PolicyCircuit& pc, const netenv::EnvState& state) {
  auto p = raw_action_probabilities(pc, state);
  const double floor = kSmoothing / static_cast<double>(p.size());
  for (auto& x : p) x = (1.0 - kSmoothing) * x + floor;
  return p;
}

int sample_action(std::span<const double> dist, Rng& rng) {
  if (dist.empty()) throw std::invalid_argument("empty action distribution");
  double total = 0.0;
  for (double p : dist) total += p;
  const double u = rng.uniform01() * total;
  double running = 0.0;
  for (std::size_t a = 0; a < dist.size(); ++a) {
    running += dist[a];
    if (u < running) return static_cast<int>(a);
  }
  // Rounding left u at the very top; return the last action with mass.
  for (std::size_t a = dist.size(); a-- > 0;) {
    if (dist[a] > 0.0) return static_cast<int>(a);
  }
  return 0;
}

std::vector<std::vector<double>> probability_jacobian(const PolicyCircuit& pc, const netenv::EnvState& state) {
  check_params(pc);
  const auto encoded = encode_state(state, pc.n_qubits);
  const std::size_t n_actions = static_cast<std::size_t>(pc.action_count());
  std::vector<std::vector<double>> jac(n_actions, std::vector<double>(pc.params.size(), 0.0));
  std::vector<double> shifted = pc.params;
  constexpr double kShift = std::numbers::pi / 2;
  for (std::size_t j = 0; j < pc.params.size(); ++j) {
    shifted[j] = pc.params[j] + kShift;
    const auto plus = probabilities_at(pc, encoded, shifted);
    shifted[j] = pc.params[j] - kShift;
    const auto minus = probabilities_at(pc, encoded, shifted);
    shifted[j] = pc.params[j];
    for (std::size_t a = 0; a < n_actions; ++a) jac[a][j] = 0.5 * (plus[a] - minus[a]);
  }
  return jac;
}

std::vector<double> log_prob_gradient(const PolicyCircuit& pc, const netenv::EnvState& state, int action) {
  if (action < 0 || action >= pc.action_count()) throw std::invalid_argument("action index out of range");
  const auto dist = policy_distribution(pc, state);
  const auto jac = probability_jacobian(pc, state);
  const auto a = static_cast<std::size_t>(action);
  std::vector<double> grad(pc.params.size());
  for (std::size_t j = 0; j < grad.size(); ++j) grad[j] = (1.0 - kSmoothing) * jac[a][j] / dist[a];
  return grad;
}

std::vector<double> discounted_returns(std::span<const double> rewards, double gamma) {
  std::vector<double> g(rewards.size());
  double running = 0.0;
  for (std::size_t t = rewards.size(); t-- > 0;) {
    running = rewards[t] + gamma * running;
    g[t] = running;
  }
  return g;
}

void Trajectory::compute_returns(double gamma) {
  std::vector<double> rewards;
  rewards.reserve(steps.size());
  for (const auto& s : steps) rewards.push_back(s.reward);
  returns = discounted_returns(rewards, gamma);
}

double Trajectory::total_reward() const {
  double total = 0.0;
  for (const auto& s : steps) total += s.reward;
  return total;
}

void reinforce_update(PolicyCircuit& pc, const Trajectory& trajectory, vqa::AdamState& optimizer) {
  if (trajectory.steps.empty()) throw std::invalid_argument("REINFORCE update on an empty trajectory");
  if (trajectory.returns.size() != trajectory.steps.size()) {
    throw std::invalid_argument("trajectory returns not computed");
  }
  std::vector<double> ascent(pc.params.size(), 0.0);
  for (std::size_t t = 0; t < trajectory.steps.size(); ++t) {
    const double g = trajectory.returns[t];
    if (g == 0.0) continue;
    const auto grad = log_prob_gradient(pc, trajectory.steps[t].state, trajectory.steps[t].action);
    for (std::size_t j = 0; j < ascent.size(); ++j) ascent[j] += g * grad[j];
  }
  // Adam minimizes, so feed it the negated ascent direction.
  for (auto& x : ascent) x = -x;
  optimizer.step(pc.params, ascent);
}

void LearningCurve::add(double total_reward, bool success, int length) {
  EpisodeRecord r;
  r.episode = static_cast<int>(records.size()) + 1;
  r.total_reward = total_reward;
  r.success = success;
  r.length = length;
  records.push_back(r);

  const std::size_t end = records.size();
  const std::size_t begin = end > static_cast<std::size_t>(window) ? end - static_cast<std::size_t>(window) : 0;
  double wins = 0.0, reward = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    wins += records[i].success ? 1.0 : 0.0;
    reward += records[i].total_reward;
  }
  const auto count = static_cast<double>(end - begin);
  records.back().window_success_rate = wins / count;
  records.back().window_mean_reward = reward / count;
  records.back().window_full = end >= static_cast<std::size_t>(window);
}

std::string LearningCurve::to_csv() const {
  std::ostringstream os;
  os << "episode,total_reward,success,length,window_success_rate,window_mean_reward\n";
  for (const auto& r : records) {
    os << r.episode << ',' << format_real(r.total_reward) << ',' << (r.success ? 1 : 0) << ',' << r.length << ','
       << format_real(r.window_success_rate) << ',' << format_real(r.window_mean_reward) << '\n';
  }
  return os.str();
}

LearningCurve train(netenv::DynamicNetwork& env, PolicyCircuit& pc, const TrainConfig& config,
                    const TrainHooks& hooks, std::vector<netenv::StepLog>* log) {
  if (config.episodes < 1) throw std::invalid_argument("training needs at least one episode");
  check_params(pc);
  Rng rng(config.seed);
  vqa::AdamState adam(vqa::AdamConfig{.learning_rate = config.learning_rate}, pc.params.size());
  LearningCurve curve;
  curve.window = config.window;

  for (int episode = 1; episode <= config.episodes; ++episode) {
    Trajectory traj;
    netenv::EnvState state = env.reset();
    bool success = false;
    while (!env.done()) {
      const auto dist = policy_distribution(pc, state);
      if (hooks.on_decision) hooks.on_decision(state, dist);
      const int action = sample_action(dist, rng);
      const auto out = env.step(action);
      traj.steps.push_back({state, action, out.reward});
      if (log) {
        log->push_back({episode, out.next_state.step_count, state.current, state.dest, action, out.reward,
                        out.done_reason});
      }
      success = out.done_reason == netenv::DoneReason::kReached;
      state = out.next_state;
    }
    traj.compute_returns(config.gamma);
    if (hooks.on_episode) hooks.on_episode(traj);
    reinforce_update(pc, traj, adam);
    curve.add(traj.total_reward(), success, static_cast<int>(traj.steps.size()));
  }
  return curve;
}

EpisodeResult random_agent_rollout(netenv::DynamicNetwork& env, Rng& rng, int episode_index,
                                   std::vector<netenv::StepLog>* log) {
  EpisodeResult res;
  while (!env.done()) {
    const auto& state = env.state();
    const int u = state.current;
    const int dest = state.dest;
    const auto options = env.graph().neighbors(u);
    const int action = options.empty() ? u : options[rng.below(options.size())];
    const auto out = env.step(action);
    res.total_reward += out.reward;
    ++res.length;
    if (log) log->push_back({episode_index, out.next_state.step_count, u, dest, action, out.reward, out.done_reason});
    res.success = out.done_reason == netenv::DoneReason::kReached;
  }
  return res;
}

EpisodeResult random_agent_episode(netenv::DynamicNetwork& env, Rng& rng, int episode_index,
                                   std::vector<netenv::StepLog>* log) {
  env.reset();
  return random_agent_rollout(env, rng, episode_index, log);
}

LearningCurve run_random_baseline(netenv::DynamicNetwork& env, int episodes, std::uint64_t seed, int window,
                                  std::vector<netenv::StepLog>* log) {
  if (episodes < 1) throw std::invalid_argument("baseline needs at least one episode");
  Rng rng(seed);
  LearningCurve curve;
  curve.window = window;
  for (int e = 1; e <= episodes; ++e) {
    const auto r = random_agent_episode(env, rng, e, log);
    curve.add(r.total_reward, r.success, r.length);
  }
  return curve;
}

}  // namespace qroute::agents
