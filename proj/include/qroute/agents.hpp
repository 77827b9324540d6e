#pragma once

// REINFORCE with a parameterized-circuit policy, and the uniform random
// neighbor baseline it is compared against.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qroute/netenv.hpp"
#include "qroute/qsim.hpp"
#include "qroute/rng.hpp"
#include "qroute/vqa.hpp"

namespace qroute::agents {

/// Floor mixed into every action probability so log-probabilities stay finite.
inline constexpr double kSmoothing = 1e-3;

/// ceil(log2 n_nodes) qubits, an angle-encoding layer for (u, d, deg(u)),
/// then the entangler ansatz with n_layers layers.
struct PolicyCircuit {
  int n_nodes = 0;
  int n_qubits = 0;
  int n_layers = 0;
  std::vector<double> params;

  /// Parameters uniform in [0, 2pi) from rng.
  static PolicyCircuit create(int n_nodes, int n_layers, Rng& rng);

  vqa::EntanglerAnsatzSpec spec() const { return {n_qubits, n_layers, vqa::RotationAxis::kX}; }
  int action_count() const { return 1 << n_qubits; }
};

int qubits_for(int n_nodes);

/// RY(pi * f / N) for the features f = (u, d, deg(u)), feature i on qubit
/// i mod n_qubits, starting from |0...0>.
qsim::StateVector encode_state(const netenv::EnvState& state, int n_qubits);

/// Unsmoothed basis probabilities |psi_a|^2 of the policy circuit.
std::vector<double> raw_action_probabilities(const PolicyCircuit& pc, const netenv::EnvState& state);

/// (1 - eps) |psi_a|^2 + eps / 2^n.
std::vector<double> policy_distribution(const PolicyCircuit& pc, const netenv::EnvState& state);

/// Categorical draw.
int sample_action(std::span<const double> dist, Rng& rng);

/// Row a holds d|psi_a|^2 / dtheta from the parameter-shift rule; one pair
/// of shifted circuits serves every action.
std::vector<std::vector<double>> probability_jacobian(const PolicyCircuit& pc, const netenv::EnvState& state);

/// d/dtheta log p~_a = (1 - eps) d|psi_a|^2 / p~_a.
std::vector<double> log_prob_gradient(const PolicyCircuit& pc, const netenv::EnvState& state, int action);

struct Transition {
  netenv::EnvState state;
  int action = 0;
  double reward = 0.0;
};

struct Trajectory {
  std::vector<Transition> steps;
  std::vector<double> returns;

  /// G_t = r_{t+1} + gamma G_{t+1}, computed backward.
  void compute_returns(double gamma);
  double total_reward() const;
};

std::vector<double> discounted_returns(std::span<const double> rewards, double gamma);

/// theta <- Adam(theta, -sum_t G_t grad log pi(a_t|s_t)). Throws
/// std::invalid_argument for an empty trajectory or missing returns.
void reinforce_update(PolicyCircuit& pc, const Trajectory& trajectory, vqa::AdamState& optimizer);

struct EpisodeRecord {
  int episode = 0;
  double total_reward = 0.0;
  bool success = false;
  int length = 0;
  double window_success_rate = 0.0;
  double window_mean_reward = 0.0;
  /// False while fewer than `window` episodes have been seen.
  bool window_full = false;
};

struct LearningCurve {
  int window = 100;
  std::vector<EpisodeRecord> records;

  /// Appends an episode and fills its trailing-window statistics.
  void add(double total_reward, bool success, int length);
  /// "episode,total_reward,success,length,window_success_rate,window_mean_reward"
  std::string to_csv() const;
};

struct TrainConfig {
  int episodes = 3000;
  double gamma = 0.99;
  double learning_rate = 0.01;
  std::uint64_t seed = 0;
  int window = 100;
};

/// Optional probes into a training run.
struct TrainHooks {
  std::function<void(const netenv::EnvState&, std::span<const double> dist)> on_decision;
  std::function<void(const Trajectory&)> on_episode;
};

/// M episodes of reset / rollout / reinforce_update. `log`, when given,
/// receives every step.
LearningCurve train(netenv::DynamicNetwork& env, PolicyCircuit& pc, const TrainConfig& config,
                    const TrainHooks& hooks = {}, std::vector<netenv::StepLog>* log = nullptr);

struct EpisodeResult {
  double total_reward = 0.0;
  bool success = false;
  int length = 0;
};

/// Plays the episode already started on `env` to the end, choosing
/// uniformly among the current node's live neighbors (with no neighbors the
/// packet stays put and takes reward_invalid).
EpisodeResult random_agent_rollout(netenv::DynamicNetwork& env, Rng& rng, int episode_index = 0,
                                   std::vector<netenv::StepLog>* log = nullptr);

/// reset() followed by random_agent_rollout.
EpisodeResult random_agent_episode(netenv::DynamicNetwork& env, Rng& rng, int episode_index = 0,
                                   std::vector<netenv::StepLog>* log = nullptr);

LearningCurve run_random_baseline(netenv::DynamicNetwork& env, int episodes, std::uint64_t seed, int window = 100,
                                  std::vector<netenv::StepLog>* log = nullptr);

}  // namespace qroute::agents
