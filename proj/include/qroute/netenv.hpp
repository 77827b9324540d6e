#pragma once

// Dynamic routing MDP: a packet hops across a latency-weighted graph whose
// links churn at a fixed step interval.

#include <cstdint>
#include <string>
#include <vector>

#include "qroute/graph.hpp"
#include "qroute/rng.hpp"

namespace qroute::netenv {

struct EpisodeConfig {
  int max_steps = 25;
  double reward_dest = 100.0;
  double reward_invalid = -50.0;
  int churn_interval = 10;
  int weight_min = 1;
  int weight_max = 10;
  /// Put the base topology back at every reset, so churn only accumulates
  /// within an episode.
  bool restore_on_reset = true;
};

/// Preferential attachment from an initial (m+1)-clique; each later node
/// links to m distinct existing nodes with probability proportional to
/// degree. Weights are uniform integers in [weight_min, weight_max].
WeightedGraph barabasi_albert_generate(int n, int m, std::uint64_t seed, int weight_min = 1,
                                       int weight_max = 10);

struct EnvState {
  int current = 0;
  int dest = 0;
  int n_nodes = 0;
  /// Row-major n x n weights at decision time, 0 = no link.
  std::vector<double> adjacency;
  int step_count = 0;

  int degree(int u) const;
  bool linked(int u, int v) const { return adjacency[static_cast<std::size_t>(u * n_nodes + v)] > 0.0; }
};

enum class DoneReason { kNone, kReached, kTimeout };

std::string to_string(DoneReason r);

struct StepOutcome {
  double reward = 0.0;
  EnvState next_state;
  bool done = false;
  DoneReason done_reason = DoneReason::kNone;
};

struct ChurnEvent {
  bool removed = false;
  Edge removed_edge;
  bool added = false;
  Edge added_edge;
};

class EpisodeFinished : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DynamicNetwork {
 public:
  DynamicNetwork(WeightedGraph base, EpisodeConfig config, std::uint64_t seed);

  const WeightedGraph& graph() const { return graph_; }
  const WeightedGraph& base_graph() const { return base_; }
  const EpisodeConfig& config() const { return config_; }
  int n_nodes() const { return graph_.n_nodes(); }

  /// Removes one uniformly chosen edge and links one uniformly chosen pair
  /// that was unconnected before the removal. On a complete graph the
  /// addition is skipped and a warning is counted.
  ChurnEvent churn();
  std::size_t warning_count() const { return warnings_; }

  /// Uniform ordered (source, dest) pair with source != dest.
  EnvState reset();
  /// Reseeds the environment stream first.
  EnvState reset(std::uint64_t seed);
  /// Starts an episode with a fixed pair.
  EnvState reset_to(int source, int dest);

  /// Applies `action` as the next hop from the current node:
  ///   linked and == dest  -> reward_dest, episode ends (REACHED)
  ///   linked, != dest     -> -w(u, v), packet moves
  ///   anything else       -> reward_invalid, packet stays
  /// Churn fires after every churn_interval-th step; TIMEOUT at max_steps.
  /// Actions outside [0, n) count as unlinked.
  StepOutcome step(int action);

  const EnvState& state() const { return state_; }
  bool done() const { return done_; }
  Rng& rng() { return rng_; }

 private:
  EnvState snapshot(int current, int dest, int step_count) const;

  WeightedGraph base_;
  WeightedGraph graph_;
  EpisodeConfig config_;
  Rng rng_;
  EnvState state_;
  bool done_ = true;
  std::size_t warnings_ = 0;
};

struct StepLog {
  int episode = 0;
  int step = 0;
  int u = 0;
  int dest = 0;
  int action = 0;
  double reward = 0.0;
  DoneReason done_reason = DoneReason::kNone;
};

/// "episode,step,u,dest,action,reward,done_reason" with a header row.
std::string episode_log_csv(const std::vector<StepLog>& log);

}  // namespace qroute::netenv
