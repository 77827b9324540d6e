#include "qroute/netenv.hpp"

#include <iostream>
#include <sstream>
#include <stdexcept>

#include "qroute/format.hpp"

namespace qroute::netenv {

WeightedGraph barabasi_albert_generate(int n, int m, std::uint64_t seed, int weight_min, int weight_max) {
  if (m < 1 || m >= n) throw std::invalid_argument("Barabasi-Albert needs 1 <= m < n");
  if (weight_min < 1 || weight_max < weight_min) throw std::invalid_argument("bad weight range");
  Rng rng(seed);
  WeightedGraph g(n);
  for (int i = 0; i <= m; ++i) {
    for (int j = i + 1; j <= m; ++j) g.add_edge(i, j, rng.uniform_int(weight_min, weight_max));
  }
  for (int v = m + 1; v < n; ++v) {
    std::vector<int> targets;
    while (static_cast<int>(targets.size()) < m) {
      std::uint64_t total = 0;
      for (int u = 0; u < v; ++u) total += static_cast<std::uint64_t>(g.degree(u));
      std::uint64_t pick = rng.below(total);
      int chosen = 0;
      for (int u = 0; u < v; ++u) {
        const auto d = static_cast<std::uint64_t>(g.degree(u));
        if (pick < d) {
          chosen = u;
          break;
        }
        pick -= d;
      }
      bool dup = false;
      for (int t : targets) dup = dup || t == chosen;
      if (!dup) targets.push_back(chosen);
    }
    // Degrees are frozen while v picks its targets; links are added after.
    for (int t : targets) g.add_edge(v, t, rng.uniform_int(weight_min, weight_max));
  }
  return g;
}

int EnvState::degree(int u) const {
  int d = 0;
  for (int v = 0; v < n_nodes; ++v) d += linked(u, v) ? 1 : 0;
  return d;
}

std::string to_string(DoneReason r) {
  switch (r) {
    case DoneReason::kNone:
      return "NONE";
    case DoneReason::kReached:
      return "REACHED";
    case DoneReason::kTimeout:
      return "TIMEOUT";
  }
  return "NONE";
}

DynamicNetwork::DynamicNetwork(WeightedGraph base, EpisodeConfig config, std::uint64_t seed)
    : base_(std::move(base)), graph_(base_), config_(config), rng_(seed) {
  if (base_.n_nodes() < 2) throw std::invalid_argument("routing environment needs at least 2 nodes");
  if (config_.max_steps < 1 || config_.churn_interval < 1) {
    throw std::invalid_argument("max_steps and churn_interval must be positive");
  }
}

ChurnEvent DynamicNetwork::churn() {
  ChurnEvent ev;
  const int n = graph_.n_nodes();
  std::vector<std::pair<int, int>> absent;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!graph_.has_edge(i, j)) absent.emplace_back(i, j);
    }
  }
  const auto edges = graph_.edges();
  if (!edges.empty()) {
    ev.removed_edge = edges[rng_.below(edges.size())];
    graph_.remove_edge(ev.removed_edge.u, ev.removed_edge.v);
    ev.removed = true;
  }
  if (absent.empty()) {
    ++warnings_;
    std::clog << "warning: churn on a complete graph, no edge added\n";
    return ev;
  }
  const auto [i, j] = absent[rng_.below(absent.size())];
  const double w = rng_.uniform_int(config_.weight_min, config_.weight_max);
  graph_.add_edge(i, j, w);
  ev.added = true;
  ev.added_edge = {i, j, w};
  return ev;
}

EnvState DynamicNetwork::snapshot(int current, int dest, int step_count) const {
  return {current, dest, graph_.n_nodes(), graph_.adjacency(), step_count};
}

EnvState DynamicNetwork::reset() {
  if (config_.restore_on_reset) graph_ = base_;
  const auto n = static_cast<std::uint64_t>(graph_.n_nodes());
  const int source = static_cast<int>(rng_.below(n));
  int dest = static_cast<int>(rng_.below(n - 1));
  if (dest >= source) ++dest;
  state_ = snapshot(source, dest, 0);
  done_ = false;
  return state_;
}

EnvState DynamicNetwork::reset_to(int source, int dest) {
  const int n = graph_.n_nodes();
  if (source < 0 || source >= n || dest < 0 || dest >= n || source == dest) {
    throw std::invalid_argument("reset_to needs two distinct nodes in range");
  }
  if (config_.restore_on_reset) graph_ = base_;
  state_ = snapshot(source, dest, 0);
  done_ = false;
  return state_;
}

EnvState DynamicNetwork::reset(std::uint64_t seed) {
  rng_.reseed(seed);
  return reset();
}

StepOutcome DynamicNetwork::step(int action) {
  if (done_) throw EpisodeFinished("step called on a finished episode; call reset()");
  const int u = state_.current;
  const int d = state_.dest;
  const bool linked = action >= 0 && action < graph_.n_nodes() && graph_.has_edge(u, action);

  StepOutcome out;
  int next = u;
  if (linked && action == d) {
    out.reward = config_.reward_dest;
    out.done = true;
    out.done_reason = DoneReason::kReached;
    next = d;
  } else if (linked) {
    out.reward = -graph_.weight(u, action);
    next = action;
  } else {
    out.reward = config_.reward_invalid;
  }

  const int count = state_.step_count + 1;
  if (!out.done) {
    if (count % config_.churn_interval == 0 && count < config_.max_steps) churn();
    if (count >= config_.max_steps) {
      out.done = true;
      out.done_reason = DoneReason::kTimeout;
    }
  }
  state_ = snapshot(next, d, count);
  out.next_state = state_;
  done_ = out.done;
  return out;
}

std::string episode_log_csv(const std::vector<StepLog>& log) {
  std::ostringstream os;
  os << "episode,step,u,dest,action,reward,done_reason\n";
  for (const auto& s : log) {
    os << s.episode << ',' << s.step << ',' << s.u << ',' << s.dest << ',' << s.action << ','
       << format_real(s.reward) << ',' << to_string(s.done_reason) << '\n';
  }
  return os.str();
}

}  // namespace qroute::netenv
