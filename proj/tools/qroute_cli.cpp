#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qroute/harness.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 2, kInput = 3, kRuntime = 4 };

struct Overrides {
  std::string config_path;
  std::optional<std::string> algorithm;
  std::optional<std::uint64_t> seed;
  std::optional<int> steps;
  std::optional<int> layers;
  std::optional<double> lr;
  std::optional<int> episodes;
  std::optional<std::uint64_t> shots;
  std::optional<std::string> out;
  bool plots = false;
  std::optional<int> restarts;
  std::optional<std::string> gradient;
  std::optional<std::string> graph;
  std::optional<int> source;
  std::optional<int> dest;
  std::optional<int> nodes;
};

void add_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON config file; flags override its keys");
  cmd->add_option("--algorithm", o.algorithm, "vqe | qaoa (maxcut, shortest-path)");
  cmd->add_option("--seed", o.seed, "Base seed");
  cmd->add_option("--steps", o.steps, "Optimizer steps (default 400)");
  cmd->add_option("--layers", o.layers, "Ansatz layers / QAOA p (default 3 vqe, 2 qaoa, 4 qrl)");
  cmd->add_option("--lr", o.lr, "Adam learning rate (default 0.05, qrl 0.01)");
  cmd->add_option("--episodes", o.episodes, "Training episodes (default 3000)");
  cmd->add_option("--shots", o.shots, "Measurement shots (default 4096)");
  cmd->add_option("--out", o.out, "Output directory for config, reports, CSVs and plots");
  cmd->add_flag("--plots", o.plots, "Also write SVG plots");
  cmd->add_option("--restarts", o.restarts, "Best-of-k seeds starting at --seed");
  cmd->add_option("--gradient", o.gradient, "auto | parameter-shift | adjoint");
  cmd->add_option("--graph", o.graph, "Edge-list file (i j w per line) replacing the built-in graph");
  cmd->add_option("--source", o.source, "Source node (shortest-path)");
  cmd->add_option("--dest", o.dest, "Destination node (shortest-path)");
  cmd->add_option("--nodes", o.nodes, "Network size for qrl/baseline (default 8)");
}

template <typename T>
void apply(std::optional<T>& field, const std::optional<T>& value) {
  if (value) field = value;
}

template <typename T>
void apply(T& field, const std::optional<T>& value) {
  if (value) field = *value;
}

qroute::harness::ExperimentConfig build_config(const Overrides& o, const std::string& scenario,
                                               const std::string& forced_algorithm) {
  qroute::harness::ExperimentConfig c;
  if (!o.config_path.empty()) c = qroute::harness::load_config(o.config_path);
  c.scenario = scenario;
  apply(c.algorithm, o.algorithm);
  if (!forced_algorithm.empty()) {
    if (o.algorithm && *o.algorithm != forced_algorithm) {
      throw qroute::harness::ConfigError("--algorithm " + *o.algorithm + " conflicts with this subcommand");
    }
    c.algorithm = forced_algorithm;
  }
  apply(c.seed, o.seed);
  apply(c.steps, o.steps);
  apply(c.layers, o.layers);
  apply(c.lr, o.lr);
  apply(c.episodes, o.episodes);
  apply(c.shots, o.shots);
  apply(c.out, o.out);
  if (o.plots) c.plots = true;
  apply(c.restarts, o.restarts);
  apply(c.gradient, o.gradient);
  apply(c.graph, o.graph);
  apply(c.source, o.source);
  apply(c.dest, o.dest);
  apply(c.nodes, o.nodes);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum routing experiments: Max-Cut control, shortest path, and QRL on a dynamic network"};
  app.require_subcommand(1);
  Overrides o;
  auto* maxcut = app.add_subcommand("maxcut", "Scenario A: VQE or QAOA on the Max-Cut control instance");
  auto* path = app.add_subcommand("shortest-path", "Scenario B: VQE or QAOA on the 16-qubit shortest-path QUBO");
  auto* qrl = app.add_subcommand("qrl", "Scenario C: train the quantum policy and run the random baseline");
  auto* baseline = app.add_subcommand("baseline", "Scenario C: random baseline only");
  for (auto* cmd : {maxcut, path, qrl, baseline}) add_flags(cmd, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    qroute::harness::ExperimentConfig config;
    if (maxcut->parsed()) config = build_config(o, "A", "");
    if (path->parsed()) config = build_config(o, "B", "");
    if (qrl->parsed()) config = build_config(o, "C", "qrl");
    if (baseline->parsed()) config = build_config(o, "C", "random");
    std::cout << qroute::harness::run_experiment(config);
    return kOk;
  } catch (const qroute::harness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const qroute::harness::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const qroute::GraphError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return kRuntime;
  }
}
