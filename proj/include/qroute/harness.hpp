#pragma once

// Experiment runner for the three benchmark scenarios: Max-Cut control (A),
// 16-qubit shortest path (B) and QRL routing on a churning network (C).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "qroute/agents.hpp"
#include "qroute/encode.hpp"
#include "qroute/graph.hpp"
#include "qroute/vqa.hpp"

namespace qroute::harness {

/// Bad configuration value or unknown key.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unreadable or malformed input file.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every key mirrors a CLI flag. Unset optionals take per-algorithm
/// defaults in resolve(): layers 3 (vqe) / 2 (qaoa, the p) / 4 (qrl), lr
/// 0.05 (vqe, qaoa) / 0.01 (qrl).
struct ExperimentConfig {
  std::string scenario = "A";
  /// vqe | qaoa (A, B), qrl | random (C). Empty picks qaoa for A and B and
  /// qrl for C; qrl also runs the random baseline.
  std::string algorithm;
  std::uint64_t seed = 0;
  int steps = 400;
  std::optional<int> layers;
  std::optional<double> lr;
  int episodes = 3000;
  std::uint64_t shots = 4096;
  std::string out;
  bool plots = false;
  /// Best-of-k over seeds seed .. seed + k - 1 (scenarios A and B).
  int restarts = 1;
  /// "auto" picks parameter-shift up to 12 qubits and adjoint above.
  std::string gradient = "auto";
  /// Optional edge-list file replacing the built-in instance.
  std::string graph;
  std::optional<int> source;
  std::optional<int> dest;
  double gamma = 0.99;
  double r_dest = 100.0;
  double r_invalid = -50.0;
  int nodes = 8;
  int ba_m = 2;
  int window = 100;

  /// Fills algorithm defaults and validates every field. Throws ConfigError.
  ExperimentConfig resolve() const;
};

void to_json(nlohmann::json& j, const ExperimentConfig& c);
/// Unknown keys and wrong value types raise ConfigError.
void from_json(const nlohmann::json& j, ExperimentConfig& c);
ExperimentConfig load_config(const std::filesystem::path& path);
/// Pretty JSON with a trailing newline.
std::string config_to_string(const ExperimentConfig& c);

inline constexpr int kAutoAdjointAbove = 12;
vqa::GradientMethod resolve_gradient(const std::string& name, int n_qubits);

/// Fixed instances. A: 5 nodes, 7 unit edges. B: 4 nodes, 5 weighted edges
/// whose unique shortest 0 -> 3 path is [0,1,2,3] at cost 11.
WeightedGraph scenario_a_graph();
WeightedGraph scenario_b_graph();
inline constexpr int kScenarioBSource = 0;
inline constexpr int kScenarioBDest = 3;
inline constexpr int kScenarioCNodes = 8;
inline constexpr int kScenarioCAttach = 2;

/// `i j w` per line, whitespace separated, `#` starts a comment. The node
/// count is the largest index + 1. Throws InputError naming the line for
/// malformed lines, self-loops, duplicates and non-positive weights, and for
/// a file without edges.
WeightedGraph parse_edge_list(const std::filesystem::path& path);
WeightedGraph parse_edge_list_text(const std::string& text);

struct MaxCutSeedResult {
  std::uint64_t seed = 0;
  std::string bitstring;
  int cut = 0;
  /// Both sides of the partition non-empty.
  bool valid = false;
  double ratio = 0.0;
  double final_energy = 0.0;
  vqa::ConvergenceTrace trace;
};

struct ScenarioAReport {
  ExperimentConfig config;
  int optimal_cut = 0;
  double ground_energy = 0.0;
  std::vector<MaxCutSeedResult> runs;
  std::size_t best = 0;
  std::string verdict;
  std::string text;
};

struct PathSeedResult {
  std::uint64_t seed = 0;
  std::string bitstring;
  encode::PathAssignment decoded;
  std::optional<double> ratio;
  double final_energy = 0.0;
  vqa::ConvergenceTrace trace;
};

struct ScenarioBReport {
  ExperimentConfig config;
  int source = 0;
  int dest = 0;
  std::vector<int> oracle_path;
  double oracle_cost = 0.0;
  double penalty = 0.0;
  double ground_energy = 0.0;
  std::vector<PathSeedResult> runs;
  std::size_t best = 0;
  double validity_rate = 0.0;
  std::string verdict;
  std::string text;
};

struct ScenarioCReport {
  ExperimentConfig config;
  WeightedGraph base_graph;
  std::optional<agents::LearningCurve> qrl;
  agents::LearningCurve random;
  double qrl_final_success = 0.0;
  double random_final_success = 0.0;
  std::string text;
};

/// "Valid (Optimal)", "Valid" or "Invalid".
std::string verdict_label(bool valid, bool optimal);

/// Each run resolves the config, runs every restart, and when config.out is
/// non-empty writes config.json, report.txt, results.csv and the traces or
/// curves there (plus SVG plots with config.plots).
ScenarioAReport run_scenario_a(const ExperimentConfig& config);
ScenarioBReport run_scenario_b(const ExperimentConfig& config);
ScenarioCReport run_scenario_c(const ExperimentConfig& config);

/// Dispatches on config.scenario; returns the report text.
std::string run_experiment(const ExperimentConfig& config);

}  // namespace qroute::harness
