#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qroute/harness.hpp"
#include "qroute/oracle.hpp"
#include "qroute/vqa.hpp"
#include "test_support.hpp"

using namespace qroute;
using namespace qroute::vqa;
using qroute::ref::C;

namespace {

constexpr double kPi = std::numbers::pi;

encode::IsingHamiltonian single_z() {
  encode::IsingHamiltonian h(1);
  h.set_h(0, 1.0);
  return h;
}

encode::IsingHamiltonian random_ising(int n, Rng& rng) {
  encode::IsingHamiltonian h(n);
  for (int i = 0; i < n; ++i) {
    h.set_h(i, rng.uniform(-2, 2));
    for (int j = i + 1; j < n; ++j) h.set_J(i, j, rng.uniform(-2, 2));
  }
  return h;
}

std::vector<C> dense_qaoa(const std::vector<double>& energies, int n, const QaoaParams& p) {
  ref::Dense hall = ref::Dense::identity(1);
  for (int q = 0; q < n; ++q) hall = ref::kron(hall, ref::h2());
  auto v = ref::apply_dense(hall, ref::zero_state(n));
  for (std::size_t k = 0; k < p.layers(); ++k) {
    ref::Dense phase(v.size());
    for (std::size_t b = 0; b < v.size(); ++b) phase(b, b) = std::polar(1.0, -p.gammas[k] * energies[b]);
    v = ref::apply_dense(phase, v);
    for (int q = 0; q < n; ++q) v = ref::apply_dense(ref::embed(ref::rx2(2 * p.betas[k]), q, n), v);
  }
  return v;
}

double dense_expectation(const std::vector<C>& v, const std::vector<double>& e) {
  double s = 0.0;
  for (std::size_t b = 0; b < v.size(); ++b) s += std::norm(v[b]) * e[b];
  return s;
}

void expect_trace_above_ground(const ConvergenceTrace& t, const std::vector<double>& energies) {
  const double ground = *std::min_element(energies.begin(), energies.end());
  for (const auto& r : t.records) EXPECT_GE(r.energy, ground - 1e-9) << "step " << r.step;
  EXPECT_GE(t.final_energy, ground - 1e-9);
}

}  // namespace

TEST(EntanglerAnsatz, ParameterCount) {
  EXPECT_EQ((EntanglerAnsatzSpec{4, 3}).parameter_count(), 12u);
}

TEST(EntanglerAnsatz, ZeroParametersLeaveAllZeros) {
  const EntanglerAnsatzSpec spec{4, 3};
  const auto s = entangler_ansatz_state(spec, std::vector<double>(12, 0.0));
  EXPECT_NEAR(std::abs(s[0] - C(1.0, 0.0)), 0.0, 1e-15);
  for (std::size_t b = 1; b < s.dim(); ++b) EXPECT_EQ(std::abs(s[b]), 0.0);
}

TEST(EntanglerAnsatz, SingleQubitRxPiFlips) {
  const auto s = entangler_ansatz_state({1, 1}, std::vector<double>{kPi});
  EXPECT_NEAR(std::norm(s[1]), 1.0, 1e-15);
  EXPECT_NEAR(std::norm(s[0]), 0.0, 1e-15);
}

TEST(EntanglerAnsatz, MatchesDenseMatrixProduct) {
  Rng rng(41);
  for (int n = 1; n <= 4; ++n) {
    for (const auto axis : {RotationAxis::kX, RotationAxis::kY, RotationAxis::kZ}) {
      const EntanglerAnsatzSpec spec{n, 3, axis};
      std::vector<double> params(spec.parameter_count());
      for (auto& p : params) p = rng.uniform(0, 2 * kPi);
      qsim::StateVector init(n);
      for (int q = 0; q < n; ++q) init.apply(qsim::GateOp::h(q));
      const char a = axis == RotationAxis::kX ? 'X' : axis == RotationAxis::kY ? 'Y' : 'Z';
      for (const bool from_plus : {false, true}) {
        auto start = ref::zero_state(n);
        if (from_plus) start = std::vector<C>(init.amplitudes().begin(), init.amplitudes().end());
        const auto want = ref::dense_entangler(n, 3, a, params, start);
        const auto got = from_plus ? entangler_ansatz_state(spec, params, init) : entangler_ansatz_state(spec, params);
        for (std::size_t b = 0; b < want.size(); ++b) EXPECT_NEAR(std::abs(got[b] - want[b]), 0.0, 1e-12);
      }
    }
  }
}

TEST(EntanglerAnsatz, LengthMismatchThrows) {
  EXPECT_THROW(entangler_ansatz_state({2, 2}, std::vector<double>(3)), std::invalid_argument);
}

TEST(QaoaAnsatz, ZeroAnglesGiveUniformSuperposition) {
  Rng rng(2);
  const auto h = random_ising(3, rng);
  const auto s = qaoa_ansatz_state(h, QaoaParams{{0.0}, {0.0}});
  for (std::size_t b = 0; b < 8; ++b) EXPECT_NEAR(std::norm(s[b]), 1.0 / 8, 1e-15);
  const auto e = h.energies();
  const double mean = std::accumulate(e.begin(), e.end(), 0.0) / 8;
  EXPECT_NEAR(qsim::expectation_diagonal(s, e), mean, 1e-12);
}

TEST(QaoaAnsatz, SingleEdgeMatchesDenseEvolutionOnGrid) {
  const auto h = encode::build_maxcut_hamiltonian(WeightedGraph(2, {{0, 1, 1}}));
  const auto e = h.energies();
  for (int i = 0; i <= 8; ++i)
    for (int j = 0; j <= 8; ++j) {
      const QaoaParams p{{i * kPi / 8}, {j * kPi / 8}};
      EXPECT_NEAR(qsim::expectation_diagonal(qaoa_ansatz_state(h, p), e), dense_expectation(dense_qaoa(e, 2, p), e),
                  1e-10);
    }
}

TEST(QaoaAnsatz, MultiLayerMatchesDenseAndStaysNormalized) {
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const auto h = random_ising(n, rng);
    const auto e = h.energies();
    QaoaParams p;
    for (int k = 0; k < 3; ++k) {
      p.gammas.push_back(rng.uniform(-kPi, kPi));
      p.betas.push_back(rng.uniform(-kPi, kPi));
    }
    const auto s = qaoa_ansatz_state(h, p);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-10);
    const auto want = dense_qaoa(e, n, p);
    for (std::size_t b = 0; b < want.size(); ++b) EXPECT_NEAR(std::abs(s[b] - want[b]), 0.0, 1e-10);
  }
}

TEST(QaoaParams, FlatLayoutAndValidation) {
  const QaoaParams p{{1, 2}, {3, 4}};
  EXPECT_EQ(p.flat(), (std::vector<double>{1, 2, 3, 4}));
  const auto q = QaoaParams::from_flat(p.flat());
  EXPECT_EQ(q.gammas, p.gammas);
  EXPECT_EQ(q.betas, p.betas);
  EXPECT_THROW(QaoaParams::from_flat(std::vector<double>{1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(qaoa_ansatz_state(single_z(), QaoaParams{{1.0}, {}}), std::invalid_argument);
}

TEST(Adam, ZeroGradientLeavesParameters) {
  AdamState adam({0.1}, 3);
  std::vector<double> x = {1.0, -2.0, 0.5};
  adam.step(x, std::vector<double>(3, 0.0));
  EXPECT_EQ(x, (std::vector<double>{1.0, -2.0, 0.5}));
  EXPECT_EQ(adam.step_count(), 1u);
}

TEST(Adam, FirstStepMovesByLearningRateAgainstGradientSign) {
  for (const double g : {1e-3, 0.7, -5.0, 1e4}) {
    AdamState adam({0.05}, 1);
    std::vector<double> x = {0.0};
    adam.step(x, std::vector<double>{g});
    EXPECT_NEAR(x[0], -0.05 * (g > 0 ? 1 : -1), 1e-6) << g;
  }
}

TEST(Adam, QuadraticConvergesLikeScalarReference) {
  AdamState adam({0.1}, 1);
  std::vector<double> x = {1.0};
  // Scalar reference of the bias-corrected update.
  double rx = 1.0, m = 0.0, v = 0.0;
  for (int t = 1; t <= 100; ++t) {
    const double g = 2 * rx;
    m = 0.9 * m + 0.1 * g;
    v = 0.999 * v + 0.001 * g * g;
    const double mh = m / (1 - std::pow(0.9, t)), vh = v / (1 - std::pow(0.999, t));
    rx -= 0.1 * mh / (std::sqrt(vh) + 1e-8);
    adam.step(x, std::vector<double>{2 * x[0]});
    EXPECT_NEAR(x[0], rx, 1e-12);
  }
  EXPECT_LT(std::abs(x[0]), 0.05);
  EXPECT_EQ(adam.step_count(), 100u);
  EXPECT_EQ(adam.first_moment().size(), 1u);
  EXPECT_EQ(adam.second_moment().size(), 1u);
}

TEST(Adam, FunctionalFormMatchesInPlace) {
  AdamState a({0.05}, 2);
  std::vector<double> x = {0.3, -0.4};
  const std::vector<double> g = {0.2, -0.1};
  auto [b, y] = adam_step(a, x, g);
  a.step(x, g);
  EXPECT_EQ(x, y);
  EXPECT_EQ(b.step_count(), a.step_count());
}

TEST(Adam, LengthMismatchThrows) {
  AdamState adam({0.1}, 2);
  std::vector<double> x = {1.0, 2.0};
  EXPECT_THROW(adam.step(x, std::vector<double>{1.0}), std::invalid_argument);
}

TEST(GradientMethod, NamesRoundTrip) {
  for (auto m : {GradientMethod::kParameterShift, GradientMethod::kAdjoint}) {
    EXPECT_EQ(gradient_method_from_string(to_string(m)), m);
  }
  EXPECT_EQ(to_string(GradientMethod::kParameterShift), "parameter-shift");
  EXPECT_THROW(gradient_method_from_string("spsa"), std::invalid_argument);
}

TEST(EntanglerGradient, BothMethodsMatchFiniteDifferences) {
  Rng rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(4));
    const EntanglerAnsatzSpec spec{n, 1 + static_cast<int>(rng.below(3)), static_cast<RotationAxis>(rng.below(2))};
    std::vector<double> energies(std::size_t{1} << n);
    for (auto& x : energies) x = rng.uniform(-4, 4);
    std::vector<double> params(spec.parameter_count());
    for (auto& p : params) p = rng.uniform(0, 2 * kPi);
    const auto f = [&](const std::vector<double>& p) {
      return qsim::expectation_diagonal(entangler_ansatz_state(spec, p), energies);
    };
    const auto ps = entangler_gradient(spec, params, energies, GradientMethod::kParameterShift);
    const auto adj = entangler_gradient(spec, params, energies, GradientMethod::kAdjoint);
    for (std::size_t i = 0; i < params.size(); ++i) {
      const double fd = ref::central_difference(f, params, i);
      EXPECT_NEAR(ps[i], fd, 1e-5);
      EXPECT_NEAR(adj[i], ps[i], 1e-10);
    }
  }
}

TEST(QaoaGradient, BothMethodsMatchFiniteDifferences) {
  Rng rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(4));
    const auto h = random_ising(n, rng);
    const int p = 1 + static_cast<int>(rng.below(3));
    std::vector<double> flat(2 * static_cast<std::size_t>(p));
    for (auto& x : flat) x = rng.uniform(0, kPi);
    const auto e = h.energies();
    const auto f = [&](const std::vector<double>& x) {
      return qsim::expectation_diagonal(qaoa_ansatz_state(h, QaoaParams::from_flat(x)), e);
    };
    const auto ps = qaoa_gradient(h, flat, GradientMethod::kParameterShift);
    const auto adj = qaoa_gradient(h, flat, GradientMethod::kAdjoint);
    ASSERT_EQ(ps.size(), flat.size());
    for (std::size_t i = 0; i < flat.size(); ++i) {
      EXPECT_NEAR(ps[i], ref::central_difference(f, flat, i), 1e-5) << "trial " << trial << " index " << i;
      EXPECT_NEAR(adj[i], ps[i], 1e-10);
    }
  }
}

TEST(Gradients, EnginesAgreeOnSixteenQubitPathHamiltonian) {
  const auto g = harness::scenario_b_graph();
  const auto h = encode::qubo_to_ising(encode::build_shortest_path_qubo(g, 0, 3, 40.0));
  Rng rng(59);
  std::vector<double> flat(4);
  for (auto& x : flat) x = rng.uniform(0, kPi);
  const auto ps = qaoa_gradient(h, flat, GradientMethod::kParameterShift);
  const auto adj = qaoa_gradient(h, flat, GradientMethod::kAdjoint);
  for (std::size_t i = 0; i < flat.size(); ++i) EXPECT_NEAR(adj[i], ps[i], 1e-8 * std::max(1.0, std::abs(ps[i])));

  const EntanglerAnsatzSpec spec{16, 3};
  std::vector<double> params(spec.parameter_count());
  for (auto& x : params) x = rng.uniform(0, 2 * kPi);
  const auto e = h.energies();
  const auto vps = entangler_gradient(spec, params, e, GradientMethod::kParameterShift);
  const auto vadj = entangler_gradient(spec, params, e, GradientMethod::kAdjoint);
  for (std::size_t i = 0; i < params.size(); ++i) EXPECT_NEAR(vadj[i], vps[i], 1e-8 * std::max(1.0, std::abs(vps[i])));
}

TEST(VqeSolve, SingleQubitZReachesGround) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    VqeOptions o;
    o.layers = 2;
    o.steps = 200;
    o.learning_rate = 0.1;
    o.seed = seed;
    const auto t = vqe_solve(single_z(), o);
    EXPECT_LT(t.final_energy, -0.999) << "seed " << seed;
    EXPECT_EQ(t.final_bitstring, 1u);
    expect_trace_above_ground(t, {1.0, -1.0});
  }
}

TEST(VqeSolve, OneStepGivesOneRecord) {
  VqeOptions o;
  o.steps = 1;
  const auto t = vqe_solve(single_z(), o);
  ASSERT_EQ(t.records.size(), 1u);
  EXPECT_EQ(t.records[0].step, 1);
  EXPECT_EQ(t.to_csv().substr(0, 22), "step,energy,param_norm");
}

TEST(VqeSolve, SeededRunsAreBitIdentical) {
  Rng rng(61);
  const auto h = random_ising(4, rng);
  VqeOptions o;
  o.steps = 30;
  o.seed = 99;
  const auto a = vqe_solve(h, o);
  const auto b = vqe_solve(h, o);
  EXPECT_EQ(a.to_csv(), b.to_csv());
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(a.final_params, b.final_params);
  o.seed = 100;
  EXPECT_NE(vqe_solve(h, o).to_csv(), a.to_csv());
}

TEST(VqeSolve, TraceIsContiguousAndRespectsVariationalBound) {
  Rng rng(67);
  const auto h = random_ising(5, rng);
  VqeOptions o;
  o.steps = 50;
  const auto t = vqe_solve(h, o);
  ASSERT_EQ(t.records.size(), 50u);
  for (std::size_t i = 0; i < t.records.size(); ++i) EXPECT_EQ(t.records[i].step, static_cast<int>(i) + 1);
  expect_trace_above_ground(t, h.energies());
  double norm = 0.0;
  for (double p : t.initial_params) norm += p * p;
  EXPECT_DOUBLE_EQ(t.records[0].param_norm, std::sqrt(norm));
  for (double p : t.initial_params) {
    EXPECT_GE(p, 0.0);
    EXPECT_LT(p, 2 * kPi);
  }
}

TEST(VqeSolve, InitialOverrideAndPathDecoding) {
  const auto g = harness::scenario_b_graph();
  const auto h = encode::qubo_to_ising(encode::build_shortest_path_qubo(g, 0, 3, 40.0));
  VqeOptions o;
  o.layers = 1;
  o.steps = 0;
  o.initial_params = std::vector<double>(16, 0.0);
  o.path_problem = PathProblem{g, 0, 3};
  const auto t = vqe_solve(h, o);
  EXPECT_TRUE(t.records.empty());
  EXPECT_EQ(t.final_bitstring, 0u);
  ASSERT_TRUE(t.decoded.has_value());
  EXPECT_FALSE(t.decoded->valid);
  EXPECT_NEAR(t.final_energy, 240.0, 1e-9);
}

TEST(QaoaSolve, SingleEdgeFindsACut) {
  const auto h = encode::build_maxcut_hamiltonian(WeightedGraph(2, {{0, 1, 1}}));
  bool found = false;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    QaoaOptions o;
    o.p = 1;
    o.steps = 300;
    o.learning_rate = 0.1;
    o.seed = seed;
    const auto t = qaoa_solve(h, o);
    expect_trace_above_ground(t, h.energies());
    found = found || t.final_bitstring == 0b01 || t.final_bitstring == 0b10;
  }
  EXPECT_TRUE(found);
}

TEST(QaoaSolve, ScenarioABestOfTwentyIsOptimal) {
  const auto g = harness::scenario_a_graph();
  const auto h = encode::build_maxcut_hamiltonian(g);
  const int optimum = static_cast<int>(oracle::brute_force_maxcut(g).optimum);
  int best = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    QaoaOptions o;
    o.seed = seed;
    const auto t = qaoa_solve(h, o);
    EXPECT_EQ(t.records.size(), 400u);
    expect_trace_above_ground(t, h.energies());
    best = std::max(best, encode::cut_size(g, t.final_bitstring));
  }
  EXPECT_EQ(best, optimum);
  EXPECT_EQ(approximation_ratio(best, optimum, true), 1.0);
}

TEST(QaoaSolve, FrozenZeroAnglesReportMeanEnergy) {
  Rng rng(71);
  const auto h = random_ising(4, rng);
  QaoaOptions o;
  o.p = 1;
  o.steps = 0;
  o.initial_params = std::vector<double>{0.0, 0.0};
  const auto t = qaoa_solve(h, o);
  const auto e = h.energies();
  EXPECT_NEAR(t.final_energy, std::accumulate(e.begin(), e.end(), 0.0) / 16, 1e-12);
}

TEST(QaoaSolve, ParameterVectorHasTwoPEntries) {
  Rng rng(73);
  const auto h = random_ising(3, rng);
  for (int p = 1; p <= 4; ++p) {
    QaoaOptions o;
    o.p = p;
    o.steps = 2;
    const auto t = qaoa_solve(h, o);
    EXPECT_EQ(t.final_params.size(), 2u * static_cast<std::size_t>(p));
    for (double x : t.initial_params) {
      EXPECT_GE(x, 0.0);
      EXPECT_LT(x, kPi);
    }
  }
  QaoaOptions bad;
  bad.p = 0;
  EXPECT_THROW(qaoa_solve(h, bad), std::invalid_argument);
  bad.p = 2;
  bad.initial_params = std::vector<double>{1.0};
  EXPECT_THROW(qaoa_solve(h, bad), std::invalid_argument);
}

TEST(ApproximationRatio, Cases) {
  EXPECT_EQ(approximation_ratio(6, 6, true), 1.0);
  EXPECT_EQ(approximation_ratio(12, 11, true), 12.0 / 11.0);
  EXPECT_FALSE(approximation_ratio(6, 6, false).has_value());
  EXPECT_FALSE(approximation_ratio(0, 6, false).has_value());
  EXPECT_THROW(approximation_ratio(1, 0, true), std::invalid_argument);
}
