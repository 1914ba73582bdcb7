#include <catch_amalgamated.hpp>

#include <random>

#include "fjn/dynamics.hpp"
#include "fjn/path_oracle.hpp"
#include "fjn/security.hpp"
#include "fjn/verify.hpp"
#include "support/oracles.hpp"

using namespace fjn;
using Catch::Approx;

namespace {

const double eps = epsilon<double>();

NetworkSpec six_node(std::vector<DistributionSpec> timings) {
  return incident_response_model(timings).network();
}

NetworkSpec six_node_constant(double t) {
  return six_node(std::vector<DistributionSpec>(6, Deterministic{t}));
}

Matrix two_by_two(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("build_A", "[dynamics]") {
  SECTION("two-node tandem") {
    const auto a = build_A(ServiceTimeMatrix(Vector{{1.0, 2.0}}), tandem_support_matrix(2), 1);
    // (E ⊕ T⊗G^T) ⊗ T = [[0,ε],[2,0]] ⊗ diag(1,2)
    CHECK(mat_equal(a.matrix, two_by_two(1, eps, 3, 2)));
    CHECK(a.kind == TransitionKind::network);
  }
  SECTION("single node") {
    const NetworkSpec one = tandem_network({Deterministic{4.0}});
    const auto a = build_A(ServiceTimeMatrix(Vector{{4.0}}), support_matrix(one), 0);
    CHECK(a.matrix.size() == 1);
    CHECK(a.matrix(0, 0) == 4.0);
  }
  SECTION("zero service times give the reachability pattern") {
    const NetworkSpec spec = six_node_constant(0.0);
    const auto a = build_A(ServiceTimeMatrix(Vector::Zero(6)), support_matrix(spec), 3);
    const auto reach = testing::reaches_from(spec);
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) CHECK(a.matrix(i, j) == (reach[i][j] ? 0.0 : eps));
    }
  }
  SECTION("dimension mismatch") {
    CHECK_THROWS_AS(build_A(ServiceTimeMatrix(Vector::Zero(3)), tandem_support_matrix(2), 1),
                    InvalidInput);
  }
}

TEST_CASE("build_A agrees with the power sum and path enumeration", "[dynamics][property]") {
  std::mt19937_64 rng(123);
  std::uniform_int_distribution<int> size(1, 7);
  for (int trial = 0; trial < 300; ++trial) {
    const NetworkSpec spec = testing::random_dag(rng, size(rng), 0.4, true);
    const Vector tau = testing::random_integer_times(rng, static_cast<Eigen::Index>(spec.size()));
    const ServiceTimeMatrix t(tau);
    const SupportMatrix g = support_matrix(spec);
    const std::size_t p = longest_path_length(spec);
    const Matrix a = build_A(t, g, p).matrix;

    REQUIRE(mat_equal(a, testing::transition_by_powers(t.matrix(), g.matrix, p)));
    REQUIRE(mat_equal(a, testing::brute_force_path_weights(spec, tau)));
    REQUIRE(mat_equal(a.diagonal(), tau));
    // Extra terms beyond p add nothing.
    REQUIRE(mat_equal(a, build_A(t, g, p + 2).matrix));
  }
}

TEST_CASE("build_B", "[dynamics]") {
  CHECK(build_B(ServiceTimeMatrix(Vector{{2.5}}), tandem_support_matrix(1), 1).matrix(0, 0) == 2.5);
  const auto b = build_B(ServiceTimeMatrix(Vector{{1.0, 2.0}}), tandem_support_matrix(2), 2);
  CHECK(mat_equal(b.matrix, two_by_two(1, eps, 3, 2)));
  CHECK(b.kind == TransitionKind::tandem);

  std::mt19937_64 rng(4);
  const Vector tau = testing::random_integer_times(rng, 6);
  const auto b6 = build_B(ServiceTimeMatrix(tau), tandem_support_matrix(6), 6);
  CHECK(mat_equal(b6.matrix.diagonal(), tau));
  // Lower triangle holds partial sums tau_j + ... + tau_i.
  CHECK(b6.matrix(5, 0) == tau.sum());
  CHECK(is_epsilon(b6.matrix(0, 5)));

  CHECK_THROWS_AS(build_B(ServiceTimeMatrix(tau), tandem_support_matrix(5), 6), InvalidInput);
}

TEST_CASE("step", "[dynamics]") {
  const TransitionMatrix a{two_by_two(1, eps, 3, 2), 1, TransitionKind::network};
  const StateVector x1 = step(StateVector::zeros(2), a);
  CHECK(x1.x == Vector{{1.0, 3.0}});
  CHECK(x1.k == 1);

  const StateVector x{Vector{{4.0, 7.0, 1.0}}, 3};
  CHECK(step(x, {identity_matrix(3), 4, TransitionKind::network}).x == x.x);

  const NetworkSpec spec = six_node_constant(1.0);
  const auto a6 = build_A(ServiceTimeMatrix(Vector::Ones(6)), support_matrix(spec), 3);
  const Vector expected{{1.0, 2.0, 2.0, 3.0, 3.0, 4.0}};
  CHECK(step(StateVector::zeros(6), a6).x == expected);
  const auto oracle =
      unfolded_completion_times(spec, {Vector::Ones(6)}, StateVector::zeros(6));
  CHECK(oracle.front().x == expected);

  CHECK_THROWS_AS(step(StateVector::zeros(3), a), InvalidInput);
}

TEST_CASE("simulate", "[dynamics]") {
  const NetworkSpec tandem = tandem_network({Deterministic{1.0}, Deterministic{2.0}});
  const ScenarioSampler fixed(tandem.timings(), 0);

  SECTION("deterministic tandem, three cycles") {
    const Trajectory t = simulate(tandem, fixed, 3, StateVector::zeros(2));
    // Node 2: 0+1+2 = 3, then max(3, 2) + 2 = 5, then max(5, 3) + 2 = 7.
    CHECK(t.final_state.x == Vector{{3.0, 7.0}});
    CHECK(t.final_state.k == 3);
    const auto oracle = unfolded_completion_times(
        tandem, std::vector<Vector>(3, Vector{{1.0, 2.0}}), StateVector::zeros(2));
    CHECK(oracle.back().x == t.final_state.x);
    REQUIRE(t.norms.size() == 3);
    CHECK(t.norms[0].norm == 3.0);
    CHECK(t.norms[1].norm == 5.0);
    CHECK(t.norms[2].norm == 7.0);
  }
  SECTION("one cycle is one step") {
    const NetworkSpec spec = six_node({Exponential{2}, Exponential{5}, Exponential{4},
                                       Exponential{3}, Exponential{6}, Exponential{1}});
    const ScenarioSampler s(spec.timings(), 77);
    const StateVector x0{Vector{{0.5, 1.0, 0.0, 2.0, 0.0, 3.0}}, 0};
    const Trajectory t = simulate(spec, s, 1, x0);
    const auto a = build_A(s.sample_cycle(1), support_matrix(spec), 3);
    CHECK(t.final_state.x == step(x0, a).x);
  }
  SECTION("same seed, same trajectory") {
    const NetworkSpec spec = six_node({Exponential{2}, Exponential{5}, Exponential{4},
                                       Exponential{3}, Exponential{6}, Exponential{1}});
    const ScenarioSampler s(spec.timings(), 2024);
    const Trajectory a = simulate(spec, s, 500, StateVector::zeros(6));
    const Trajectory b = simulate(spec, s, 500, StateVector::zeros(6));
    CHECK(a.final_state.x == b.final_state.x);
    REQUIRE(a.norms.size() == b.norms.size());
    for (std::size_t i = 0; i < a.norms.size(); ++i) CHECK(a.norms[i].norm == b.norms[i].norm);
  }
  SECTION("checkpoint and thinning") {
    SimulationOptions opt;
    opt.norm_stride = 4;
    opt.checkpoint = 2;
    const Trajectory t = simulate(tandem, fixed, 10, StateVector::zeros(2), opt);
    CHECK(t.checkpoint.x == Vector{{2.0, 5.0}});
    REQUIRE(t.norms.size() == 3);
    CHECK(t.norms[0].k == 4);
    CHECK(t.norms[1].k == 8);
    CHECK(t.norms[2].k == 10);
  }
  SECTION("errors") {
    CHECK_THROWS_AS(simulate(tandem, fixed, 0, StateVector::zeros(2)), InvalidInput);
    CHECK_THROWS_AS(simulate(tandem, fixed, 3, StateVector::zeros(3)), InvalidInput);
    const ScenarioSampler wrong({Deterministic{1.0}}, 0);
    CHECK_THROWS_AS(simulate(tandem, wrong, 3, StateVector::zeros(2)), InvalidInput);
  }
}

TEST_CASE("recurrence matches the brute-force oracle on random networks",
          "[dynamics][property]") {
  std::mt19937_64 rng(8080);
  std::uniform_int_distribution<int> size(1, 7);
  std::uniform_int_distribution<int> cycles(1, 25);
  for (int trial = 0; trial < 200; ++trial) {
    const NetworkSpec spec = testing::random_dag(rng, size(rng), 0.45, true);
    const auto n = static_cast<Eigen::Index>(spec.size());
    std::vector<Vector> table;
    for (int k = cycles(rng); k > 0; --k) table.push_back(testing::random_integer_times(rng, n));
    const auto engine = simulate_table(spec, table, StateVector::zeros(spec.size()));
    const auto oracle = unfolded_completion_times(spec, table, StateVector::zeros(spec.size()));
    REQUIRE(engine.size() == oracle.size());
    for (std::size_t k = 0; k < engine.size(); ++k) REQUIRE(engine[k].x == oracle[k].x);
  }
}

TEST_CASE("tandem bound holds on random networks", "[dynamics][property]") {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> size(1, 8);
  std::uniform_real_distribution<double> density(0.1, 0.9);
  std::uniform_real_distribution<double> time(0.0, 10.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const NetworkSpec spec =
        topological_renumber(testing::random_dag(rng, size(rng), density(rng), true)).spec;
    Vector tau(static_cast<Eigen::Index>(spec.size()));
    for (Eigen::Index i = 0; i < tau.size(); ++i) tau(i) = time(rng);
    const ServiceTimeMatrix t(tau);
    const auto a = build_A(t, support_matrix(spec), longest_path_length(spec));
    const auto b = build_B(t, tandem_support_matrix(spec.size()), spec.size());
    REQUIRE(mat_leq(a.matrix, b.matrix));
    REQUIRE(check_tandem_bound(spec, t).all());
  }
}

TEST_CASE("completion times are monotone", "[dynamics][property]") {
  std::mt19937_64 rng(55);
  std::uniform_int_distribution<int> size(2, 7);
  for (int trial = 0; trial < 200; ++trial) {
    const NetworkSpec spec = testing::random_dag(rng, size(rng), 0.5);
    const auto n = static_cast<Eigen::Index>(spec.size());
    std::vector<Vector> table;
    for (int k = 0; k < 10; ++k) table.push_back(testing::random_integer_times(rng, n));
    const auto base = simulate_table(spec, table, StateVector::zeros(spec.size()));

    for (std::size_t k = 1; k < base.size(); ++k) {
      REQUIRE((base[k].x.array() >= base[k - 1].x.array()).all());
    }

    std::vector<Vector> bumped = table;
    std::uniform_int_distribution<int> row(0, 9), col(0, static_cast<int>(n) - 1);
    bumped[row(rng)](col(rng)) += 3.0;
    const auto more = simulate_table(spec, bumped, StateVector::zeros(spec.size()));
    for (std::size_t k = 0; k < base.size(); ++k) {
      REQUIRE((more[k].x.array() >= base[k].x.array()).all());
    }
  }
}

TEST_CASE("estimate_cycle_time, deterministic timings", "[dynamics]") {
  std::mt19937_64 rng(606);
  std::uniform_int_distribution<int> size(1, 8);
  std::uniform_int_distribution<int> quarters(0, 40);
  for (int trial = 0; trial < 50; ++trial) {
    NetworkSpec spec = testing::random_dag(rng, size(rng), 0.4, true);
    double best = 0.0;
    for (NodeSpec& node : spec.nodes) {
      const double t = quarters(rng) / 4.0;
      node.timing = Deterministic{t};
      best = std::max(best, t);
    }
    const ScenarioSampler s(spec.timings(), 0);
    for (std::uint64_t k : {spec.size(), spec.size() + 1, 3 * spec.size() + 7}) {
      const auto est = estimate_cycle_time(spec, s, k, 2);
      REQUIRE(est.gamma_hat == best);
      REQUIRE(est.std_error == 0.0);
      REQUIRE(est.gamma_hat == analytic_cycle_time(spec, s));
    }
  }
}

TEST_CASE("estimate_cycle_time reports the transient in norm_rate", "[dynamics]") {
  const NetworkSpec tandem = tandem_network({Deterministic{1.0}, Deterministic{2.0}});
  const auto est = estimate_cycle_time(tandem, ScenarioSampler(tandem.timings(), 0), 4, 1);
  CHECK(est.gamma_hat == 2.0);
  // ||x(4)|| = 9, so the raw rate carries the one-off start-up delay.
  CHECK(est.norm_rate == 9.0 / 4.0);
  CHECK(est.warmup == 2);
}

TEST_CASE("estimate_cycle_time, stochastic", "[dynamics]") {
  const NetworkSpec one = tandem_network({Exponential{3.0}});
  const auto est = estimate_cycle_time(one, ScenarioSampler(one.timings(), 31), 100000, 4);
  CHECK(est.gamma_hat == Approx(3.0).epsilon(0.02));
  CHECK(est.std_error > 0.0);
  CHECK(est.replication_gamma.size() == 4);
  CHECK(!est.norm_samples.empty());
  CHECK(est.norm_samples.size() <= 101);

  const NetworkSpec spec = six_node({Exponential{2}, Exponential{5}, Exponential{4},
                                     Exponential{3}, Exponential{6}, Exponential{1}});
  const ScenarioSampler s(spec.timings(), 12);
  EstimateOptions serial;
  serial.threads = 1;
  EstimateOptions parallel;
  parallel.threads = 4;
  const auto a = estimate_cycle_time(spec, s, 2000, 6, serial);
  const auto b = estimate_cycle_time(spec, s, 2000, 6, parallel);
  CHECK(a.gamma_hat == b.gamma_hat);
  CHECK(a.replication_gamma == b.replication_gamma);

  CHECK_THROWS_AS(estimate_cycle_time(spec, s, 0, 1), InvalidInput);
  CHECK_THROWS_AS(estimate_cycle_time(spec, s, 10, 0), InvalidInput);
}

TEST_CASE("analytic_cycle_time", "[dynamics]") {
  CHECK(analytic_cycle_time({Exponential{2}, Exponential{5}, Exponential{4}, Exponential{3},
                             Exponential{6}, Exponential{1}}) == 6.0);
  CHECK(analytic_cycle_time({Uniform{1.0, 2.0}}) == 1.5);
  CHECK(analytic_cycle_time({Deterministic{0.0}, Deterministic{0.0}}) == 0.0);
}
