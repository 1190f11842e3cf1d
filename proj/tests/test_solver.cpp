#include <doctest.h>

#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "srmdp/solver.hpp"

using namespace srmdp;

namespace {
const double kKappa2 = 8.8909624659257709;
const std::vector<int> kOptimal = {0, 0, 1};  // (a1,a1,a2)
}

TEST_CASE("full coverage run reproduces the reference trace") {
  const ValidatedMdp mdp = fixtures::three_state();
  const SolveReport rep = solve(mdp, SolverConfig{});

  CHECK(rep.optimal_policy.actions == kOptimal);
  CHECK(rep.kappa_star == doctest::Approx(99.0).epsilon(1e-12));
  CHECK(rep.sharpe_star ==
        doctest::Approx(9.8994949366116654).epsilon(1e-12));
  CHECK(rep.metrics.eta == doctest::Approx(14.0 / 3).epsilon(1e-12));
  CHECK(rep.metrics.zeta == doctest::Approx(2.0 / 9).epsilon(1e-12));

  REQUIRE(rep.outer_rows.size() == 3);
  CHECK(rep.outer_rows[0].kappa == 0.0);
  CHECK(rep.outer_rows[1].kappa == doctest::Approx(kKappa2).epsilon(1e-12));
  CHECK(rep.outer_rows[2].kappa == doctest::Approx(99.0).epsilon(1e-12));

  CHECK(rep.outer_rows[0].solution.candidates.size() == 3);
  CHECK(rep.outer_rows[1].solution.candidates.size() == 7);
  CHECK(rep.outer_rows[2].solution.candidates.size() == 7);
  CHECK(rep.mdps_solved == 17);
  CHECK(rep.pi_sweeps == 32);
  CHECK(rep.wall_seconds >= 0.0);

  // first outer block, first probe: the published inner trajectory
  const AuxSolution& first = rep.outer_rows[0].solution.candidates[0];
  REQUIRE(first.inner_trace.size() == 3);
  CHECK(first.inner_trace[0].actions == std::vector<int>{0, 0, 0});
  CHECK(first.inner_trace[1].actions == std::vector<int>{1, 0, 1});
  CHECK(first.inner_trace[2].actions == std::vector<int>{1, 0, 1});
  CHECK(first.m2v == doctest::Approx(42.825688073394502).epsilon(1e-12));
  // later probes of the same block chain from the previous winner
  CHECK(rep.outer_rows[0].solution.candidates[1].inner_trace[0].actions ==
        std::vector<int>{1, 0, 1});

  CHECK(rep.outer_rows[1].solution.best_m2v() ==
        doctest::Approx(20.024230563127606).epsilon(1e-12));
  CHECK(std::abs(rep.outer_rows[2].solution.best_m2v()) < 1e-9);
}

TEST_CASE("each outer block restarts from the configured policy") {
  const ValidatedMdp mdp = fixtures::three_state();
  const SolveReport rep = solve(mdp, SolverConfig{});
  for (const OuterRow& row : rep.outer_rows) {
    REQUIRE_FALSE(row.solution.candidates.empty());
    CHECK(row.solution.candidates[0].inner_trace[0].actions ==
          std::vector<int>{0, 0, 0});
  }
}

TEST_CASE("accelerated run takes nine solves over the same blocks") {
  const ValidatedMdp mdp = fixtures::three_state();
  SolverConfig cfg;
  cfg.algorithm = Algorithm::SrpiPlus;
  const SolveReport rep = srpi_plus(mdp, cfg);

  CHECK(rep.optimal_policy.actions == kOptimal);
  CHECK(rep.kappa_star == doctest::Approx(99.0).epsilon(1e-12));
  CHECK(rep.sharpe_star ==
        doctest::Approx(9.8994949366116654).epsilon(1e-12));

  REQUIRE(rep.outer_rows.size() == 3);
  CHECK(rep.outer_rows[0].solution.candidates.size() == 1);
  CHECK(rep.outer_rows[1].solution.candidates.size() == 1);
  CHECK(rep.outer_rows[2].solution.candidates.size() == 7);
  CHECK(rep.outer_rows[0].solution.aborted_early);
  CHECK(rep.outer_rows[1].solution.aborted_early);
  CHECK_FALSE(rep.outer_rows[2].solution.aborted_early);
  CHECK(rep.mdps_solved == 9);
  CHECK(rep.pi_sweeps == 18);
  CHECK(rep.outer_rows[1].kappa == doctest::Approx(kKappa2).epsilon(1e-12));
}

TEST_CASE("counters add up across blocks") {
  const ValidatedMdp mdp = fixtures::three_state();
  for (Algorithm alg : {Algorithm::Srpi, Algorithm::SrpiPlus}) {
    SolverConfig cfg;
    cfg.algorithm = alg;
    const SolveReport rep = solve(mdp, cfg);
    int solves = 0;
    long sweeps = 0;
    for (const OuterRow& row : rep.outer_rows) {
      solves += row.solution.aux_solves;
      for (const AuxSolution& c : row.solution.candidates)
        sweeps += c.pi_sweeps;
    }
    CHECK(rep.mdps_solved == solves);
    CHECK(rep.pi_sweeps == sweeps);
  }
}

TEST_CASE("a single-policy problem settles in at most two blocks") {
  const ValidatedMdp mdp = fixtures::single_policy();
  const SolveReport rep = solve(mdp, SolverConfig{});
  CHECK(rep.outer_rows.size() <= 2);
  CHECK(rep.optimal_policy.actions == std::vector<int>{0, 0});
  const PolicyMetrics direct =
      evaluate(mdp, Policy{{0, 0}}, Setting::average());
  CHECK(rep.kappa_star == doctest::Approx(direct.ratio()).epsilon(1e-12));
}

TEST_CASE("starting at the fixed point terminates in one block") {
  const ValidatedMdp mdp = fixtures::three_state();
  SolverConfig cfg;
  cfg.initial_kappa = 99.0;
  const SolveReport rep = solve(mdp, cfg);
  CHECK(rep.outer_rows.size() == 1);
  CHECK(rep.optimal_policy.actions == kOptimal);
  CHECK(rep.kappa_star == doctest::Approx(99.0).epsilon(1e-12));
}

TEST_CASE("config validation") {
  const ValidatedMdp mdp = fixtures::three_state();
  SolverConfig cfg;

  SUBCASE("negative starting kappa") {
    cfg.initial_kappa = -1.0;
    CHECK_THROWS_AS(solve(mdp, cfg), ValidationError);
  }
  SUBCASE("nonpositive tolerance") {
    cfg.kappa_tol = 0.0;
    CHECK_THROWS_AS(solve(mdp, cfg), ValidationError);
  }
  SUBCASE("nonpositive budgets") {
    cfg.outer_budget = 0;
    CHECK_THROWS_AS(solve(mdp, cfg), ValidationError);
  }
  SUBCASE("initial policy of the wrong size") {
    cfg.initial_policy = Policy{{0, 0}};
    CHECK_THROWS_AS(solve(mdp, cfg), ValidationError);
  }
  SUBCASE("initial policy action out of range") {
    cfg.initial_policy = Policy{{0, 3, 0}};
    CHECK_THROWS_AS(solve(mdp, cfg), ValidationError);
  }
}

TEST_CASE("a custom starting policy seeds every block") {
  const ValidatedMdp mdp = fixtures::three_state();
  SolverConfig cfg;
  cfg.initial_policy = Policy{{1, 0, 1}};
  const SolveReport rep = solve(mdp, cfg);
  CHECK(rep.optimal_policy.actions == kOptimal);
  for (const OuterRow& row : rep.outer_rows)
    CHECK(row.solution.candidates[0].inner_trace[0].actions ==
          std::vector<int>{1, 0, 1});
}

TEST_CASE("entry points insist on a matching config") {
  const ValidatedMdp mdp = fixtures::three_state();
  SolverConfig cfg;  // algorithm = Srpi
  CHECK_THROWS_AS(srpi_plus(mdp, cfg), ValidationError);
  cfg.algorithm = Algorithm::SrpiPlus;
  CHECK_THROWS_AS(srpi(mdp, cfg), ValidationError);
}

TEST_CASE("outer budget of one round is not enough here") {
  const ValidatedMdp mdp = fixtures::three_state();
  SolverConfig cfg;
  cfg.outer_budget = 1;
  CHECK_THROWS_AS(solve(mdp, cfg), BudgetError);
}

TEST_CASE("discounted runs find the same optimum") {
  const ValidatedMdp mdp = fixtures::three_state();
  const Eigen::VectorXd mu = Eigen::VectorXd::Constant(3, 1.0 / 3);
  for (Algorithm alg : {Algorithm::Srpi, Algorithm::SrpiPlus}) {
    SolverConfig cfg;
    cfg.algorithm = alg;
    cfg.setting = Setting::discounted(0.95, mu);
    const SolveReport rep = solve(mdp, cfg);
    CHECK(rep.optimal_policy.actions == kOptimal);
    CHECK(rep.kappa_star == doctest::Approx(99.0).epsilon(1e-9));
    CHECK(rep.sharpe_star ==
          doctest::Approx(9.8994949366116654).epsilon(1e-9));
  }
}
