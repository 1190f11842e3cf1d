#include <doctest.h>

#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "srmdp/m2v.hpp"

using namespace srmdp;

namespace {
const double kKappa2 = 8.8909624659257709;  // ratio of (a2,a1,a2)
}

TEST_CASE("full coverage at kappa zero maximises the second moment") {
  const ValidatedMdp mdp = fixtures::three_state();
  const M2VSolution sol =
      solve_m2v(mdp, 0.0, Setting::average(), Policy{{0, 0, 0}});

  REQUIRE(sol.candidates.size() == 3);
  CHECK(sol.aux_solves == 3);
  CHECK_FALSE(sol.aborted_early);

  // probe midpoints: [0,9] -> 4.5, then the two pieces around eta
  CHECK(sol.candidates[0].y == doctest::Approx(4.5));
  CHECK(sol.candidates[1].y ==
        doctest::Approx(7.5825688073394497).epsilon(1e-12));
  CHECK(sol.candidates[2].y ==
        doctest::Approx(1.4174311926605503).epsilon(1e-12));

  for (const AuxSolution& c : sol.candidates) {
    CHECK(c.policy.actions == std::vector<int>{1, 0, 1});
    CHECK(c.m2v == doctest::Approx(42.825688073394502).epsilon(1e-12));
  }
  CHECK(sol.best.y == 4.5);  // ties resolve to the first probe
  CHECK(sol.best_m2v() == doctest::Approx(42.825688073394502).epsilon(1e-12));
  CHECK(sol.kappa_prime == doctest::Approx(kKappa2).epsilon(1e-12));
  CHECK(sol.kappa_prime_max == doctest::Approx(kKappa2).epsilon(1e-12));
}

TEST_CASE("full coverage at the second ratio visits seven pseudo-means") {
  const ValidatedMdp mdp = fixtures::three_state();
  const M2VSolution sol =
      solve_m2v(mdp, kKappa2, Setting::average(), Policy{{0, 0, 0}});

  REQUIRE(sol.candidates.size() == 7);
  const std::vector<double> ys = {
      4.5,
      6.8333333333333333,
      8.6556473829201110,
      5.0110192837465565,
      2.1666666666666665,
      3.6207951070336393,
      0.7125382262996607,
  };
  const std::vector<std::vector<int>> winners = {
      {0, 0, 1}, {2, 0, 1}, {1, 0, 1}, {0, 0, 1},
      {0, 1, 0}, {0, 0, 1}, {0, 2, 0},
  };
  for (std::size_t i = 0; i < ys.size(); ++i) {
    CHECK(sol.candidates[i].y == doctest::Approx(ys[i]).epsilon(1e-9));
    CHECK(sol.candidates[i].policy.actions == winners[i]);
  }
  // 20.0242 shows up at probes 1, 4 and 6; the first one is kept
  CHECK(sol.best.y == doctest::Approx(4.5));
  CHECK(sol.best_m2v() ==
        doctest::Approx(20.024230563127606).epsilon(1e-12));
  CHECK(sol.kappa_prime == doctest::Approx(99.0).epsilon(1e-12));
  CHECK(sol.kappa_prime_max == doctest::Approx(99.0).epsilon(1e-12));
}

TEST_CASE("at the fixed point the objective tops out at zero") {
  const ValidatedMdp mdp = fixtures::three_state();
  const M2VSolution sol =
      solve_m2v(mdp, 99.0, Setting::average(), Policy{{0, 0, 0}});

  REQUIRE(sol.candidates.size() == 7);
  CHECK(std::abs(sol.best_m2v()) < 1e-9);
  CHECK(sol.candidates[1].m2v ==
        doctest::Approx(-118.49737039819684).epsilon(1e-12));
  CHECK(sol.candidates[2].m2v ==
        doctest::Approx(-434.03417220772667).epsilon(1e-12));
  CHECK(sol.candidates[4].m2v ==
        doctest::Approx(-177.726369834189).epsilon(1e-10));
  CHECK(sol.candidates[6].m2v ==
        doctest::Approx(-385.43009847655924).epsilon(1e-12));
  CHECK(sol.best.policy.actions == std::vector<int>{0, 0, 1});
  CHECK(sol.kappa_prime == doctest::Approx(99.0).epsilon(1e-12));
}

TEST_CASE("early exit stops on the first improving candidate") {
  const ValidatedMdp mdp = fixtures::three_state();
  M2VOptions options;
  options.early_exit = true;
  options.extra_domination = true;

  SUBCASE("kappa zero") {
    const M2VSolution sol = solve_m2v(mdp, 0.0, Setting::average(),
                                      Policy{{0, 0, 0}}, options);
    REQUIRE(sol.candidates.size() == 1);
    CHECK(sol.aborted_early);
    CHECK(sol.best.policy.actions == std::vector<int>{1, 0, 1});
    CHECK(sol.kappa_prime == doctest::Approx(kKappa2).epsilon(1e-12));
  }

  SUBCASE("second ratio") {
    const M2VSolution sol = solve_m2v(mdp, kKappa2, Setting::average(),
                                      Policy{{0, 0, 0}}, options);
    REQUIRE(sol.candidates.size() == 1);
    CHECK(sol.aborted_early);
    CHECK(sol.best.policy.actions == std::vector<int>{0, 0, 1});
    CHECK(sol.kappa_prime == doctest::Approx(99.0).epsilon(1e-12));
  }

  SUBCASE("fixed point: a matching ratio is not an improvement") {
    const M2VSolution sol = solve_m2v(mdp, 99.0, Setting::average(),
                                      Policy{{0, 0, 0}}, options);
    CHECK_FALSE(sol.aborted_early);
    REQUIRE(sol.candidates.size() == 7);
    CHECK(sol.kappa_prime == doctest::Approx(99.0).epsilon(1e-12));
  }
}

TEST_CASE("symmetric cut needs kappa at least one and a positive objective") {
  CHECK_FALSE(extra_domination_interval(10.0, 0.5).has_value());
  CHECK_FALSE(extra_domination_interval(10.0, 0.0).has_value());
  CHECK_FALSE(extra_domination_interval(0.0, 2.0).has_value());
  CHECK_FALSE(extra_domination_interval(-5.0, 2.0).has_value());

  const auto cut = extra_domination_interval(9.0, 1.0);
  REQUIRE(cut.has_value());
  CHECK(cut->lo == doctest::Approx(-3.0));
  CHECK(cut->hi == doctest::Approx(3.0));

  const double m2v = 20.024230563127606;
  const auto scaled = extra_domination_interval(m2v, kKappa2);
  REQUIRE(scaled.has_value());
  CHECK(scaled->hi == doctest::Approx(std::sqrt(m2v / kKappa2)));
  CHECK(scaled->lo == doctest::Approx(-scaled->hi));
}

TEST_CASE("probe budget bounds the coverage loop") {
  const ValidatedMdp mdp = fixtures::three_state();
  M2VOptions tight;
  tight.probe_budget = 2;
  CHECK_THROWS_AS(
      solve_m2v(mdp, 0.0, Setting::average(), Policy{{0, 0, 0}}, tight),
      BudgetError);
  tight.probe_budget = 3;
  CHECK(solve_m2v(mdp, 0.0, Setting::average(), Policy{{0, 0, 0}}, tight)
            .candidates.size() == 3);
}

TEST_CASE("a fixed policy still takes one probe per remaining piece") {
  const ValidatedMdp mdp = fixtures::single_policy();
  const M2VSolution sol =
      solve_m2v(mdp, 0.0, Setting::average(), Policy{{0, 0}});
  // rewards span [1,4]; each probe wipes the piece it lands in
  REQUIRE(sol.candidates.size() == 3);
  for (const AuxSolution& c : sol.candidates) {
    CHECK(c.policy.actions == std::vector<int>{0, 0});
    CHECK(c.m2v == doctest::Approx(sol.best_m2v()));
  }
  CHECK(sol.best.y == doctest::Approx(2.5));
}

TEST_CASE("a zero-radius cut is widened so coverage still finishes") {
  // one state, one action: eta always equals the probed midpoint region
  const ValidatedMdp mdp = validate(parse_mdp(R"({
    "states": ["s1"],
    "actions": {"s1": ["a1"]},
    "transition": {"s1": {"a1": {"s1": 1.0}}},
    "reward": {"s1": {"a1": 3.0}}
  })"));
  const M2VSolution sol =
      solve_m2v(mdp, 0.0, Setting::average(), Policy{{0}});
  REQUIRE(sol.candidates.size() == 1);
  CHECK(sol.best.y == doctest::Approx(3.0));
  CHECK(sol.best.dominated_lo == doctest::Approx(sol.best.dominated_hi));
  CHECK(sol.best_m2v() == doctest::Approx(9.0));
  CHECK(sol.best.metrics.zero_variance);
}
