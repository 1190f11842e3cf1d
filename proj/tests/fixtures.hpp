#pragma once

#include <algorithm>
#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "srmdp/eval.hpp"
#include "srmdp/mdp.hpp"
#include "srmdp/random_instance.hpp"

namespace fixtures {

// Three-state instance used throughout: every state has three actions,
// rewards span [0, 9], optimal Sharpe policy (a1,a1,a2) with
// eta = 14/3, zeta = 2/9, E{Q^2} = 22, sharpe = sqrt(98), ratio = 99.
inline const char* kThreeStateJson = R"json({
  "states": ["s1", "s2", "s3"],
  "actions": {
    "s1": ["a1", "a2", "a3"],
    "s2": ["a1", "a2", "a3"],
    "s3": ["a1", "a2", "a3"]
  },
  "transition": {
    "s1": {
      "a1": {"s1": 0.2, "s2": 0.4, "s3": 0.4},
      "a2": {"s1": 0.4, "s2": 0.3, "s3": 0.3},
      "a3": {"s1": 0.3, "s2": 0.4, "s3": 0.3}
    },
    "s2": {
      "a1": {"s1": 0.3, "s2": 0.3, "s3": 0.4},
      "a2": {"s1": 0.4, "s2": 0.3, "s3": 0.3},
      "a3": {"s1": 0.4, "s2": 0.3, "s3": 0.3}
    },
    "s3": {
      "a1": {"s1": 0.3, "s2": 0.3, "s3": 0.4},
      "a2": {"s1": 0.4, "s2": 0.4, "s3": 0.2},
      "a3": {"s1": 0.3, "s2": 0.4, "s3": 0.3}
    }
  },
  "reward": {
    "s1": {"a1": 5.0, "a2": 9.0, "a3": 7.0},
    "s2": {"a1": 5.0, "a2": 2.0, "a3": 0.0},
    "s3": {"a1": 2.0, "a2": 4.0, "a3": 2.0}
  }
})json";

inline srmdp::ValidatedMdp three_state() {
  return srmdp::validate(srmdp::parse_mdp(kThreeStateJson));
}

// Two states, symmetric mixing; s1 offers rewards 1 or 2, s2 always 2.
// Policy (a1, a1) has eta = 1.5, zeta = 0.25, sharpe = 3; policy (a2, a1)
// has constant reward 2, hence zero variance and a big-M substitute.
inline const char* kZeroVarianceJson = R"json({
  "states": ["s1", "s2"],
  "actions": {"s1": ["a1", "a2"], "s2": ["a1"]},
  "transition": {
    "s1": {"a1": {"s1": 0.5, "s2": 0.5}, "a2": {"s1": 0.5, "s2": 0.5}},
    "s2": {"a1": {"s1": 0.5, "s2": 0.5}}
  },
  "reward": {
    "s1": {"a1": 1.0, "a2": 2.0},
    "s2": {"a1": 2.0}
  }
})json";

inline srmdp::ValidatedMdp zero_variance_pair() {
  return srmdp::validate(srmdp::parse_mdp(kZeroVarianceJson));
}

// Single action everywhere: exactly one policy.
inline const char* kSinglePolicyJson = R"json({
  "states": ["s1", "s2"],
  "actions": {"s1": ["a1"], "s2": ["a1"]},
  "transition": {
    "s1": {"a1": {"s1": 0.3, "s2": 0.7}},
    "s2": {"a1": {"s1": 0.6, "s2": 0.4}}
  },
  "reward": {"s1": {"a1": 1.0}, "s2": {"a1": 4.0}}
})json";

inline srmdp::ValidatedMdp single_policy() {
  return srmdp::validate(srmdp::parse_mdp(kSinglePolicyJson));
}

// Two self-loops: no stationary distribution is reachable from the balance
// equations (two recurrent classes), so average evaluation must fail.
inline const char* kTwoClassJson = R"json({
  "states": ["s1", "s2"],
  "actions": {"s1": ["a1"], "s2": ["a1"]},
  "transition": {
    "s1": {"a1": {"s1": 1.0}},
    "s2": {"a1": {"s2": 1.0}}
  },
  "reward": {"s1": {"a1": 1.0}, "s2": {"a1": 2.0}}
})json";

// v = (1 - alpha) * sum_t alpha^t P^t r, summed directly; independent of the
// linear-solve path under test.
inline Eigen::VectorXd power_series_value(const Eigen::MatrixXd& P,
                                          const Eigen::VectorXd& r,
                                          double alpha) {
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(r.size());
  Eigen::VectorXd term = r;
  double coef = 1.0 - alpha;
  const double cutoff = 1e-17 * std::max(1.0, r.cwiseAbs().maxCoeff());
  for (int t = 0; t < 200000 && coef * term.cwiseAbs().maxCoeff() > cutoff;
       ++t) {
    acc += coef * term;
    term = P * term;
    coef *= alpha;
  }
  return acc;
}

// Long simulated trajectory; returns the empirical mean reward. Checks the
// steady-state semantics without any linear algebra.
inline double rollout_mean(const srmdp::MarkovRewardProcess& mrp,
                           std::uint64_t seed, long steps, long burn_in) {
  srmdp::SplitMix64 rng(seed);
  const int n = static_cast<int>(mrp.P.rows());
  int state = 0;
  double sum = 0.0;
  for (long t = 0; t < burn_in + steps; ++t) {
    if (t >= burn_in) sum += mrp.r(state);
    const double u = rng.next_unit();
    double cum = 0.0;
    int next = n - 1;
    for (int j = 0; j < n; ++j) {
      cum += mrp.P(state, j);
      if (u < cum) {
        next = j;
        break;
      }
    }
    state = next;
  }
  return sum / static_cast<double>(steps);
}

}  // namespace fixtures
