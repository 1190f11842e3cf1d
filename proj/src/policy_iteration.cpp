#include "srmdp/policy_iteration.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace srmdp {

namespace {

constexpr double kImproveTol = 1e-9;  // lookahead comparison tolerance

int iteration_cap(const ValidatedMdp& mdp) {
  return 10 * mdp.num_states() * mdp.max_actions();
}

Eigen::VectorXd restricted_reward(const ReshapedMdp& rmdp, const Policy& d) {
  const int n = rmdp.base().num_states();
  Eigen::VectorXd r(n);
  for (int s = 0; s < n; ++s) r(s) = rmdp.reward(s, d.actions[s]);
  return r;
}

Eigen::MatrixXd restricted_chain(const ValidatedMdp& mdp, const Policy& d) {
  const int n = mdp.num_states();
  Eigen::MatrixXd P(n, n);
  for (int s = 0; s < n; ++s) P.row(s) = mdp.transition_row(s, d.actions[s]);
  return P;
}

// Improvement sweep shared by both settings; q(s, a) comes from the caller.
template <typename Lookahead>
Policy improve(const ValidatedMdp& mdp, const Policy& d, Lookahead q) {
  Policy out = d;
  for (int s = 0; s < mdp.num_states(); ++s) {
    double best = q(s, 0);
    for (int a = 1; a < mdp.num_actions(s); ++a) best = std::max(best, q(s, a));
    if (q(s, d.actions[s]) >= best - kImproveTol) continue;  // keep incumbent
    for (int a = 0; a < mdp.num_actions(s); ++a) {
      if (q(s, a) >= best - kImproveTol) {
        out.actions[s] = a;
        break;
      }
    }
  }
  return out;
}

}  // namespace

ReshapedMdp::ReshapedMdp(const ValidatedMdp& base, double kappa, double y)
    : base_(&base), kappa_(kappa), y_(y) {
  reward_.resize(base.num_states());
  for (int s = 0; s < base.num_states(); ++s) {
    reward_[s].resize(base.num_actions(s));
    for (int a = 0; a < base.num_actions(s); ++a) {
      const double r = base.reward(s, a);
      reward_[s][a] = r * r - kappa * (r - y) * (r - y);
    }
  }
}

AveragePiResult policy_iteration_average(const ReshapedMdp& rmdp,
                                         const Policy& d0) {
  const ValidatedMdp& mdp = rmdp.base();
  const int n = mdp.num_states();

  // gain/bias of a fixed policy: h + g e = r' + P h with h(0) = 0;
  // unknowns x = (g, h(1), ..., h(n-1))
  auto evaluate = [&](const Policy& d) -> std::pair<double, Eigen::VectorXd> {
    Eigen::MatrixXd P = restricted_chain(mdp, d);
    Eigen::VectorXd r = restricted_reward(rmdp, d);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    A.col(0).setOnes();
    for (int j = 1; j < n; ++j) {
      A.col(j) = -P.col(j);
      A(j, j) += 1.0;
    }
    Eigen::VectorXd x = A.partialPivLu().solve(r);
    // written so a NaN residual (singular solve) also fails the check
    const double residual = (A * x - r).cwiseAbs().maxCoeff();
    if (!(residual <= 1e-8 * std::max(1.0, r.cwiseAbs().maxCoeff())))
      throw NumericalError("gain/bias solve residual check failed");
    Eigen::VectorXd h = Eigen::VectorXd::Zero(n);
    h.tail(n - 1) = x.tail(n - 1);
    return {x(0), h};
  };

  AveragePiResult res;
  Policy d = d0;
  res.trace.push_back(d);
  double prev_gain = -std::numeric_limits<double>::infinity();
  const int cap = iteration_cap(mdp);
  for (int iter = 0; iter < cap; ++iter) {
    auto [gain, bias] = evaluate(d);
    if (gain < prev_gain - kImproveTol)
      throw NumericalError("policy iteration gain decreased");
    prev_gain = gain;
    Policy next = improve(mdp, d, [&](int s, int a) {
      return rmdp.reward(s, a) + mdp.transition_row(s, a).dot(bias);
    });
    res.trace.push_back(next);
    ++res.sweeps;
    if (next == d) {
      res.policy = d;
      res.gain = gain;
      res.bias = bias;
      return res;
    }
    d = next;
  }
  throw BudgetError("policy iteration exceeded its iteration cap (cycling?)");
}

DiscountedPiResult policy_iteration_discounted(const ReshapedMdp& rmdp,
                                               const Setting& setting,
                                               const Policy& d0) {
  if (setting.is_average())
    throw ValidationError("policy_iteration_discounted needs a discounted setting");
  const ValidatedMdp& mdp = rmdp.base();
  const int n = mdp.num_states();
  const double alpha = setting.alpha();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);

  auto evaluate = [&](const Policy& d) -> Eigen::VectorXd {
    Eigen::MatrixXd A = I - alpha * restricted_chain(mdp, d);
    Eigen::VectorXd r = restricted_reward(rmdp, d);
    Eigen::VectorXd v = (1.0 - alpha) * A.partialPivLu().solve(r);
    if ((A * v / (1.0 - alpha) - r).cwiseAbs().maxCoeff() >
        1e-8 * std::max(1.0, r.cwiseAbs().maxCoeff()))
      throw NumericalError("discounted policy evaluation residual check failed");
    return v;
  };

  DiscountedPiResult res;
  Policy d = d0;
  res.trace.push_back(d);
  double prev_value = -std::numeric_limits<double>::infinity();
  const int cap = iteration_cap(mdp);
  for (int iter = 0; iter < cap; ++iter) {
    Eigen::VectorXd v = evaluate(d);
    const double score =
        setting.mu().size() == n ? setting.mu().dot(v) : v.sum();
    if (score < prev_value - kImproveTol)
      throw NumericalError("policy iteration value decreased");
    prev_value = score;
    Policy next = improve(mdp, d, [&](int s, int a) {
      return (1.0 - alpha) * rmdp.reward(s, a) +
             alpha * mdp.transition_row(s, a).dot(v);
    });
    res.trace.push_back(next);
    ++res.sweeps;
    if (next == d) {
      res.policy = d;
      res.value = v;
      return res;
    }
    d = next;
  }
  throw BudgetError("policy iteration exceeded its iteration cap (cycling?)");
}

AuxSolution solve_aux(const ValidatedMdp& mdp, double kappa, double y,
                      const Setting& setting, const Policy& warm_start,
                      double big_m) {
  ReshapedMdp rmdp = reshape(mdp, kappa, y);
  AuxSolution sol;
  sol.kappa = kappa;
  sol.y = y;
  if (setting.is_average()) {
    AveragePiResult pi = policy_iteration_average(rmdp, warm_start);
    sol.policy = std::move(pi.policy);
    sol.inner_trace = std::move(pi.trace);
    sol.pi_sweeps = pi.sweeps;
  } else {
    DiscountedPiResult pi =
        policy_iteration_discounted(rmdp, setting, warm_start);
    sol.policy = std::move(pi.policy);
    sol.inner_trace = std::move(pi.trace);
    sol.pi_sweeps = pi.sweeps;
  }
  sol.metrics = evaluate(mdp, sol.policy, setting, big_m);
  sol.m2v = m2v_value(sol.metrics, kappa);
  const double radius = std::abs(y - sol.metrics.eta);
  sol.dominated_lo = y - radius;
  sol.dominated_hi = y + radius;
  return sol;
}

}  // namespace srmdp
