#pragma once

#include <vector>

#include <Eigen/Dense>

#include "srmdp/eval.hpp"
#include "srmdp/mdp.hpp"

namespace srmdp {

// Auxiliary standard MDP for a fixed (kappa, y): same dynamics, reward
// reshaped to r'(s,a) = r(s,a)^2 - kappa (r(s,a) - y)^2. Maximising its
// gain (or mu-weighted value) maximises E{Q^2} - kappa * pseudo-variance
// around the pseudo-mean y.
class ReshapedMdp {
public:
  ReshapedMdp(const ValidatedMdp& base, double kappa, double y);

  const ValidatedMdp& base() const { return *base_; }
  double kappa() const { return kappa_; }
  double y() const { return y_; }
  double reward(int s, int a) const { return reward_[s][a]; }

private:
  const ValidatedMdp* base_;
  double kappa_;
  double y_;
  std::vector<std::vector<double>> reward_;
};

inline ReshapedMdp reshape(const ValidatedMdp& mdp, double kappa, double y) {
  return ReshapedMdp(mdp, kappa, y);
}

// Howard policy iteration on the reshaped reward. trace holds every policy
// visited, starting with d0 and ending with the repeated (converged) policy;
// sweeps = trace.size() - 1. Improvement keeps the incumbent action when it
// is within 1e-9 of the best lookahead, otherwise takes the lowest index
// within tolerance. Iteration cap: 10 * |S| * max |A(s)|.
struct AveragePiResult {
  Policy policy;
  double gain = 0.0;
  Eigen::VectorXd bias;  // bias(0) == 0
  std::vector<Policy> trace;
  int sweeps = 0;
};

struct DiscountedPiResult {
  Policy policy;
  Eigen::VectorXd value;  // normalised: v = (1-alpha) r + alpha P v
  std::vector<Policy> trace;
  int sweeps = 0;
};

AveragePiResult policy_iteration_average(const ReshapedMdp& rmdp,
                                         const Policy& d0);

DiscountedPiResult policy_iteration_discounted(const ReshapedMdp& rmdp,
                                               const Setting& setting,
                                               const Policy& d0);

// One inner solve: policy iteration on the reshaped MDP from the warm-start
// policy, then evaluation of the winner under the ORIGINAL reward. The
// pseudo-mean stays fixed for the whole solve. dominated is the interval
// [y - |y - eta|, y + |y - eta|] of pseudo-means whose optima the winner
// dominates.
struct AuxSolution {
  Policy policy;
  PolicyMetrics metrics;  // under the original reward
  double m2v = 0.0;       // second_moment - kappa * zeta
  double kappa = 0.0;
  double y = 0.0;
  double dominated_lo = 0.0;
  double dominated_hi = 0.0;
  std::vector<Policy> inner_trace;
  int pi_sweeps = 0;

  double kappa_prime() const { return metrics.ratio(); }
};

AuxSolution solve_aux(const ValidatedMdp& mdp, double kappa, double y,
                      const Setting& setting, const Policy& warm_start,
                      double big_m = kDefaultBigM);

}  // namespace srmdp
