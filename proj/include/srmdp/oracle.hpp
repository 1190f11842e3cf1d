#pragma once

#include <cstdint>
#include <vector>

#include "srmdp/eval.hpp"
#include "srmdp/mdp.hpp"
#include "srmdp/policy_iteration.hpp"

namespace srmdp {

struct EnumeratedPolicy {
  Policy policy;
  PolicyMetrics metrics;
};

struct BruteForceResult {
  Policy optimal;          // Sharpe argmax, lexicographically smallest on ties
  double sharpe_star = 0.0;
  std::vector<EnumeratedPolicy> all;  // enumeration order
};

// Evaluates every deterministic policy. Throws BudgetError when the policy
// count exceeds cap.
BruteForceResult brute_force_optimum(const ValidatedMdp& mdp,
                                     const Setting& setting,
                                     double big_m = kDefaultBigM,
                                     std::uint64_t cap = 10'000'000);

struct FrontierPoint {
  Policy policy;
  double zeta = 0.0;
  double second_moment = 0.0;
  double eta = 0.0;
  double sharpe = 0.0;

  double ratio() const { return second_moment / zeta; }
};

// Upper-left convex hull boundary of the policy cloud in the
// (zeta, E{Q^2}) plane, anchored at the origin, intersected with the Pareto
// set. Ordered from the maximal-second-moment point down toward the origin;
// consecutive segment slopes increase along that order. The origin itself is
// used for construction but not returned. Zero-variance policies sit at
// zeta = big_m and never make the hull.
std::vector<FrontierPoint> frontier(const ValidatedMdp& mdp,
                                    const Setting& setting,
                                    double big_m = kDefaultBigM,
                                    std::uint64_t cap = 10'000'000);

// kappa_star = E{Q^2}/zeta at the frontier's ratio argmax; kappa_low = slope
// to its neighbour with the larger second moment (0 when the argmax is the
// top point). Every kappa in (kappa_low, kappa_star] selects the ratio
// argmax as the m2v maximiser.
struct KappaInterval {
  double kappa_low = 0.0;
  double kappa_star = 0.0;
};

KappaInterval kappa_interval(const std::vector<FrontierPoint>& points);

// Checks an auxiliary solve's domination claim by enumeration: every policy
// whose eta falls inside [dominated_lo, dominated_hi] must have
// E{Q^2} - kappa * zeta <= aux.m2v + 1e-8.
bool verify_domination(const ValidatedMdp& mdp, const Setting& setting,
                       double kappa, const AuxSolution& aux,
                       double big_m = kDefaultBigM,
                       std::uint64_t cap = 10'000'000);

}  // namespace srmdp
