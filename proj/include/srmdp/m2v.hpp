#pragma once

#include <optional>
#include <vector>

#include "srmdp/interval_set.hpp"
#include "srmdp/policy_iteration.hpp"

namespace srmdp {

struct M2VOptions {
  // SRPI+ mechanisms; both off gives plain full coverage.
  bool early_exit = false;       // stop once a candidate's ratio beats kappa
  bool extra_domination = false; // symmetric |eta| cut from positive objectives
  double eps_y = 1e-7;           // minimum surviving interval width
  int probe_budget = 10'000;
};

// Result of maximising E{Q^2} - kappa * zeta over deterministic policies by
// covering the pseudo-mean interval. candidates holds one entry per probe in
// visit order. When aborted_early, best is the candidate that triggered the
// jump rather than the argmax.
struct M2VSolution {
  AuxSolution best;
  std::vector<AuxSolution> candidates;
  bool aborted_early = false;
  int aux_solves = 0;
  double kappa_prime = 0.0;      // ratio of best
  double kappa_prime_max = 0.0;  // max ratio over all candidates

  double best_m2v() const { return best.m2v; }
};

// Proposition-style symmetric cut: policies with |eta| <= sqrt(m2v / kappa)
// cannot beat an objective of m2v. Sound only for kappa >= 1 (within the
// solver kappa is always 0 or a second-moment-to-variance ratio, hence
// >= 1), so nothing is returned below that.
std::optional<Interval> extra_domination_interval(double m2v, double kappa);

// Covers [r_min, r_max] by repeated probing: probe the midpoint of the
// leading part, solve the auxiliary MDP there, subtract the dominated
// interval (widened to eps_y for zero-radius cuts), repeat until empty.
// Warm start chains from probe to probe within this call.
M2VSolution solve_m2v(const ValidatedMdp& mdp, double kappa,
                      const Setting& setting, const Policy& warm_start,
                      const M2VOptions& options = {},
                      double big_m = kDefaultBigM);

}  // namespace srmdp
