#pragma once

#include <optional>
#include <vector>

#include "srmdp/eval.hpp"
#include "srmdp/m2v.hpp"
#include "srmdp/mdp.hpp"

namespace srmdp {

enum class Algorithm { Srpi, SrpiPlus };

struct SolverConfig {
  Algorithm algorithm = Algorithm::Srpi;
  Setting setting = Setting::average();
  // Inner warm start for each outer round; defaults to the first action
  // everywhere. Each round restarts from it so the probe traces depend only
  // on (kappa, y), not on how the previous round ended.
  std::optional<Policy> initial_policy;
  double initial_kappa = 0.0;  // must be >= 0
  double kappa_tol = 1e-9;     // relative
  double big_m = kDefaultBigM;
  int probe_budget = 10'000;  // per middle-loop coverage pass
  int outer_budget = 1'000;
};

// One outer round: the kappa it ran at plus the full coverage record.
struct OuterRow {
  double kappa = 0.0;
  M2VSolution solution;
};

struct SolveReport {
  Policy optimal_policy;
  PolicyMetrics metrics;     // of optimal_policy under the original reward
  double kappa_star = 0.0;   // final ratio iterate, = 1 + sharpe^2
  double sharpe_star = 0.0;
  std::vector<OuterRow> outer_rows;
  int mdps_solved = 0;       // auxiliary policy-iteration solves, all rounds
  long pi_sweeps = 0;
  double wall_seconds = 0.0;
};

SolveReport solve(const ValidatedMdp& mdp, const SolverConfig& cfg);

// Named entry points; the config's algorithm field must agree.
SolveReport srpi(const ValidatedMdp& mdp, const SolverConfig& cfg);
SolveReport srpi_plus(const ValidatedMdp& mdp, const SolverConfig& cfg);

}  // namespace srmdp
