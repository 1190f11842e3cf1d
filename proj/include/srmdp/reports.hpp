#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srmdp/oracle.hpp"
#include "srmdp/solver.hpp"

namespace srmdp {

// One data row per auxiliary solve, grouped by outer kappa, plus a trailing
// '#' summary line. Values carry 17 significant digits so they round-trip.
// Columns: kappa, y, policy_sequence, m2v, kappa_prime. The policy sequence
// is the inner iteration trace (ending with the repeated converged policy),
// pipe-separated.
std::string emit_trace_csv(const ValidatedMdp& mdp, const SolveReport& report);

// Every enumerated policy with its (zeta, E{Q^2}) coordinates and an
// on_frontier flag; plot-ready. Columns: policy, zeta, second_moment, eta,
// sharpe, on_frontier.
std::string emit_frontier_csv(const ValidatedMdp& mdp,
                              const std::vector<FrontierPoint>& points,
                              const std::vector<EnumeratedPolicy>& all);

struct BenchRow {
  int size = 0;
  int trials = 0;
  int failures = 0;
  double srpi_mean = 0.0;
  double srpi_sd = 0.0;  // sample sd, 0 when fewer than 2 trials
  double srpi_plus_mean = 0.0;
  double srpi_plus_sd = 0.0;
  double frac_plus_le = 0.0;  // fraction of trials with plus count <= srpi's
  double bound = 0.0;         // (|D|+1)(2|D|+1) auxiliary-solve bound
};

struct BenchReport {
  std::vector<BenchRow> rows;
};

// Solves `trials` seeded instances per size with both algorithms in the
// average setting and aggregates auxiliary-solve counts. Trials run
// concurrently; each draws its own generator seed from the master stream in
// (size, trial) order, so results are reproducible regardless of scheduling.
// Per-trial failures are counted, not fatal. Sizes are capped at 30.
BenchReport run_bench(const std::vector<int>& sizes, int trials,
                      std::uint64_t seed);

// Columns: size, trials, failures, srpi_mean, srpi_sd, srpi_plus_mean,
// srpi_plus_sd, frac_plus_le, bound.
std::string emit_bench_csv(const BenchReport& report);

}  // namespace srmdp
