#include "srmdp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <string>

#include "srmdp/errors.hpp"

namespace srmdp {
namespace {

Policy resolve_initial_policy(const ValidatedMdp& mdp,
                              const SolverConfig& cfg) {
  if (!cfg.initial_policy)
    return Policy{std::vector<int>(mdp.num_states(), 0)};
  const Policy& d0 = *cfg.initial_policy;
  if (static_cast<int>(d0.actions.size()) != mdp.num_states())
    throw ValidationError("initial policy has " +
                          std::to_string(d0.actions.size()) +
                          " entries for " + std::to_string(mdp.num_states()) +
                          " states");
  for (int s = 0; s < mdp.num_states(); ++s)
    if (d0.actions[s] < 0 || d0.actions[s] >= mdp.num_actions(s))
      throw ValidationError("initial policy action out of range in state " +
                            mdp.state_name(s));
  return d0;
}

void check_config(const SolverConfig& cfg) {
  if (cfg.initial_kappa < 0.0)
    throw ValidationError("initial kappa must be nonnegative");
  if (!(cfg.kappa_tol > 0.0))
    throw ValidationError("kappa tolerance must be positive");
  if (cfg.probe_budget <= 0 || cfg.outer_budget <= 0)
    throw ValidationError("budgets must be positive");
}

}  // namespace

SolveReport solve(const ValidatedMdp& mdp, const SolverConfig& cfg) {
  check_config(cfg);
  const Policy d0 = resolve_initial_policy(mdp, cfg);
  const bool plus = cfg.algorithm == Algorithm::SrpiPlus;

  M2VOptions options;
  options.early_exit = plus;
  options.extra_domination = plus;
  options.probe_budget = cfg.probe_budget;

  const auto t0 = std::chrono::steady_clock::now();
  SolveReport report;
  double kappa_next = cfg.initial_kappa;
  for (int round = 0; round < cfg.outer_budget; ++round) {
    const double kappa = kappa_next;
    M2VSolution sol =
        solve_m2v(mdp, kappa, cfg.setting, d0, options, cfg.big_m);
    report.mdps_solved += sol.aux_solves;
    for (const AuxSolution& cand : sol.candidates)
      report.pi_sweeps += cand.pi_sweeps;
    kappa_next = sol.best.kappa_prime();
    report.outer_rows.push_back(OuterRow{kappa, std::move(sol)});
    if (std::abs(kappa_next - kappa) <=
        cfg.kappa_tol * std::max(1.0, std::abs(kappa))) {
      const M2VSolution& last = report.outer_rows.back().solution;
      report.optimal_policy = last.best.policy;
      report.metrics = last.best.metrics;
      report.kappa_star = kappa_next;
      report.sharpe_star = std::sqrt(std::max(kappa_next - 1.0, 0.0));
      report.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      return report;
    }
  }
  throw BudgetError("outer iteration budget exhausted after " +
                    std::to_string(cfg.outer_budget) + " rounds");
}

SolveReport srpi(const ValidatedMdp& mdp, const SolverConfig& cfg) {
  if (cfg.algorithm != Algorithm::Srpi)
    throw ValidationError("config algorithm does not match srpi entry point");
  return solve(mdp, cfg);
}

SolveReport srpi_plus(const ValidatedMdp& mdp, const SolverConfig& cfg) {
  if (cfg.algorithm != Algorithm::SrpiPlus)
    throw ValidationError(
        "config algorithm does not match srpi_plus entry point");
  return solve(mdp, cfg);
}

}  // namespace srmdp
