#include "srmdp/m2v.hpp"

#include <cmath>

namespace srmdp {

std::optional<Interval> extra_domination_interval(double m2v, double kappa) {
  if (kappa < 1.0 || m2v <= 0.0) return std::nullopt;
  const double radius = std::sqrt(m2v / kappa);
  return Interval{-radius, radius};
}

M2VSolution solve_m2v(const ValidatedMdp& mdp, double kappa,
                      const Setting& setting, const Policy& warm_start,
                      const M2VOptions& options, double big_m) {
  IntervalSet region({mdp.min_reward(), mdp.max_reward()}, options.eps_y);
  M2VSolution sol;
  Policy warm = warm_start;

  while (!region.empty()) {
    if (sol.aux_solves >= options.probe_budget)
      throw BudgetError("pseudo-mean probe budget exhausted");
    const double y = region.next_probe();
    AuxSolution aux = solve_aux(mdp, kappa, y, setting, warm, big_m);
    warm = aux.policy;
    ++sol.aux_solves;

    Interval cut{aux.dominated_lo, aux.dominated_hi};
    if (cut.width() < options.eps_y)  // degenerate cut still removes a notch
      cut = {y - options.eps_y / 2, y + options.eps_y / 2};
    const double before = region.total_measure();
    const std::size_t parts_before = region.size();
    region.subtract(cut);
    if (options.extra_domination) {
      if (auto extra = extra_domination_interval(aux.m2v, kappa))
        region.subtract(*extra);
    }
    if (region.total_measure() > before - options.eps_y / 2 &&
        region.size() >= parts_before)
      throw NumericalError("coverage loop failed to shrink the probe region");

    sol.kappa_prime_max = std::max(sol.kappa_prime_max, aux.kappa_prime());
    sol.candidates.push_back(std::move(aux));

    if (options.early_exit && sol.candidates.back().kappa_prime() > kappa) {
      sol.aborted_early = true;
      sol.best = sol.candidates.back();
      sol.kappa_prime = sol.best.kappa_prime();
      return sol;
    }
  }

  std::size_t best = 0;  // ties keep the first candidate visited
  for (std::size_t i = 1; i < sol.candidates.size(); ++i) {
    if (sol.candidates[i].m2v > sol.candidates[best].m2v) best = i;
  }
  sol.best = sol.candidates[best];
  sol.kappa_prime = sol.best.kappa_prime();
  return sol;
}

}  // namespace srmdp
