#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "srmdp/errors.hpp"

namespace srmdp {

// Generic ratio maximisation max f(x)/g(x) by Dinkelbach's transform,
// independent of the MDP stack. The linearized solver must return an
// argmax of sign(g(x)) * (f(x) - kappa * g(x)); for candidates of mixed
// sign that weighted objective is exactly what makes the transform valid.
template <typename Candidate>
struct RatioProblem {
  std::function<double(const Candidate&)> numerator;    // f
  std::function<double(const Candidate&)> denominator;  // g, nonzero
  std::function<Candidate(double)> linearized_solver;
};

// kappas[0] is the starting value; each later entry is the ratio of the
// candidate returned at the previous kappa, so solutions[i] produced
// kappas[i + 1]. Iterates are nondecreasing from kappas[1] on, with
// equality only at termination.
template <typename Candidate>
struct RatioTrace {
  std::vector<double> kappas;
  std::vector<Candidate> solutions;
};

template <typename Candidate>
struct RatioResult {
  Candidate best;
  double kappa_star = 0.0;
  RatioTrace<Candidate> trace;
};

template <typename Candidate>
Candidate linearized_argmax(const RatioProblem<Candidate>& problem,
                            double kappa) {
  return problem.linearized_solver(kappa);
}

template <typename Candidate>
RatioResult<Candidate> solve_ratio(const RatioProblem<Candidate>& problem,
                                   double kappa0, double tol = 1e-9,
                                   int budget = 1000) {
  RatioTrace<Candidate> trace;
  trace.kappas.push_back(kappa0);
  double kappa = kappa0;
  for (int iter = 0; iter < budget; ++iter) {
    Candidate x = linearized_argmax(problem, kappa);
    const double f = problem.numerator(x);
    const double g = problem.denominator(x);
    if (g == 0.0)
      throw NumericalError("linearized solver returned a candidate with g = 0");
    if (iter > 0) {
      // once kappa is a feasible ratio the linearized optimum cannot be
      // negative; a violation means the solver is not solving its problem
      const double signed_value =
          (g > 0 ? 1.0 : -1.0) * (f - kappa * g);
      if (signed_value < -1e-9 * std::max({1.0, std::abs(f), std::abs(kappa * g)}))
        throw NumericalError("linearized objective went negative mid-run");
    }
    const double next = f / g;
    if (iter > 0 && next < trace.kappas.back() - 1e-9)
      throw NumericalError("ratio iterates decreased");
    trace.kappas.push_back(next);
    trace.solutions.push_back(std::move(x));
    if (std::abs(next - kappa) <= tol * std::max(1.0, std::abs(kappa))) {
      RatioResult<Candidate> res;
      res.best = trace.solutions.back();
      res.kappa_star = next;
      res.trace = std::move(trace);
      return res;
    }
    kappa = next;
  }
  throw BudgetError("ratio iteration budget exhausted");
}

// Enumeration-backed problem over a finite candidate list; ties go to the
// earliest candidate.
template <typename Candidate>
RatioProblem<Candidate> make_enumerated_ratio_problem(
    std::vector<Candidate> candidates,
    std::function<double(const Candidate&)> f,
    std::function<double(const Candidate&)> g) {
  RatioProblem<Candidate> p;
  p.numerator = f;
  p.denominator = g;
  p.linearized_solver = [candidates = std::move(candidates), f,
                         g](double kappa) {
    std::size_t best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const double gv = g(candidates[i]);
      const double value =
          (gv > 0 ? 1.0 : -1.0) * (f(candidates[i]) - kappa * gv);
      if (value > best_value) {
        best_value = value;
        best = i;
      }
    }
    return candidates[best];
  };
  return p;
}

struct RateDiagnostics {
  std::vector<double> error_ratios;  // |k_{t+1} - k*| / |k_t - k*|
  bool decreasing = false;           // strictly, over the nonzero prefix
};

// Convergence-rate summary for a kappa trace (needs at least 3 iterates).
// Once an error hits exactly zero the remaining ratios are reported as 0.
RateDiagnostics rate_diagnostics(const std::vector<double>& kappas,
                                 double kappa_star);

template <typename Candidate>
RateDiagnostics rate_diagnostics(const RatioTrace<Candidate>& trace,
                                 double kappa_star) {
  return rate_diagnostics(trace.kappas, kappa_star);
}

}  // namespace srmdp
