#include "srmdp/dinkelbach.hpp"

#include <cmath>
#include <cstddef>

namespace srmdp {

RateDiagnostics rate_diagnostics(const std::vector<double>& kappas,
                                 double kappa_star) {
  RateDiagnostics diag;
  if (kappas.size() < 3) return diag;
  std::vector<double> errors(kappas.size());
  for (std::size_t i = 0; i < kappas.size(); ++i)
    errors[i] = std::abs(kappas[i] - kappa_star);
  bool hit_zero = false;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    if (hit_zero || errors[i] == 0.0) {
      hit_zero = true;
      diag.error_ratios.push_back(0.0);
    } else {
      diag.error_ratios.push_back(errors[i + 1] / errors[i]);
    }
  }
  diag.decreasing = true;
  double prev = std::numeric_limits<double>::infinity();
  for (double ratio : diag.error_ratios) {
    if (ratio == 0.0) break;  // converged; trailing ratios are vacuous
    if (ratio >= prev) {
      diag.decreasing = false;
      break;
    }
    prev = ratio;
  }
  return diag;
}

}  // namespace srmdp
