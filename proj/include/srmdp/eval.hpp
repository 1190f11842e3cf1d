#pragma once

#include <optional>

#include <Eigen/Dense>

#include "srmdp/mdp.hpp"

namespace srmdp {

// Optimisation criterion. Average needs nothing else; Discounted carries the
// discount factor and the initial distribution mu.
class Setting {
public:
  enum class Kind { Average, Discounted };

  static Setting average() { return Setting(); }
  static Setting discounted(double alpha, Eigen::VectorXd mu);

  Kind kind() const { return kind_; }
  bool is_average() const { return kind_ == Kind::Average; }
  double alpha() const { return alpha_; }
  const Eigen::VectorXd& mu() const { return mu_; }

private:
  Setting() = default;
  Kind kind_ = Kind::Average;
  double alpha_ = 0.0;
  Eigen::VectorXd mu_;
};

// Steady-state (or occupation-weighted) statistics of one policy under the
// instance's own reward. zeta is replaced by big_m for zero-variance
// policies so ratio objectives stay finite; second_moment keeps the true
// value (= eta^2 + true variance).
struct PolicyMetrics {
  double eta = 0.0;
  double zeta = 0.0;
  double second_moment = 0.0;
  double sharpe = 0.0;
  std::optional<double> cv;  // 1/sharpe, absent when |sharpe| <= 1e-12
  bool zero_variance = false;

  double ratio() const { return second_moment / zeta; }
};

// Normalised discounted value functions: v for the reward, w for the
// squared deviations (r - eta)^2.
struct ValueFunctions {
  Eigen::VectorXd v;
  Eigen::VectorXd w;
};

inline constexpr double kDefaultBigM = 1e12;
inline constexpr double kZeroVarianceTol = 1e-10;

// Row vector pi with pi P = pi, sum 1. Dense LU on (P^T - I) with the first
// equation replaced by the normalisation; residual checked at 1e-10.
// Throws NumericalError when the system is rank-deficient (reducible chain
// with several recurrent classes).
Eigen::RowVectorXd stationary_distribution(const MarkovRewardProcess& mrp);

// Average-reward metrics of d. Warns (does not fail) when the induced chain
// is not irreducible.
PolicyMetrics evaluate_average(const ValidatedMdp& mdp, const Policy& d,
                               double big_m = kDefaultBigM);

// v = (1-alpha)(I - alpha P)^{-1} r and the matching w.
ValueFunctions discounted_values(const ValidatedMdp& mdp, const Policy& d,
                                 const Setting& setting);

// Occupation measure pi_c = (1-alpha) mu (I - alpha P)^{-1}.
Eigen::RowVectorXd occupation_measure(const ValidatedMdp& mdp, const Policy& d,
                                      const Setting& setting);

PolicyMetrics evaluate_discounted(const ValidatedMdp& mdp, const Policy& d,
                                  const Setting& setting,
                                  double big_m = kDefaultBigM);

// Dispatches on setting.kind().
PolicyMetrics evaluate(const ValidatedMdp& mdp, const Policy& d,
                       const Setting& setting, double big_m = kDefaultBigM);

// E{Q^2} - kappa * zeta, the mean-squared-variance objective.
inline double m2v_value(const PolicyMetrics& m, double kappa) {
  return m.second_moment - kappa * m.zeta;
}

}  // namespace srmdp
