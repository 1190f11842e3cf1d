#include "srmdp/eval.hpp"

#include <cmath>

namespace srmdp {

namespace {

// Shared big-M / sharpe / cv packaging; raw_zeta may be slightly negative
// from roundoff.
PolicyMetrics finish_metrics(double eta, double raw_zeta, double second_moment,
                             double big_m) {
  if (raw_zeta < -kZeroVarianceTol)
    throw NumericalError("negative variance " + std::to_string(raw_zeta));
  double zeta = std::max(raw_zeta, 0.0);
  PolicyMetrics m;
  m.eta = eta;
  m.second_moment = second_moment;
  if (zeta < kZeroVarianceTol) {
    m.zero_variance = true;
    zeta = big_m;
  }
  m.zeta = zeta;
  m.sharpe = eta / std::sqrt(zeta);
  if (std::abs(m.sharpe) > 1e-12) m.cv = 1.0 / m.sharpe;
  return m;
}

void warn_if_reducible(const ValidatedMdp& mdp, const Policy& d,
                       const Eigen::MatrixXd& P) {
  if (!is_irreducible(P))
    warn("policy " + format_policy(mdp, d) + " induces a reducible chain");
}

}  // namespace

Setting Setting::discounted(double alpha, Eigen::VectorXd mu) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw ValidationError("discount factor must lie in (0, 1)");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (mu(i) < 0.0)
      throw ValidationError("initial distribution has a negative entry");
    sum += mu(i);
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw ValidationError("initial distribution does not sum to 1");
  Setting s;
  s.kind_ = Kind::Discounted;
  s.alpha_ = alpha;
  s.mu_ = std::move(mu);
  return s;
}

Eigen::RowVectorXd stationary_distribution(const MarkovRewardProcess& mrp) {
  const int n = static_cast<int>(mrp.P.rows());
  Eigen::MatrixXd A = mrp.P.transpose() - Eigen::MatrixXd::Identity(n, n);
  A.row(0).setOnes();  // replaces one balance equation with sum(pi) = 1
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(0) = 1.0;
  Eigen::VectorXd pi = A.partialPivLu().solve(b);

  for (int i = 0; i < n; ++i) {
    if (pi(i) < -1e-12)
      throw NumericalError(
          "stationary distribution solve failed (reducible chain?)");
    if (pi(i) < 0.0) pi(i) = 0.0;
  }
  Eigen::RowVectorXd row = pi.transpose();
  row /= row.sum();
  // written so a NaN residual (singular solve) also fails the check
  const double residual = (row * mrp.P - row).cwiseAbs().maxCoeff();
  if (!(residual <= 1e-10))
    throw NumericalError(
        "stationary distribution residual check failed (reducible chain?)");
  return row;
}

PolicyMetrics evaluate_average(const ValidatedMdp& mdp, const Policy& d,
                               double big_m) {
  MarkovRewardProcess mrp = restrict(mdp, d);
  warn_if_reducible(mdp, d, mrp.P);
  Eigen::RowVectorXd pi = stationary_distribution(mrp);
  const double eta = pi.dot(mrp.r);
  const double second = pi.dot(mrp.r.cwiseProduct(mrp.r));
  const double zeta = pi.dot((mrp.r.array() - eta).square().matrix());
  return finish_metrics(eta, zeta, second, big_m);
}

ValueFunctions discounted_values(const ValidatedMdp& mdp, const Policy& d,
                                 const Setting& setting) {
  if (setting.is_average())
    throw ValidationError("discounted_values needs a discounted setting");
  MarkovRewardProcess mrp = restrict(mdp, d);
  const int n = static_cast<int>(mrp.P.rows());
  const double alpha = setting.alpha();
  if (setting.mu().size() != n)
    throw ValidationError("initial distribution length does not match the instance");
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - alpha * mrp.P;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);

  ValueFunctions out;
  out.v = (1.0 - alpha) * lu.solve(mrp.r);
  if ((A * out.v / (1.0 - alpha) - mrp.r).cwiseAbs().maxCoeff() >
      1e-8 * std::max(1.0, mrp.r.cwiseAbs().maxCoeff()))
    throw NumericalError("discounted value residual check failed");
  const double eta = setting.mu().dot(out.v);
  Eigen::VectorXd sq = (mrp.r.array() - eta).square().matrix();
  out.w = (1.0 - alpha) * lu.solve(sq);
  return out;
}

Eigen::RowVectorXd occupation_measure(const ValidatedMdp& mdp, const Policy& d,
                                      const Setting& setting) {
  if (setting.is_average())
    throw ValidationError("occupation_measure needs a discounted setting");
  MarkovRewardProcess mrp = restrict(mdp, d);
  const int n = static_cast<int>(mrp.P.rows());
  if (setting.mu().size() != n)
    throw ValidationError("initial distribution length does not match the instance");
  Eigen::MatrixXd At =
      (Eigen::MatrixXd::Identity(n, n) - setting.alpha() * mrp.P).transpose();
  Eigen::VectorXd pic =
      (1.0 - setting.alpha()) * At.partialPivLu().solve(setting.mu());
  return pic.transpose();
}

PolicyMetrics evaluate_discounted(const ValidatedMdp& mdp, const Policy& d,
                                  const Setting& setting, double big_m) {
  if (setting.is_average())
    throw ValidationError("evaluate_discounted needs a discounted setting");
  MarkovRewardProcess mrp = restrict(mdp, d);
  warn_if_reducible(mdp, d, mrp.P);
  const int n = static_cast<int>(mrp.P.rows());
  const double alpha = setting.alpha();
  if (setting.mu().size() != n)
    throw ValidationError("initial distribution length does not match the instance");
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - alpha * mrp.P;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);

  Eigen::VectorXd v = (1.0 - alpha) * lu.solve(mrp.r);
  const double eta = setting.mu().dot(v);
  Eigen::VectorXd w =
      (1.0 - alpha) * lu.solve((mrp.r.array() - eta).square().matrix());
  const double zeta = setting.mu().dot(w);
  Eigen::VectorXd pic =
      (1.0 - alpha) * A.transpose().partialPivLu().solve(setting.mu());
  const double second = pic.dot(mrp.r.cwiseProduct(mrp.r));
  return finish_metrics(eta, zeta, second, big_m);
}

PolicyMetrics evaluate(const ValidatedMdp& mdp, const Policy& d,
                       const Setting& setting, double big_m) {
  return setting.is_average() ? evaluate_average(mdp, d, big_m)
                              : evaluate_discounted(mdp, d, setting, big_m);
}

}  // namespace srmdp
