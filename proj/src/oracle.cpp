#include "srmdp/oracle.hpp"

#include <cstddef>
#include <utility>

#include "srmdp/errors.hpp"

namespace srmdp {

BruteForceResult brute_force_optimum(const ValidatedMdp& mdp,
                                     const Setting& setting, double big_m,
                                     std::uint64_t cap) {
  BruteForceResult result;
  PolicyEnumerator it(mdp, cap);
  bool first = true;
  while (auto d = it.next()) {
    PolicyMetrics m = evaluate(mdp, *d, setting, big_m);
    if (first || m.sharpe > result.sharpe_star) {
      result.optimal = *d;
      result.sharpe_star = m.sharpe;
      first = false;
    }
    result.all.push_back(EnumeratedPolicy{std::move(*d), m});
  }
  return result;
}

namespace {

// Cloud point; index -1 marks the origin anchor.
struct HullPoint {
  double zeta;
  double m2;
  int index;
};

}  // namespace

std::vector<FrontierPoint> frontier(const ValidatedMdp& mdp,
                                    const Setting& setting, double big_m,
                                    std::uint64_t cap) {
  BruteForceResult all = brute_force_optimum(mdp, setting, big_m, cap);

  std::vector<HullPoint> cloud;
  cloud.reserve(all.all.size() + 1);
  for (std::size_t i = 0; i < all.all.size(); ++i)
    cloud.push_back(HullPoint{all.all[i].metrics.zeta,
                              all.all[i].metrics.second_moment,
                              static_cast<int>(i)});
  cloud.push_back(HullPoint{0.0, 0.0, -1});

  // Start at the highest point (ties toward the smaller variance), then walk
  // toward the origin, always taking the flattest descent: that traces the
  // upper-left hull boundary, and no chosen point can be Pareto-dominated
  // (a dominating point would offer a strictly flatter segment).
  std::size_t top = 0;
  for (std::size_t i = 1; i < cloud.size(); ++i) {
    if (cloud[i].m2 > cloud[top].m2 ||
        (cloud[i].m2 == cloud[top].m2 && cloud[i].zeta < cloud[top].zeta))
      top = i;
  }

  std::vector<HullPoint> chain{cloud[top]};
  while (chain.back().index != -1) {
    const HullPoint& cur = chain.back();
    bool found = false;
    std::size_t best = 0;
    std::pair<double, double> best_key;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      if (!(cloud[i].zeta < cur.zeta - 1e-12)) continue;
      const double slope = (cur.m2 - cloud[i].m2) / (cur.zeta - cloud[i].zeta);
      // collinear candidates: prefer the nearest (largest zeta)
      const std::pair<double, double> key{slope, -cloud[i].zeta};
      if (!found || key < best_key) {
        found = true;
        best = i;
        best_key = key;
      }
    }
    if (!found)
      throw NumericalError("frontier walk found no point toward the origin");
    chain.push_back(cloud[best]);
  }

  std::vector<FrontierPoint> out;
  out.reserve(chain.size() - 1);
  for (const HullPoint& p : chain) {
    if (p.index < 0) continue;
    const EnumeratedPolicy& e = all.all[static_cast<std::size_t>(p.index)];
    out.push_back(FrontierPoint{e.policy, e.metrics.zeta,
                                e.metrics.second_moment, e.metrics.eta,
                                e.metrics.sharpe});
  }
  return out;
}

KappaInterval kappa_interval(const std::vector<FrontierPoint>& points) {
  if (points.empty())
    throw ValidationError("kappa interval needs a nonempty frontier");
  std::size_t opt = 0;
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].ratio() > points[opt].ratio()) opt = i;

  KappaInterval interval;
  interval.kappa_star = points[opt].ratio();
  if (opt == 0) return interval;  // kappa_low = 0: no higher neighbour

  const double dz = points[opt - 1].zeta - points[opt].zeta;
  if (!(dz > 1e-12) && !(dz < -1e-12))
    throw NumericalError("degenerate variance step between frontier points");
  interval.kappa_low =
      (points[opt - 1].second_moment - points[opt].second_moment) / dz;
  return interval;
}

bool verify_domination(const ValidatedMdp& mdp, const Setting& setting,
                       double kappa, const AuxSolution& aux, double big_m,
                       std::uint64_t cap) {
  PolicyEnumerator it(mdp, cap);
  while (auto d = it.next()) {
    PolicyMetrics m = evaluate(mdp, *d, setting, big_m);
    if (m.eta < aux.dominated_lo || m.eta > aux.dominated_hi) continue;
    if (m2v_value(m, kappa) > aux.m2v + 1e-8) return false;
  }
  return true;
}

}  // namespace srmdp
