#include "srmdp/reports.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>
#include <utility>

#include "srmdp/errors.hpp"
#include "srmdp/random_instance.hpp"

namespace srmdp {
namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_quote(const std::string& field) {
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string sequence_field(const ValidatedMdp& mdp,
                           const std::vector<Policy>& trace) {
  std::string joined;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i > 0) joined += '|';
    joined += format_policy(mdp, trace[i]);
  }
  return csv_quote(joined);
}

}  // namespace

std::string emit_trace_csv(const ValidatedMdp& mdp,
                           const SolveReport& report) {
  std::ostringstream out;
  out << "kappa,y,policy_sequence,m2v,kappa_prime\n";
  for (const OuterRow& row : report.outer_rows) {
    for (const AuxSolution& cand : row.solution.candidates) {
      out << fmt17(row.kappa) << ',' << fmt17(cand.y) << ','
          << sequence_field(mdp, cand.inner_trace) << ',' << fmt17(cand.m2v)
          << ',' << fmt17(cand.kappa_prime()) << '\n';
    }
  }
  out << "# optimal_policy=" << format_policy(mdp, report.optimal_policy)
      << " kappa_star=" << fmt17(report.kappa_star)
      << " sharpe_star=" << fmt17(report.sharpe_star)
      << " mdps_solved=" << report.mdps_solved
      << " pi_sweeps=" << report.pi_sweeps << '\n';
  return std::move(out).str();
}

std::string emit_frontier_csv(const ValidatedMdp& mdp,
                              const std::vector<FrontierPoint>& points,
                              const std::vector<EnumeratedPolicy>& all) {
  std::ostringstream out;
  out << "policy,zeta,second_moment,eta,sharpe,on_frontier\n";
  for (const EnumeratedPolicy& e : all) {
    bool on = false;
    for (const FrontierPoint& p : points)
      if (p.policy == e.policy) {
        on = true;
        break;
      }
    out << csv_quote(format_policy(mdp, e.policy)) << ','
        << fmt17(e.metrics.zeta) << ',' << fmt17(e.metrics.second_moment)
        << ',' << fmt17(e.metrics.eta) << ',' << fmt17(e.metrics.sharpe)
        << ',' << (on ? "true" : "false") << '\n';
  }
  return std::move(out).str();
}

namespace {

struct TrialCounts {
  int srpi = 0;
  int srpi_plus = 0;
};

TrialCounts run_trial(int size, std::uint64_t seed) {
  const ValidatedMdp mdp = validate(gen_random_mdp(size, size, seed));
  SolverConfig cfg;
  cfg.setting = Setting::average();
  cfg.algorithm = Algorithm::Srpi;
  TrialCounts counts;
  counts.srpi = solve(mdp, cfg).mdps_solved;
  cfg.algorithm = Algorithm::SrpiPlus;
  counts.srpi_plus = solve(mdp, cfg).mdps_solved;
  return counts;
}

}  // namespace

BenchReport run_bench(const std::vector<int>& sizes, int trials,
                      std::uint64_t seed) {
  if (trials < 1) throw ValidationError("bench needs at least one trial");
  for (int size : sizes)
    if (size < 1 || size > 30)
      throw ValidationError("bench sizes must lie in [1, 30]");

  SplitMix64 master(seed);
  BenchReport report;
  for (int size : sizes) {
    std::vector<std::uint64_t> trial_seeds(trials);
    for (auto& s : trial_seeds) s = master.next();

    std::vector<std::future<TrialCounts>> futures;
    futures.reserve(trials);
    for (int t = 0; t < trials; ++t)
      futures.push_back(std::async(std::launch::async, run_trial, size,
                                   trial_seeds[t]));

    std::vector<TrialCounts> ok;
    int failures = 0;
    for (auto& f : futures) {
      try {
        ok.push_back(f.get());
      } catch (const Error&) {
        ++failures;
      }
    }

    BenchRow row;
    row.size = size;
    row.trials = trials;
    row.failures = failures;
    const double n = static_cast<double>(ok.size());
    if (!ok.empty()) {
      double sum_s = 0, sum_p = 0;
      int le = 0;
      for (const TrialCounts& c : ok) {
        sum_s += c.srpi;
        sum_p += c.srpi_plus;
        if (c.srpi_plus <= c.srpi) ++le;
      }
      row.srpi_mean = sum_s / n;
      row.srpi_plus_mean = sum_p / n;
      row.frac_plus_le = le / n;
      if (ok.size() > 1) {
        double ss = 0, sp = 0;
        for (const TrialCounts& c : ok) {
          ss += (c.srpi - row.srpi_mean) * (c.srpi - row.srpi_mean);
          sp += (c.srpi_plus - row.srpi_plus_mean) *
                (c.srpi_plus - row.srpi_plus_mean);
        }
        row.srpi_sd = std::sqrt(ss / (n - 1));
        row.srpi_plus_sd = std::sqrt(sp / (n - 1));
      }
    }
    const double policies = std::pow(static_cast<double>(size),
                                     static_cast<double>(size));
    row.bound = (policies + 1.0) * (2.0 * policies + 1.0);
    report.rows.push_back(row);
  }
  return report;
}

std::string emit_bench_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "size,trials,failures,srpi_mean,srpi_sd,srpi_plus_mean,srpi_plus_sd,"
         "frac_plus_le,bound\n";
  for (const BenchRow& r : report.rows) {
    out << r.size << ',' << r.trials << ',' << r.failures << ','
        << fmt17(r.srpi_mean) << ',' << fmt17(r.srpi_sd) << ','
        << fmt17(r.srpi_plus_mean) << ',' << fmt17(r.srpi_plus_sd) << ','
        << fmt17(r.frac_plus_le) << ',' << fmt17(r.bound) << '\n';
  }
  return std::move(out).str();
}

}  // namespace srmdp
