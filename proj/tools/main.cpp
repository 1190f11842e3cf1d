#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "srmdp/errors.hpp"
#include "srmdp/eval.hpp"
#include "srmdp/mdp.hpp"
#include "srmdp/oracle.hpp"
#include "srmdp/random_instance.hpp"
#include "srmdp/reports.hpp"
#include "srmdp/solver.hpp"

namespace {

using namespace srmdp;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_file(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path, "cannot open file for writing");
  out << content;
  if (!out) throw ParseError(path, "write failed");
}

ValidatedMdp load_mdp(const std::string& path) {
  return validate(parse_mdp(read_file(path)));
}

std::string fmt4(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::string strip(const std::string& text) {
  std::size_t b = text.find_first_not_of(" \t()");
  std::size_t e = text.find_last_not_of(" \t()");
  if (b == std::string::npos) return "";
  return text.substr(b, e - b + 1);
}

// "a1,a1,a2" (parentheses optional) resolved against per-state action names
Policy parse_policy_arg(const ValidatedMdp& mdp, const std::string& text) {
  const auto tokens = split(strip(text), ',');
  if (static_cast<int>(tokens.size()) != mdp.num_states())
    throw ValidationError("policy '" + text + "' names " +
                          std::to_string(tokens.size()) + " actions for " +
                          std::to_string(mdp.num_states()) + " states");
  Policy d;
  d.actions.reserve(tokens.size());
  for (int s = 0; s < mdp.num_states(); ++s) {
    const std::string name = strip(tokens[s]);
    int found = -1;
    for (int a = 0; a < mdp.num_actions(s); ++a)
      if (mdp.action_name(s, a) == name) {
        found = a;
        break;
      }
    if (found < 0)
      throw ValidationError("state " + mdp.state_name(s) +
                            " has no action named '" + name + "'");
    d.actions.push_back(found);
  }
  return d;
}

Eigen::VectorXd parse_mu_arg(const std::string& text, int n) {
  const auto tokens = split(text, ',');
  if (static_cast<int>(tokens.size()) != n)
    throw ValidationError("initial distribution needs " + std::to_string(n) +
                          " entries");
  Eigen::VectorXd mu(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    try {
      mu(i) = std::stod(strip(tokens[i]));
    } catch (const std::exception&) {
      throw ValidationError("initial distribution entry '" + tokens[i] +
                            "' is not a number");
    }
    if (mu(i) < 0.0)
      throw ValidationError("initial distribution has a negative entry");
    sum += mu(i);
  }
  if (std::abs(sum - 1.0) > 1e-6)
    throw ValidationError("initial distribution sums to " + std::to_string(sum));
  mu /= sum;  // absorb decimal roundoff before the strict library check
  return mu;
}

struct SettingArgs {
  std::string kind = "avg";
  std::optional<double> alpha;
  std::string mu;
};

void add_setting_options(CLI::App* cmd, SettingArgs& args) {
  cmd->add_option("--setting", args.kind, "Criterion: avg or disc")
      ->check(CLI::IsMember({"avg", "disc"}));
  cmd->add_option("--alpha", args.alpha,
                  "Discount factor in (0,1); required with --setting disc");
  cmd->add_option("--mu", args.mu,
                  "Initial distribution, comma separated (disc only; "
                  "default uniform)");
}

Setting make_setting(const SettingArgs& args, int n_states) {
  if (args.kind == "avg") {
    if (args.alpha)
      throw ValidationError("--alpha applies only to the discounted setting");
    if (!args.mu.empty())
      throw ValidationError("--mu applies only to the discounted setting");
    return Setting::average();
  }
  if (!args.alpha)
    throw ValidationError("the discounted setting requires --alpha");
  Eigen::VectorXd mu =
      args.mu.empty()
          ? Eigen::VectorXd::Constant(n_states, 1.0 / n_states).eval()
          : parse_mu_arg(args.mu, n_states);
  return Setting::discounted(*args.alpha, std::move(mu));
}

void print_metric_row(const std::string& label, const std::string& value) {
  std::printf("%-14s %s\n", label.c_str(), value.c_str());
}

int run_evaluate(const std::string& mdp_path, const std::string& policy_text,
                 const SettingArgs& setting_args) {
  const ValidatedMdp mdp = load_mdp(mdp_path);
  const Policy d = parse_policy_arg(mdp, policy_text);
  const Setting setting = make_setting(setting_args, mdp.num_states());
  const PolicyMetrics m = evaluate(mdp, d, setting);

  print_metric_row("policy", format_policy(mdp, d));
  print_metric_row("setting", setting.is_average()
                                  ? "average"
                                  : "discounted alpha=" + fmt4(setting.alpha()));
  print_metric_row("eta", fmt4(m.eta));
  print_metric_row("zeta", fmt4(m.zeta));
  print_metric_row("second_moment", fmt4(m.second_moment));
  print_metric_row("sharpe", fmt4(m.sharpe));
  print_metric_row("ratio", fmt4(m.ratio()));
  print_metric_row("cv", m.cv ? fmt4(*m.cv) : "n/a");
  print_metric_row("zero_variance", m.zero_variance ? "yes" : "no");
  return 0;
}

struct SolveArgs {
  std::string mdp_path;
  std::string algorithm = "srpi";
  SettingArgs setting;
  std::string initial_policy;
  double kappa_tol = 1e-9;
  double initial_kappa = 0.0;
  double big_m = kDefaultBigM;
  int probe_budget = 10'000;
  int outer_budget = 1'000;
  std::string trace_path;
};

int run_solve(const SolveArgs& args) {
  const ValidatedMdp mdp = load_mdp(args.mdp_path);

  SolverConfig cfg;
  cfg.algorithm =
      args.algorithm == "srpi+" ? Algorithm::SrpiPlus : Algorithm::Srpi;
  cfg.setting = make_setting(args.setting, mdp.num_states());
  if (!args.initial_policy.empty())
    cfg.initial_policy = parse_policy_arg(mdp, args.initial_policy);
  cfg.kappa_tol = args.kappa_tol;
  cfg.initial_kappa = args.initial_kappa;
  cfg.big_m = args.big_m;
  cfg.probe_budget = args.probe_budget;
  cfg.outer_budget = args.outer_budget;

  const SolveReport report = solve(mdp, cfg);

  std::string kappas;
  for (const OuterRow& row : report.outer_rows) {
    if (!kappas.empty()) kappas += ", ";
    kappas += fmt4(row.kappa);
  }

  print_metric_row("algorithm", args.algorithm);
  print_metric_row("optimal_policy", format_policy(mdp, report.optimal_policy));
  print_metric_row("kappa_star", fmt4(report.kappa_star));
  print_metric_row("sharpe_star", fmt4(report.sharpe_star));
  print_metric_row("eta", fmt4(report.metrics.eta));
  print_metric_row("zeta", fmt4(report.metrics.zeta));
  print_metric_row("outer_kappas", kappas);
  print_metric_row("mdps_solved", std::to_string(report.mdps_solved));
  print_metric_row("pi_sweeps", std::to_string(report.pi_sweeps));
  print_metric_row("wall_seconds", fmt4(report.wall_seconds));

  if (!args.trace_path.empty())
    write_file(args.trace_path, emit_trace_csv(mdp, report));
  return 0;
}

int run_frontier(const std::string& mdp_path, const SettingArgs& setting_args,
                 const std::string& out_path) {
  const ValidatedMdp mdp = load_mdp(mdp_path);
  const Setting setting = make_setting(setting_args, mdp.num_states());
  const BruteForceResult all = brute_force_optimum(mdp, setting);
  const std::vector<FrontierPoint> points = frontier(mdp, setting);

  write_file(out_path, emit_frontier_csv(mdp, points, all.all));

  std::printf("%-14s %10s %14s %10s %10s\n", "policy", "zeta",
              "second_moment", "eta", "sharpe");
  for (const FrontierPoint& p : points)
    std::printf("%-14s %10s %14s %10s %10s\n",
                format_policy(mdp, p.policy).c_str(), fmt4(p.zeta).c_str(),
                fmt4(p.second_moment).c_str(), fmt4(p.eta).c_str(),
                fmt4(p.sharpe).c_str());
  return 0;
}

int run_gen(int n_states, int n_actions, std::uint64_t seed,
            const std::string& out_path) {
  const MdpSpec spec = gen_random_mdp(n_states, n_actions, seed);
  write_file(out_path, serialize_mdp(spec));
  return 0;
}

int run_bench(const std::string& sizes_text, int trials, std::uint64_t seed,
              const std::string& out_path) {
  std::vector<int> sizes;
  for (const std::string& token : split(sizes_text, ',')) {
    try {
      sizes.push_back(std::stoi(strip(token)));
    } catch (const std::exception&) {
      throw ValidationError("size '" + token + "' is not an integer");
    }
  }
  if (sizes.empty()) throw ValidationError("no sizes given");

  const BenchReport report = srmdp::run_bench(sizes, trials, seed);
  write_file(out_path, emit_bench_csv(report));

  std::printf("%4s %7s %18s %18s %8s %10s\n", "size", "trials",
              "srpi (mean+-sd)", "srpi+ (mean+-sd)", "plus<=", "bound");
  for (const BenchRow& r : report.rows) {
    std::string srpi_col = fmt4(r.srpi_mean) + " +- " + fmt4(r.srpi_sd);
    std::string plus_col =
        fmt4(r.srpi_plus_mean) + " +- " + fmt4(r.srpi_plus_sd);
    char bound_buf[32];
    std::snprintf(bound_buf, sizeof bound_buf, "%.3g", r.bound);
    std::printf("%4d %7d %18s %18s %8s %10s\n", r.size, r.trials,
                srpi_col.c_str(), plus_col.c_str(),
                fmt4(r.frac_plus_le).c_str(), bound_buf);
    if (r.failures > 0)
      std::printf("     (%d of %d trials failed)\n", r.failures, r.trials);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sharpe-ratio optimization for finite MDPs"};
  app.require_subcommand(1);

  std::string eval_mdp, eval_policy;
  SettingArgs eval_setting;
  CLI::App* eval_cmd =
      app.add_subcommand("evaluate", "Steady-state metrics of one policy");
  eval_cmd->add_option("--mdp", eval_mdp, "Instance JSON file")->required();
  eval_cmd->add_option("--policy", eval_policy,
                       "Comma-separated action names, one per state")
      ->required();
  add_setting_options(eval_cmd, eval_setting);

  SolveArgs solve_args;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Maximize the Sharpe ratio");
  solve_cmd->add_option("--mdp", solve_args.mdp_path, "Instance JSON file")
      ->required();
  solve_cmd
      ->add_option("--algorithm", solve_args.algorithm, "srpi or srpi+")
      ->check(CLI::IsMember({"srpi", "srpi+"}));
  add_setting_options(solve_cmd, solve_args.setting);
  solve_cmd->add_option("--initial-policy", solve_args.initial_policy,
                        "Warm-start policy (default: first action everywhere)");
  solve_cmd->add_option("--kappa-tol", solve_args.kappa_tol,
                        "Relative outer termination tolerance");
  solve_cmd->add_option("--initial-kappa", solve_args.initial_kappa,
                        "Starting ratio parameter (>= 0)");
  solve_cmd->add_option("--big-m", solve_args.big_m,
                        "Variance substitute for zero-variance policies");
  solve_cmd->add_option("--probe-budget", solve_args.probe_budget,
                        "Max subproblem solves per coverage pass");
  solve_cmd->add_option("--outer-budget", solve_args.outer_budget,
                        "Max outer ratio iterations");
  solve_cmd->add_option("--trace", solve_args.trace_path,
                        "Write the per-subproblem trace CSV here");

  std::string frontier_mdp, frontier_out;
  SettingArgs frontier_setting;
  CLI::App* frontier_cmd = app.add_subcommand(
      "frontier", "Enumerate policies and the convex efficient frontier");
  frontier_cmd->add_option("--mdp", frontier_mdp, "Instance JSON file")
      ->required();
  add_setting_options(frontier_cmd, frontier_setting);
  frontier_cmd->add_option("--out", frontier_out, "Output CSV path")
      ->required();

  int gen_states = 3, gen_actions = 3;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  CLI::App* gen_cmd =
      app.add_subcommand("gen", "Generate a seeded random instance");
  gen_cmd->add_option("--states", gen_states, "Number of states")->required();
  gen_cmd->add_option("--actions", gen_actions, "Actions per state")
      ->required();
  gen_cmd->add_option("--seed", gen_seed, "Generator seed")->required();
  gen_cmd->add_option("--out", gen_out, "Output JSON path ('-' for stdout)")
      ->required();

  std::string bench_sizes = "3";
  int bench_trials = 30;
  std::uint64_t bench_seed = 0;
  std::string bench_out;
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "Compare srpi and srpi+ subproblem counts on random instances");
  bench_cmd->add_option("--sizes", bench_sizes,
                        "Comma-separated sizes (states = actions)");
  bench_cmd->add_option("--trials", bench_trials, "Instances per size");
  bench_cmd->add_option("--seed", bench_seed, "Master seed")->required();
  bench_cmd->add_option("--out", bench_out, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*eval_cmd) return run_evaluate(eval_mdp, eval_policy, eval_setting);
    if (*solve_cmd) return run_solve(solve_args);
    if (*frontier_cmd)
      return run_frontier(frontier_mdp, frontier_setting, frontier_out);
    if (*gen_cmd) return run_gen(gen_states, gen_actions, gen_seed, gen_out);
    if (*bench_cmd)
      return run_bench(bench_sizes, bench_trials, bench_seed, bench_out);
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const Error& e) {
    // parse + validation failures
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
