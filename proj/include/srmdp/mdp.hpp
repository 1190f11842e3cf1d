#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "srmdp/errors.hpp"

namespace srmdp {

// Decoded instance, prior to numeric validation. States and actions are
// mapped to dense indices in file order; original identifiers are kept for
// reporting. transition[s][a] is a dense row over destination states
// (omitted destinations are 0).
struct MdpSpec {
  std::vector<std::string> states;
  std::vector<std::vector<std::string>> actions;            // per state
  std::vector<std::vector<std::vector<double>>> transition; // [s][a][s']
  std::vector<std::vector<double>> reward;                  // [s][a]

  bool operator==(const MdpSpec&) const = default;
};

// Deterministic stationary policy: one action index per state.
struct Policy {
  std::vector<int> actions;

  bool operator==(const Policy&) const = default;
};

// Chain induced by fixing a policy: P is |S| x |S| row-stochastic, r the
// per-state reward.
struct MarkovRewardProcess {
  Eigen::MatrixXd P;
  Eigen::VectorXd r;
};

// Instance that passed validate(). Immutable; exposes dense tables plus the
// cached reward range used to initialise the pseudo-mean interval.
class ValidatedMdp {
public:
  int num_states() const { return static_cast<int>(spec_.states.size()); }
  int num_actions(int s) const { return static_cast<int>(spec_.actions[s].size()); }
  int max_actions() const { return max_actions_; }

  const std::string& state_name(int s) const { return spec_.states[s]; }
  const std::string& action_name(int s, int a) const { return spec_.actions[s][a]; }

  double reward(int s, int a) const { return spec_.reward[s][a]; }
  // row over destination states for (s, a)
  const Eigen::RowVectorXd& transition_row(int s, int a) const { return rows_[s][a]; }

  double min_reward() const { return r_min_; }
  double max_reward() const { return r_max_; }

  const MdpSpec& spec() const { return spec_; }

private:
  friend ValidatedMdp validate(const MdpSpec& spec);

  MdpSpec spec_;
  std::vector<std::vector<Eigen::RowVectorXd>> rows_;
  double r_min_ = 0.0;
  double r_max_ = 0.0;
  int max_actions_ = 0;
};

// Decodes the JSON instance format. Checks structure only (all states
// listed, every (s, a) has a transition row and a reward entry, destinations
// are known states); stochasticity is validate()'s job. Throws ParseError.
MdpSpec parse_mdp(const std::string& text);

// Inverse of parse_mdp; exact zero probabilities are omitted from rows.
// parse_mdp(serialize_mdp(spec)) == spec.
std::string serialize_mdp(const MdpSpec& spec);

// Numeric validation: rows nonnegative and summing to 1 within 1e-12,
// nonempty state and action lists. Never renormalises; errors name the
// offending (state, action) pair. Throws ValidationError.
ValidatedMdp validate(const MdpSpec& spec);

// Chain and reward vector induced by d.
MarkovRewardProcess restrict(const ValidatedMdp& mdp, const Policy& d);

// "(a1,a1,a2)" using the instance's own identifiers.
std::string format_policy(const ValidatedMdp& mdp, const Policy& d);

// Product of per-state action counts; throws BudgetError above cap.
std::uint64_t policy_count(const ValidatedMdp& mdp,
                           std::uint64_t cap = 10'000'000);

// Streams all deterministic policies in lexicographic order of action
// indices (last state varies fastest). Construction throws BudgetError if
// the policy count exceeds cap.
class PolicyEnumerator {
public:
  explicit PolicyEnumerator(const ValidatedMdp& mdp,
                            std::uint64_t cap = 10'000'000);

  std::optional<Policy> next();

private:
  const ValidatedMdp* mdp_;
  std::vector<int> current_;
  bool done_ = false;
};

// True when the chain's support graph is strongly connected.
bool is_irreducible(const Eigen::MatrixXd& P);

}  // namespace srmdp
