#include "srmdp/random_instance.hpp"

#include <cmath>
#include <string>

#include "srmdp/errors.hpp"

namespace srmdp {

MdpSpec gen_random_mdp(int n_states, int n_actions, std::uint64_t seed) {
  if (n_states < 1 || n_actions < 1)
    throw ValidationError("random instance needs at least one state and one action");

  SplitMix64 rng(seed);
  MdpSpec spec;
  spec.states.reserve(n_states);
  for (int s = 0; s < n_states; ++s)
    spec.states.push_back("s" + std::to_string(s + 1));

  std::vector<std::string> action_names;
  for (int a = 0; a < n_actions; ++a)
    action_names.push_back("a" + std::to_string(a + 1));

  spec.actions.assign(n_states, action_names);
  spec.transition.resize(n_states);
  spec.reward.resize(n_states);
  for (int s = 0; s < n_states; ++s) {
    spec.transition[s].resize(n_actions);
    spec.reward[s].resize(n_actions);
    for (int a = 0; a < n_actions; ++a) {
      std::vector<double> row(n_states);
      double total = 0.0;
      for (int t = 0; t < n_states; ++t) {
        row[t] = -std::log1p(-rng.next_unit());
        total += row[t];
      }
      if (total > 0.0) {
        for (double& p : row) p /= total;
      } else {
        // all variates zero: vanishing probability, fall back to uniform
        for (double& p : row) p = 1.0 / n_states;
      }
      spec.transition[s][a] = std::move(row);
      spec.reward[s][a] = 10.0 * rng.next_unit();
    }
  }
  return spec;
}

}  // namespace srmdp
