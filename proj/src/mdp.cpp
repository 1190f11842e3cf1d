#include "srmdp/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace srmdp {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ParseError(path, msg);
}

const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "/" + key, "missing required field");
  return *it;
}

double require_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

}  // namespace

MdpSpec parse_mdp(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("/", std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) fail("/", "expected a JSON object");

  MdpSpec spec;

  const json& jstates = require(root, "states", "");
  if (!jstates.is_array()) fail("/states", "expected an array of state ids");
  std::unordered_map<std::string, int> state_index;
  for (std::size_t i = 0; i < jstates.size(); ++i) {
    const std::string path = "/states/" + std::to_string(i);
    if (!jstates[i].is_string()) fail(path, "expected a string");
    std::string name = jstates[i].get<std::string>();
    if (!state_index.emplace(name, static_cast<int>(i)).second)
      fail(path, "duplicate state id '" + name + "'");
    spec.states.push_back(std::move(name));
  }

  const json& jactions = require(root, "actions", "");
  if (!jactions.is_object()) fail("/actions", "expected an object keyed by state");
  spec.actions.resize(spec.states.size());
  std::vector<std::unordered_map<std::string, int>> action_index(spec.states.size());
  for (auto& [key, value] : jactions.items()) {
    auto it = state_index.find(key);
    if (it == state_index.end()) fail("/actions/" + key, "unknown state id");
    const int s = it->second;
    if (!value.is_array()) fail("/actions/" + key, "expected an array of action ids");
    for (std::size_t i = 0; i < value.size(); ++i) {
      const std::string path = "/actions/" + key + "/" + std::to_string(i);
      if (!value[i].is_string()) fail(path, "expected a string");
      std::string name = value[i].get<std::string>();
      if (!action_index[s].emplace(name, static_cast<int>(i)).second)
        fail(path, "duplicate action id '" + name + "'");
      spec.actions[s].push_back(std::move(name));
    }
  }
  for (std::size_t s = 0; s < spec.states.size(); ++s) {
    if (jactions.find(spec.states[s]) == jactions.end())
      fail("/actions/" + spec.states[s], "missing required field");
  }

  const int n = static_cast<int>(spec.states.size());
  spec.transition.resize(n);
  spec.reward.resize(n);

  const json& jtrans = require(root, "transition", "");
  if (!jtrans.is_object()) fail("/transition", "expected an object keyed by state");
  const json& jreward = require(root, "reward", "");
  if (!jreward.is_object()) fail("/reward", "expected an object keyed by state");

  for (auto& [key, value] : jtrans.items()) {
    if (state_index.find(key) == state_index.end())
      fail("/transition/" + key, "unknown state id");
    if (!value.is_object())
      fail("/transition/" + key, "expected an object keyed by action");
    for (auto& [akey, row] : value.items()) {
      const std::string path = "/transition/" + key + "/" + akey;
      const int s = state_index.at(key);
      if (action_index[s].find(akey) == action_index[s].end())
        fail(path, "unknown action id for state '" + key + "'");
      if (!row.is_object()) fail(path, "expected an object keyed by destination state");
      for (auto& [dkey, p] : row.items()) {
        if (state_index.find(dkey) == state_index.end())
          fail(path + "/" + dkey, "unknown state id");
        require_number(p, path + "/" + dkey);
      }
    }
  }
  for (auto& [key, value] : jreward.items()) {
    if (state_index.find(key) == state_index.end())
      fail("/reward/" + key, "unknown state id");
    if (!value.is_object())
      fail("/reward/" + key, "expected an object keyed by action");
    const int s = state_index.at(key);
    for (auto& [akey, r] : value.items()) {
      const std::string path = "/reward/" + key + "/" + akey;
      if (action_index[s].find(akey) == action_index[s].end())
        fail(path, "unknown action id for state '" + key + "'");
      require_number(r, path);
    }
  }

  for (int s = 0; s < n; ++s) {
    const std::string& sname = spec.states[s];
    const int na = static_cast<int>(spec.actions[s].size());
    spec.transition[s].resize(na);
    spec.reward[s].resize(na);
    const json* strans = nullptr;
    const json* sreward = nullptr;
    if (auto it = jtrans.find(sname); it != jtrans.end()) strans = &*it;
    if (auto it = jreward.find(sname); it != jreward.end()) sreward = &*it;
    for (int a = 0; a < na; ++a) {
      const std::string& aname = spec.actions[s][a];
      if (!strans || strans->find(aname) == strans->end())
        fail("/transition/" + sname + "/" + aname, "missing required field");
      if (!sreward || sreward->find(aname) == sreward->end())
        fail("/reward/" + sname + "/" + aname, "missing required field");
      spec.reward[s][a] = (*sreward)[aname].get<double>();
      std::vector<double> row(n, 0.0);
      for (auto& [dkey, p] : (*strans)[aname].items())
        row[state_index.at(dkey)] = p.get<double>();
      spec.transition[s][a] = std::move(row);
    }
  }
  return spec;
}

std::string serialize_mdp(const MdpSpec& spec) {
  using ojson = nlohmann::ordered_json;
  ojson root;
  root["states"] = spec.states;
  ojson actions = ojson::object();
  ojson transition = ojson::object();
  ojson reward = ojson::object();
  for (std::size_t s = 0; s < spec.states.size(); ++s) {
    actions[spec.states[s]] = spec.actions[s];
    ojson strans = ojson::object();
    ojson sreward = ojson::object();
    for (std::size_t a = 0; a < spec.actions[s].size(); ++a) {
      ojson row = ojson::object();
      for (std::size_t d = 0; d < spec.states.size(); ++d) {
        if (spec.transition[s][a][d] != 0.0)
          row[spec.states[d]] = spec.transition[s][a][d];
      }
      strans[spec.actions[s][a]] = std::move(row);
      sreward[spec.actions[s][a]] = spec.reward[s][a];
    }
    transition[spec.states[s]] = std::move(strans);
    reward[spec.states[s]] = std::move(sreward);
  }
  root["actions"] = std::move(actions);
  root["transition"] = std::move(transition);
  root["reward"] = std::move(reward);
  return root.dump(2) + "\n";
}

ValidatedMdp validate(const MdpSpec& spec) {
  if (spec.states.empty()) throw ValidationError("instance has no states");
  const int n = static_cast<int>(spec.states.size());
  if (static_cast<int>(spec.actions.size()) != n ||
      static_cast<int>(spec.transition.size()) != n ||
      static_cast<int>(spec.reward.size()) != n)
    throw ValidationError("spec tables are inconsistent with the state list");

  ValidatedMdp mdp;
  mdp.spec_ = spec;
  mdp.rows_.resize(n);
  mdp.r_min_ = std::numeric_limits<double>::infinity();
  mdp.r_max_ = -std::numeric_limits<double>::infinity();

  constexpr double kRowSumTol = 1e-12;
  for (int s = 0; s < n; ++s) {
    const int na = static_cast<int>(spec.actions[s].size());
    if (na == 0)
      throw ValidationError("empty action set for state '" + spec.states[s] + "'");
    if (static_cast<int>(spec.transition[s].size()) != na ||
        static_cast<int>(spec.reward[s].size()) != na)
      throw ValidationError("spec tables are inconsistent for state '" +
                            spec.states[s] + "'");
    mdp.rows_[s].resize(na);
    mdp.max_actions_ = std::max(mdp.max_actions_, na);
    for (int a = 0; a < na; ++a) {
      const auto& row = spec.transition[s][a];
      double sum = 0.0;
      for (int d = 0; d < n; ++d) {
        if (row[d] < 0.0)
          throw ValidationError("negative probability for (" + spec.states[s] +
                                ", " + spec.actions[s][a] + ")");
        sum += row[d];
      }
      if (std::abs(sum - 1.0) > kRowSumTol) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", sum);
        throw ValidationError("transition row for (" + spec.states[s] + ", " +
                              spec.actions[s][a] + ") sums to " + buf +
                              ", expected 1");
      }
      mdp.rows_[s][a] = Eigen::Map<const Eigen::RowVectorXd>(row.data(), n);
      mdp.r_min_ = std::min(mdp.r_min_, spec.reward[s][a]);
      mdp.r_max_ = std::max(mdp.r_max_, spec.reward[s][a]);
    }
  }
  return mdp;
}

MarkovRewardProcess restrict(const ValidatedMdp& mdp, const Policy& d) {
  const int n = mdp.num_states();
  if (static_cast<int>(d.actions.size()) != n)
    throw ValidationError("policy length does not match the state count");
  MarkovRewardProcess mrp;
  mrp.P.resize(n, n);
  mrp.r.resize(n);
  for (int s = 0; s < n; ++s) {
    const int a = d.actions[s];
    if (a < 0 || a >= mdp.num_actions(s))
      throw ValidationError("policy selects an unknown action in state '" +
                            mdp.state_name(s) + "'");
    mrp.P.row(s) = mdp.transition_row(s, a);
    mrp.r(s) = mdp.reward(s, a);
  }
  return mrp;
}

std::string format_policy(const ValidatedMdp& mdp, const Policy& d) {
  std::string out = "(";
  for (int s = 0; s < mdp.num_states(); ++s) {
    if (s > 0) out += ",";
    out += mdp.action_name(s, d.actions[s]);
  }
  return out + ")";
}

std::uint64_t policy_count(const ValidatedMdp& mdp, std::uint64_t cap) {
  std::uint64_t count = 1;
  for (int s = 0; s < mdp.num_states(); ++s) {
    const auto na = static_cast<std::uint64_t>(mdp.num_actions(s));
    if (count > cap / na)
      throw BudgetError("policy count exceeds the enumeration cap of " +
                        std::to_string(cap));
    count *= na;
  }
  if (count > cap)
    throw BudgetError("policy count exceeds the enumeration cap of " +
                      std::to_string(cap));
  return count;
}

PolicyEnumerator::PolicyEnumerator(const ValidatedMdp& mdp, std::uint64_t cap)
    : mdp_(&mdp), current_(mdp.num_states(), 0) {
  policy_count(mdp, cap);  // rejects oversized products up front
}

std::optional<Policy> PolicyEnumerator::next() {
  if (done_) return std::nullopt;
  Policy out{current_};
  // lexicographic increment, last state fastest
  for (int s = mdp_->num_states() - 1; s >= 0; --s) {
    if (++current_[s] < mdp_->num_actions(s)) return out;
    current_[s] = 0;
  }
  done_ = true;
  return out;
}

bool is_irreducible(const Eigen::MatrixXd& P) {
  const int n = static_cast<int>(P.rows());
  auto reachable = [&](bool forward) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v) {
        const double p = forward ? P(u, v) : P(v, u);
        if (p > 0.0 && !seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  };
  return reachable(true) && reachable(false);
}

}  // namespace srmdp
