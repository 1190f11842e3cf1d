#pragma once

#include <cstdint>

#include "srmdp/mdp.hpp"

namespace srmdp {

// splitmix64: the fixed 64-bit stream behind every random instance. Chosen
// over std::mt19937_64 so the byte-level sequence is pinned by this file
// rather than by a library implementation.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform on [0, 1), 53 random bits
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

// Instance with states s1..sN and actions a1..aK everywhere. Every
// transition row is uniform on the probability simplex (normalised
// exponential variates, drawn as -log(1 - u)), rewards uniform on [0, 10).
// Draw order per (state, action): the row's N variates, then the reward, so
// the spec is a pure function of (n_states, n_actions, seed).
MdpSpec gen_random_mdp(int n_states, int n_actions, std::uint64_t seed);

}  // namespace srmdp
