#pragma once

#include <vector>

#include "cdasim/rng.hpp"
#include "cdasim/types.hpp"

namespace cdasim {

enum class SchedulerMode { UniformRandom, SpeedProportional };

// Multiset of trader references used for per-step selection. Each step the
// pool is drained in random order without replacement, so a trader acts
// exactly multiplicity(t) times per step.
struct BiasedPool {
  std::vector<int> multiplicity;  // indexed by trader
  std::vector<TraderId> entries;  // expanded multiset, trader-index order

  int size() const { return static_cast<int>(entries.size()); }
};

// multiplicity(t) = round(resolution * R_max / R_t), then divided by the
// collective GCD. Equal reaction times reduce to multiplicity 1 for all,
// i.e. plain uniform random selection.
BiasedPool build_pool(const std::vector<double>& reaction_times, double resolution = 1000.0);

// A uniformly random permutation of the pool multiset.
std::vector<TraderId> step_sequence(const BiasedPool& pool, Rng& rng);

// In-place variant, reusing the output buffer across steps.
void step_sequence(const BiasedPool& pool, Rng& rng, std::vector<TraderId>& out);

}  // namespace cdasim
