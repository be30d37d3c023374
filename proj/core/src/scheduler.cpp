#include "cdasim/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cdasim {

BiasedPool build_pool(const std::vector<double>& reaction_times, double resolution) {
  if (reaction_times.empty()) throw std::invalid_argument("no traders");
  if (!(resolution > 0.0)) throw std::invalid_argument("resolution must be positive");
  double r_max = 0.0;
  for (double r : reaction_times) {
    if (!(r > 0.0)) throw std::invalid_argument("reaction times must be positive");
    r_max = std::max(r_max, r);
  }

  BiasedPool pool;
  pool.multiplicity.resize(reaction_times.size());
  long long gcd = 0;
  for (std::size_t i = 0; i < reaction_times.size(); ++i) {
    long long m = std::llround(resolution * r_max / reaction_times[i]);
    m = std::max<long long>(m, 1);
    pool.multiplicity[i] = static_cast<int>(m);
    gcd = std::gcd(gcd, m);
  }
  for (auto& m : pool.multiplicity) m = static_cast<int>(m / gcd);

  for (std::size_t i = 0; i < pool.multiplicity.size(); ++i)
    for (int k = 0; k < pool.multiplicity[i]; ++k)
      pool.entries.push_back(static_cast<TraderId>(i));
  return pool;
}

void step_sequence(const BiasedPool& pool, Rng& rng, std::vector<TraderId>& out) {
  out = pool.entries;
  // Fisher-Yates with our own index sampling for cross-platform determinism.
  for (std::size_t i = out.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
    std::swap(out[i - 1], out[j]);
  }
}

std::vector<TraderId> step_sequence(const BiasedPool& pool, Rng& rng) {
  std::vector<TraderId> out;
  step_sequence(pool, rng, out);
  return out;
}

}  // namespace cdasim
