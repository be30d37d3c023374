#include "cdasim/schedule.hpp"

#include <algorithm>
#include <cmath>

namespace cdasim {

std::vector<Price> schedule_prices(const Schedule& s) {
  if (s.count <= 0) throw ConfigError("schedule count must be positive");
  if (!s.fixed.empty()) {
    if (static_cast<int>(s.fixed.size()) != s.count)
      throw ConfigError("fixed schedule length does not match count");
    return s.fixed;
  }
  if (s.min_price < kMinPrice || s.max_price < s.min_price)
    throw ConfigError("schedule price range invalid");
  std::vector<Price> prices;
  prices.reserve(s.count);
  if (s.count == 1) {
    prices.push_back(s.min_price);
    return prices;
  }
  const double step = static_cast<double>(s.max_price - s.min_price) / (s.count - 1);
  for (int k = 0; k < s.count; ++k)
    prices.push_back(s.min_price + static_cast<Price>(std::llround(k * step)));
  return prices;
}

Equilibrium theoretical_equilibrium(const std::vector<Price>& demand_limits,
                                    const std::vector<Price>& supply_limits) {
  std::vector<Price> demand = demand_limits;
  std::vector<Price> supply = supply_limits;
  std::sort(demand.begin(), demand.end(), std::greater<Price>());
  std::sort(supply.begin(), supply.end());

  Equilibrium eq;
  const int n = static_cast<int>(std::min(demand.size(), supply.size()));
  int q = 0;
  while (q < n && demand[q] >= supply[q]) {
    eq.max_surplus += demand[q] - supply[q];
    ++q;
  }
  eq.quantity = q;
  if (q == 0) return eq;

  // Equilibrium price box between the marginal and first extra-marginal steps.
  Price low = supply[q - 1];
  Price high = demand[q - 1];
  if (q < static_cast<int>(demand.size())) low = std::max(low, demand[q]);
  if (q < static_cast<int>(supply.size())) high = std::min(high, supply[q]);
  eq.price_low = std::min(low, high);
  eq.price_high = std::max(low, high);
  return eq;
}

}  // namespace cdasim
