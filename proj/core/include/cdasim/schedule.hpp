#pragma once

#include <optional>
#include <vector>

#include "cdasim/types.hpp"

namespace cdasim {

// Supply or demand schedule: the set of limit prices handed to one side of
// the market at each replenishment.
struct Schedule {
  Side side{Side::Bid};          // Bid = demand, Ask = supply
  Price min_price{0};
  Price max_price{0};
  int count{0};
  std::vector<Price> fixed;      // non-empty => Fixed mode, length must equal count

  bool evenly_spaced() const { return fixed.empty(); }
};

// Limit prices in trader-index order: buyer/seller k always receives the
// k-th price. Evenly spaced mode spans [min,max] inclusive with equal steps.
std::vector<Price> schedule_prices(const Schedule& s);

struct Equilibrium {
  // Price interval [low, high]; degenerate when the curves cross at a point.
  // Undefined (nullopt) when no trade is possible (quantity == 0).
  std::optional<Price> price_low;
  std::optional<Price> price_high;
  int quantity{0};
  // Maximum total surplus attainable per replenishment (assortative pairing).
  std::int64_t max_surplus{0};
};

// Crossing of the stepwise demand (sorted descending) and supply (sorted
// ascending) curves.
Equilibrium theoretical_equilibrium(const std::vector<Price>& demand_limits,
                                    const std::vector<Price>& supply_limits);

}  // namespace cdasim
