#pragma once

#include <string>
#include <vector>

namespace cdasim {

struct StrategyProfile {
  std::string strategy;
  double mean_quote_ns{0.0};
  double mean_respond_ns{0.0};
};

// Times the quote and respond hooks of every built-in strategy against a
// synthetic but realistic market state. `calls` is the sample count per hook.
std::vector<StrategyProfile> profile_strategies(int calls = 100000);

}  // namespace cdasim
