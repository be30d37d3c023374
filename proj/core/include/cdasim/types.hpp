#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace cdasim {

// Prices are integer tick counts; 1 tick is the smallest increment and the
// lowest admissible price. Display scaling (e.g. 0.01 per tick) is applied
// only at the output layer.
using Price = std::int64_t;
inline constexpr Price kMinPrice = 1;

// Discrete simulation time, in steps.
using Time = std::int64_t;

enum class Side { Bid, Ask };

inline Side opposite(Side s) { return s == Side::Bid ? Side::Ask : Side::Bid; }
inline const char* to_string(Side s) { return s == Side::Bid ? "bid" : "ask"; }

using TraderId = int;

struct Trade {
  Time time{0};
  Price price{0};
  TraderId buyer{-1};
  TraderId seller{-1};
};

struct SessionFault : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cdasim
