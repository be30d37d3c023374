#pragma once

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cdasim/types.hpp"

namespace cdasim {

struct Order {
  TraderId trader{-1};
  Side side{Side::Bid};
  Price price{0};
  int quantity{1};
  Time submit_time{0};
  bool urgent{false};  // logging flag only; no matching semantics
};

struct Level {
  Price price{0};
  int volume{0};
};

// Anonymised depth view of the book. Immutable value; safe to share.
struct LobSnapshot {
  std::vector<Level> bid_levels;  // price descending
  std::vector<Level> ask_levels;  // price ascending
  std::optional<Price> best_bid;
  std::optional<Price> best_ask;
  int best_bid_volume{0};
  int best_ask_volume{0};
  std::optional<std::pair<Price, Time>> last_trade;
  Time time{0};
};

std::optional<Price> spread(const LobSnapshot& lob);
std::optional<double> midprice(const LobSnapshot& lob);
// Volume-weighted midprice: (Vb*BB + Va*BA) / (Vb+Va).
std::optional<double> microprice(const LobSnapshot& lob);

struct MatchResult {
  enum class Outcome { Rested, Traded, Rejected };
  Outcome outcome{Outcome::Rejected};
  std::optional<Trade> trade;
  bool replaced_prior{false};
  std::string reject_reason;
};

// Public limit order book with continuous double auction matching.
// Price priority across levels, FIFO within a level; a crossing order
// executes at the resting order's price. Single-writer: only the session
// loop mutates the book.
class OrderBook {
 public:
  explicit OrderBook(bool unit_quantities_only = true)
      : unit_quantities_only_(unit_quantities_only) {}

  // Replace semantics: any prior resting order from the same trader is
  // cancelled before the new order is considered.
  MatchResult submit(Order order);

  // Removes the trader's resting order, if any.
  bool cancel(TraderId trader);

  LobSnapshot snapshot(Time now) const;

  std::optional<Price> best_bid() const;
  std::optional<Price> best_ask() const;
  bool has_resting(TraderId trader) const { return resting_.count(trader) > 0; }
  std::optional<std::pair<Side, Price>> resting(TraderId trader) const {
    const auto it = resting_.find(trader);
    if (it == resting_.end()) return std::nullopt;
    return it->second;
  }
  int resting_order_count() const { return static_cast<int>(resting_.size()); }

 private:
  using BidMap = std::map<Price, std::deque<Order>, std::greater<Price>>;
  using AskMap = std::map<Price, std::deque<Order>>;

  BidMap bids_;
  AskMap asks_;
  std::unordered_map<TraderId, std::pair<Side, Price>> resting_;
  std::optional<std::pair<Price, Time>> last_trade_;
  bool unit_quantities_only_;

  template <typename Map>
  bool erase_from(Map& levels, Price price, TraderId trader);
};

}  // namespace cdasim
