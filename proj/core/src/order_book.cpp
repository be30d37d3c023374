#include "cdasim/order_book.hpp"

namespace cdasim {

std::optional<Price> spread(const LobSnapshot& lob) {
  if (!lob.best_bid || !lob.best_ask) return std::nullopt;
  return *lob.best_ask - *lob.best_bid;
}

std::optional<double> midprice(const LobSnapshot& lob) {
  if (!lob.best_bid || !lob.best_ask) return std::nullopt;
  return (static_cast<double>(*lob.best_bid) + static_cast<double>(*lob.best_ask)) / 2.0;
}

std::optional<double> microprice(const LobSnapshot& lob) {
  if (!lob.best_bid || !lob.best_ask) return std::nullopt;
  const double vb = lob.best_bid_volume;
  const double va = lob.best_ask_volume;
  if (vb + va <= 0) return std::nullopt;
  return (vb * static_cast<double>(*lob.best_bid) + va * static_cast<double>(*lob.best_ask)) /
         (va + vb);
}

template <typename Map>
bool OrderBook::erase_from(Map& levels, Price price, TraderId trader) {
  auto it = levels.find(price);
  if (it == levels.end()) return false;
  auto& queue = it->second;
  for (auto qit = queue.begin(); qit != queue.end(); ++qit) {
    if (qit->trader == trader) {
      queue.erase(qit);
      if (queue.empty()) levels.erase(it);
      return true;
    }
  }
  return false;
}

bool OrderBook::cancel(TraderId trader) {
  auto it = resting_.find(trader);
  if (it == resting_.end()) return false;
  const auto [side, price] = it->second;
  resting_.erase(it);
  if (side == Side::Bid) return erase_from(bids_, price, trader);
  return erase_from(asks_, price, trader);
}

MatchResult OrderBook::submit(Order order) {
  MatchResult result;
  if (order.price < kMinPrice) {
    result.reject_reason = "price below minimum tick";
    return result;
  }
  if (unit_quantities_only_ && order.quantity != 1) {
    result.reject_reason = "only unit quantities supported";
    return result;
  }

  result.replaced_prior = cancel(order.trader);

  if (order.side == Side::Ask) {
    if (!bids_.empty() && order.price <= bids_.begin()->first) {
      // Crossing ask executes at the best bid, against the oldest order there.
      auto& queue = bids_.begin()->second;
      const Order& resting = queue.front();
      if (resting.trader == order.trader) {
        result.reject_reason = "self-cross";
        return result;
      }
      Trade trade{order.submit_time, resting.price, resting.trader, order.trader};
      resting_.erase(resting.trader);
      queue.pop_front();
      if (queue.empty()) bids_.erase(bids_.begin());
      last_trade_ = {trade.price, trade.time};
      result.outcome = MatchResult::Outcome::Traded;
      result.trade = trade;
      return result;
    }
    asks_[order.price].push_back(order);
  } else {
    if (!asks_.empty() && order.price >= asks_.begin()->first) {
      auto& queue = asks_.begin()->second;
      const Order& resting = queue.front();
      if (resting.trader == order.trader) {
        result.reject_reason = "self-cross";
        return result;
      }
      Trade trade{order.submit_time, resting.price, order.trader, resting.trader};
      resting_.erase(resting.trader);
      queue.pop_front();
      if (queue.empty()) asks_.erase(asks_.begin());
      last_trade_ = {trade.price, trade.time};
      result.outcome = MatchResult::Outcome::Traded;
      result.trade = trade;
      return result;
    }
    bids_[order.price].push_back(order);
  }
  resting_[order.trader] = {order.side, order.price};
  result.outcome = MatchResult::Outcome::Rested;
  return result;
}

std::optional<Price> OrderBook::best_bid() const {
  if (bids_.empty()) return std::nullopt;
  return bids_.begin()->first;
}

std::optional<Price> OrderBook::best_ask() const {
  if (asks_.empty()) return std::nullopt;
  return asks_.begin()->first;
}

LobSnapshot OrderBook::snapshot(Time now) const {
  LobSnapshot snap;
  snap.time = now;
  snap.last_trade = last_trade_;
  snap.bid_levels.reserve(bids_.size());
  for (const auto& [price, queue] : bids_) {
    int vol = 0;
    for (const auto& o : queue) vol += o.quantity;
    snap.bid_levels.push_back({price, vol});
  }
  snap.ask_levels.reserve(asks_.size());
  for (const auto& [price, queue] : asks_) {
    int vol = 0;
    for (const auto& o : queue) vol += o.quantity;
    snap.ask_levels.push_back({price, vol});
  }
  if (!snap.bid_levels.empty()) {
    snap.best_bid = snap.bid_levels.front().price;
    snap.best_bid_volume = snap.bid_levels.front().volume;
  }
  if (!snap.ask_levels.empty()) {
    snap.best_ask = snap.ask_levels.front().price;
    snap.best_ask_volume = snap.ask_levels.front().volume;
  }
  return snap;
}

}  // namespace cdasim
