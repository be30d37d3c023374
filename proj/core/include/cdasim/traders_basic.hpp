#pragma once

#include "cdasim/trader.hpp"

namespace cdasim {

// GVWY: always quote the limit price.
class GvwyTrader : public Trader {
 public:
  GvwyTrader(TraderId index, std::string name, std::uint64_t seed)
      : Trader(index, std::move(name), "GVWY", seed) {}
  std::optional<QuoteResult> quote(const QuoteContext&, const LobSnapshot&) override;
};

// SHVR: quote one tick inside the current best price, clamped at the limit.
class ShvrTrader : public Trader {
 public:
  ShvrTrader(TraderId index, std::string name, Price stub_bid, Price max_price, std::uint64_t seed)
      : Trader(index, std::move(name), "SHVR", seed), stub_bid_(stub_bid), max_price_(max_price) {}
  std::optional<QuoteResult> quote(const QuoteContext&, const LobSnapshot&) override;
  void on_assignment(const Assignment& a) override { Trader::on_assignment(a); standing_.reset(); }
  void on_fill(const Trade& t) override { Trader::on_fill(t); standing_.reset(); }
  void on_expiry() override { Trader::on_expiry(); standing_.reset(); }

 private:
  Price stub_bid_;
  Price max_price_;
  // Last submitted price; SHVR holds rather than shaving over its own best.
  std::optional<Price> standing_;
};

// ZIC: quote uniformly at random between one tick and the limit (buyers),
// or between the limit and the system maximum (sellers).
class ZicTrader : public Trader {
 public:
  ZicTrader(TraderId index, std::string name, Price max_price, std::uint64_t seed)
      : Trader(index, std::move(name), "ZIC", seed), max_price_(max_price) {}
  std::optional<QuoteResult> quote(const QuoteContext&, const LobSnapshot&) override;

 private:
  Price max_price_;
};

// ZIP: adaptive profit margin moved toward perturbed target prices via
// Widrow-Hoff updates with momentum, driven by quote/trade events.
class ZipTrader : public Trader {
 public:
  ZipTrader(TraderId index, std::string name, const ZipParams& params, Price max_price,
            std::uint64_t seed);

  void on_assignment(const Assignment& a) override;
  std::optional<QuoteResult> quote(const QuoteContext&, const LobSnapshot&) override;
  void respond(const MarketEvent& ev) override;

  // Margin as the fraction mu in quote = L(1-mu) for buyers, L(1+mu) sellers.
  double margin(Side side) const { return side == Side::Bid ? -margin_buy_ : margin_sell_; }
  Price quote_price_for(const Assignment& a) const;  // deterministic, no state change
  double last_price() const { return price_; }

 protected:
  void profit_alter(double target);
  double target_up(double price);
  double target_down(double price);
  bool willing_to_trade(double price) const;
  // subclass hook: called when respond() produced a margin change
  virtual void on_margin_change() {}

  ZipParams p_;
  Price max_price_;
  double beta_;
  double momentum_;
  double margin_buy_;   // <= 0, price = limit * (1 + margin)
  double margin_sell_;  // >= 0
  double prev_change_{0.0};
  double price_{0.0};  // last computed quote price
  bool have_price_{false};
  double limit_{0.0};
  Side job_{Side::Bid};
  bool have_job_{false};
  LobTracker tracker_;
};

}  // namespace cdasim
