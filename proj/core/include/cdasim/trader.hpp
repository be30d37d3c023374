#pragma once

#include <memory>
#include <optional>
#include <string>

#include "cdasim/order_book.hpp"
#include "cdasim/rng.hpp"
#include "cdasim/types.hpp"

namespace cdasim {

// A client instruction to buy/sell one unit at no worse than `limit`.
struct Assignment {
  TraderId trader{-1};
  Side side{Side::Bid};
  Price limit{0};
  Time issue_time{0};
  Time expiry_time{0};
};

struct QuoteContext {
  Time time{0};
  Time period_start{0};
  Time period_end{0};
  Time duration{0};
};

struct QuoteResult {
  Price price{0};
  bool urgent{false};
};

// Broadcast after book-changing events (best bid/ask change or trade).
struct MarketEvent {
  Time time{0};
  const LobSnapshot* lob{nullptr};
  const Trade* trade{nullptr};  // null for non-trading book changes
};

// --- strategy parameters ---------------------------------------------------

struct ZipParams {
  double beta_min{0.1}, beta_max{0.5};        // learning rate range
  double momentum_min{0.0}, momentum_max{0.1};
  double margin_min{0.05}, margin_max{0.35};  // initial margin range
  double perturb_abs{0.05};                   // absolute target perturbation (ticks)
  double perturb_rel{0.05};                   // relative target perturbation factor
};

struct AaParams {
  int ma_window{5};
  double ma_decay{0.95};
  double eta{3.0};  // offer change rate toward target
  double theta_init{-2.0}, theta_min{-8.0}, theta_max{2.0};
  double volatility_gamma{2.0};  // volatility -> theta mapping curvature
  double lambda_rel{0.05}, lambda_abs{0.05};
  double short_rate_min{0.1}, short_rate_max{0.5};
  double long_rate_min{0.1}, long_rate_max{0.5};
  double spinup_eq_offset{0.2};  // equilibrium guess offset before any trade
  // Lift/hit a standing opposite quote outright when it already beats the
  // current target. Disable to force quote-and-wait behaviour, under which
  // reaction-speed handicaps bind much more tightly.
  bool immediate_take{true};
};

struct GdxParams {
  double discount{0.99};
  int history_window{15};
  long long max_table_cells{2'000'000};  // hard cap on grid x horizon
};

struct ZippParams {
  double alpha{0.95};
  double beta{400.0};
  double surplus_floor{1.0};
  bool day_deadline{false};        // false: urgency deadline is the period end
  bool cumulative_surplus{false};  // alternative surplus interpretation
};

struct StrategyParams {
  Price shvr_stub_bid{kMinPrice};  // SHVR fallback on an empty bid book
  ZipParams zip;
  AaParams aa;
  GdxParams gdx;
  ZippParams zipp;
};

// --- trader ----------------------------------------------------------------

class Trader {
 public:
  Trader(TraderId index, std::string name, std::string strategy, std::uint64_t seed)
      : index_(index), name_(std::move(name)), strategy_(std::move(strategy)), rng_(seed) {}
  virtual ~Trader() = default;

  TraderId index() const { return index_; }
  const std::string& name() const { return name_; }
  const std::string& strategy() const { return strategy_; }
  const std::optional<Assignment>& assignment() const { return assignment_; }

  // A new assignment cancels any live one (the session cancels the book order).
  virtual void on_assignment(const Assignment& a) { assignment_ = a; }
  virtual void on_fill(const Trade&) { assignment_.reset(); }
  virtual void on_expiry() { assignment_.reset(); }

  // Called when this trader is selected to act. May abstain.
  virtual std::optional<QuoteResult> quote(const QuoteContext& ctx, const LobSnapshot& lob) = 0;

  // Broadcast market-event hook.
  virtual void respond(const MarketEvent&) {}

 protected:
  TraderId index_;
  std::string name_;
  std::string strategy_;
  std::optional<Assignment> assignment_;
  Rng rng_;
};

// Tracks best bid/ask between events and classifies what happened, shared by
// the reactive strategies.
struct LobTracker {
  std::optional<Price> prev_bb, prev_ba;
  int prev_bb_vol{0}, prev_ba_vol{0};

  struct Delta {
    bool bid_improved{false};
    bool bid_hit{false};
    bool ask_improved{false};
    bool ask_lifted{false};
    bool deal{false};  // implies the event carried a trade
  };

  Delta update(const LobSnapshot& lob, const Trade* trade);
};

// Factory over all seven shipped strategies:
// GVWY, SHVR, ZIC, ZIP, AA, GDX, ZIPP.
std::unique_ptr<Trader> make_trader(const std::string& strategy, TraderId index, std::string name,
                                    const StrategyParams& params, Price max_price,
                                    std::uint64_t seed);

}  // namespace cdasim
