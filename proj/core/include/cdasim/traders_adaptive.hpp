#pragma once

#include <deque>
#include <vector>

#include "cdasim/trader.hpp"

namespace cdasim {

// AA: short-term ZIP-like margin adaptation combined with a long-term
// aggressiveness level driven by an equilibrium estimate (weighted moving
// average of trade prices) and price volatility.
class AaTrader : public Trader {
 public:
  AaTrader(TraderId index, std::string name, const AaParams& params, Price max_price,
           std::uint64_t seed);

  std::optional<QuoteResult> quote(const QuoteContext&, const LobSnapshot&) override;
  void respond(const MarketEvent& ev) override;

  // test hooks
  bool has_equilibrium_estimate() const { return !eq_history_.empty(); }
  double equilibrium_estimate() const { return eq_history_.back(); }
  bool intra_marginal() const;  // classification of the current limit
  double aggressiveness() const { return job_ == Side::Bid ? buy_r_ : sell_r_; }
  double target() const { return job_ == Side::Bid ? *buy_target_ : *sell_target_; }
  void observe_trade_price(double price);  // feeds the estimator directly

 private:
  void calc_eq();
  void calc_alpha();
  void calc_theta();
  void calc_agg(double trade_price);
  void update_r(double price, bool aggressive);
  void calc_target();
  double target_from_r(double r, double eq) const;
  double r_from_target(double target, double eq) const;
  double current_eq_guess() const;

  AaParams p_;
  Price max_price_;
  double theta_;
  double short_rate_;
  double long_rate_;
  double buy_r_;
  double sell_r_;
  std::optional<double> buy_target_;
  std::optional<double> sell_target_;
  std::vector<double> transactions_;
  std::vector<double> eq_history_;
  std::vector<double> alpha_history_;
  double limit_{0.0};
  Side job_{Side::Bid};
  bool have_job_{false};
  LobTracker tracker_;
};

// GDX: belief-based pricing. Acceptance probability for each candidate price
// is estimated from windowed quote/trade history (frequency ratios with
// interpolation), and the quote maximises cumulative discounted surplus via
// backward-induction over the remaining steps.
class GdxTrader : public Trader {
 public:
  GdxTrader(TraderId index, std::string name, const GdxParams& params, Price max_price,
            std::uint64_t seed);

  std::optional<QuoteResult> quote(const QuoteContext&, const LobSnapshot&) override;
  void respond(const MarketEvent& ev) override;

  struct QuoteObs {
    Side side{Side::Bid};
    Price price{0};
    bool accepted{false};
  };

  // Belief over the full tick grid [1, max_price] for the given side/limit;
  // index i corresponds to price i+1. Exposed for tests.
  std::vector<double> belief(Side side, Price limit) const;
  // Horizon-n policy over the feasible price range. horizon >= 1.
  Price dp_quote(Side side, Price limit, int horizon) const;
  double dp_value(Side side, Price limit, int horizon) const;
  void observe(const QuoteObs& obs);

 private:
  GdxParams p_;
  Price max_price_;
  std::deque<QuoteObs> window_;
  LobTracker tracker_;
};

}  // namespace cdasim
