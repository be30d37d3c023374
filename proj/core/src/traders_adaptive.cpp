#include "cdasim/traders_adaptive.hpp"

#include <algorithm>
#include <cmath>

namespace cdasim {

namespace {

// (e^{r*theta} - 1) / (e^{theta} - 1) for r in [0,1], with the theta -> 0 limit.
double agg_map(double r, double theta) {
  const double denom = std::exp(theta) - 1.0;
  if (std::fabs(denom) < 1e-9) return r;
  return (std::exp(r * theta) - 1.0) / denom;
}

double inv_agg_map(double y, double theta) {
  y = std::clamp(y, 0.0, 1.0);
  const double denom = std::exp(theta) - 1.0;
  if (std::fabs(denom) < 1e-9) return y;
  const double arg = 1.0 + y * denom;
  if (arg <= 0.0) return 1.0;
  return std::log(arg) / theta;
}

}  // namespace

// --- AA --------------------------------------------------------------------

AaTrader::AaTrader(TraderId index, std::string name, const AaParams& params, Price max_price,
                   std::uint64_t seed)
    : Trader(index, std::move(name), "AA", seed), p_(params), max_price_(max_price) {
  theta_ = p_.theta_init;
  short_rate_ = rng_.uniform(p_.short_rate_min, p_.short_rate_max);
  long_rate_ = rng_.uniform(p_.long_rate_min, p_.long_rate_max);
  buy_r_ = -0.3 * rng_.uniform01();  // start slightly passive
  sell_r_ = -0.3 * rng_.uniform01();
}

double AaTrader::current_eq_guess() const {
  if (!eq_history_.empty()) return eq_history_.back();
  if (job_ == Side::Bid) return limit_ * (1.0 - p_.spinup_eq_offset);
  return limit_ * (1.0 + p_.spinup_eq_offset);
}

bool AaTrader::intra_marginal() const {
  const double eq = current_eq_guess();
  if (job_ == Side::Bid) return limit_ >= eq;
  return limit_ <= eq;
}

void AaTrader::calc_eq() {
  const int n = static_cast<int>(transactions_.size());
  const int w = std::min(n, p_.ma_window);
  double num = 0.0, den = 0.0, weight = 1.0;
  for (int i = 0; i < w; ++i) {  // most recent trade carries the largest weight
    num += weight * transactions_[n - 1 - i];
    den += weight;
    weight *= p_.ma_decay;
  }
  eq_history_.push_back(num / den);
}

void AaTrader::calc_alpha() {
  const double eq = eq_history_.back();
  double sum = 0.0;
  for (double p : transactions_) sum += (p - eq) * (p - eq);
  const double rms = std::sqrt(sum / static_cast<double>(transactions_.size()));
  alpha_history_.push_back(eq > 0.0 ? rms / eq : 0.0);
}

void AaTrader::calc_theta() {
  const auto [mn, mx] = std::minmax_element(alpha_history_.begin(), alpha_history_.end());
  double alpha_norm = 0.4;
  if (*mx > *mn) alpha_norm = (alpha_history_.back() - *mn) / (*mx - *mn);
  const double range = p_.theta_max - p_.theta_min;
  const double desired =
      p_.theta_min + range * (1.0 - alpha_norm * std::exp(p_.volatility_gamma * (alpha_norm - 1.0)));
  theta_ += long_rate_ * (desired - theta_);
  theta_ = std::clamp(theta_, p_.theta_min, p_.theta_max);
}

double AaTrader::target_from_r(double r, double eq) const {
  const double mmax = static_cast<double>(max_price_);
  double target;
  if (job_ == Side::Bid) {
    if (limit_ < eq) {  // extra-marginal buyer
      target = r >= 0.0 ? limit_ : limit_ * (1.0 - agg_map(-r, theta_));
    } else {
      target = r >= 0.0 ? eq + (limit_ - eq) * agg_map(r, theta_)
                        : eq * (1.0 - agg_map(-r, theta_));
    }
    return std::clamp(target, 1.0, limit_);
  }
  if (limit_ > eq) {  // extra-marginal seller
    target = r >= 0.0 ? limit_ : limit_ + (mmax - limit_) * agg_map(-r, theta_);
  } else {
    target = r >= 0.0 ? eq - (eq - limit_) * agg_map(r, theta_)
                      : eq + (mmax - eq) * agg_map(-r, theta_);
  }
  return std::clamp(target, limit_, mmax);
}

double AaTrader::r_from_target(double target, double eq) const {
  constexpr double kEps = 1e-9;
  const double mmax = static_cast<double>(max_price_);
  double r = 0.0;
  if (job_ == Side::Bid) {
    if (limit_ < eq) {
      if (target < limit_ - kEps && limit_ > kEps)
        r = -inv_agg_map(1.0 - target / limit_, theta_);
    } else if (target >= eq) {
      const double span = limit_ - eq;
      r = span > kEps ? inv_agg_map((target - eq) / span, theta_) : 0.0;
    } else if (eq > kEps) {
      r = -inv_agg_map(1.0 - target / eq, theta_);
    }
  } else {
    if (limit_ > eq) {
      const double span = mmax - limit_;
      if (target > limit_ + kEps && span > kEps)
        r = -inv_agg_map((target - limit_) / span, theta_);
    } else if (target <= eq) {
      const double span = eq - limit_;
      r = span > kEps ? inv_agg_map((eq - target) / span, theta_) : 0.0;
    } else {
      const double span = mmax - eq;
      r = span > kEps ? -inv_agg_map((target - eq) / span, theta_) : 0.0;
    }
  }
  return std::clamp(r, -1.0, 1.0);
}

void AaTrader::update_r(double price, bool aggressive) {
  const double eq = current_eq_guess();
  const double r_shout = r_from_target(price, eq);
  const double delta = aggressive ? (1.0 + p_.lambda_rel) * r_shout + p_.lambda_abs
                                  : (1.0 - p_.lambda_rel) * r_shout - p_.lambda_abs;
  double& r = job_ == Side::Bid ? buy_r_ : sell_r_;
  r = std::clamp(r + short_rate_ * (delta - r), -1.0, 1.0);
}

void AaTrader::calc_agg(double trade_price) {
  if (job_ == Side::Bid) {
    const double old_target = buy_target_.value_or(trade_price);
    update_r(trade_price, old_target < trade_price);
  } else {
    const double old_target = sell_target_.value_or(trade_price);
    update_r(trade_price, old_target > trade_price);
  }
}

void AaTrader::calc_target() {
  const double eq = current_eq_guess();
  if (job_ == Side::Bid)
    buy_target_ = target_from_r(buy_r_, eq);
  else
    sell_target_ = target_from_r(sell_r_, eq);
}

void AaTrader::observe_trade_price(double price) {
  transactions_.push_back(price);
  if (!buy_target_) buy_target_ = price;
  if (!sell_target_) sell_target_ = price;
  calc_eq();
  calc_alpha();
  calc_theta();
}

void AaTrader::respond(const MarketEvent& ev) {
  const auto d = tracker_.update(*ev.lob, ev.trade);
  if (d.deal) {
    observe_trade_price(static_cast<double>(ev.trade->price));
    if (have_job_) {
      calc_agg(static_cast<double>(ev.trade->price));
      calc_target();
    }
    return;
  }
  if (!have_job_) return;
  // competitive shouts: an outbidding bid (or undercutting ask) on our own
  // side of the book forces a more aggressive stance
  if (job_ == Side::Bid && d.bid_improved && ev.lob->best_bid) {
    const double b = static_cast<double>(*ev.lob->best_bid);
    if (!buy_target_ || *buy_target_ <= b) {
      update_r(b, true);
      calc_target();
    }
  } else if (job_ == Side::Ask && d.ask_improved && ev.lob->best_ask) {
    const double a = static_cast<double>(*ev.lob->best_ask);
    if (!sell_target_ || *sell_target_ >= a) {
      update_r(a, true);
      calc_target();
    }
  }
}

std::optional<QuoteResult> AaTrader::quote(const QuoteContext& ctx, const LobSnapshot& lob) {
  if (!assignment_) return std::nullopt;
  limit_ = static_cast<double>(assignment_->limit);
  job_ = assignment_->side;
  have_job_ = true;
  calc_target();

  // Accept a standing opposite quote outright when it is already better than
  // the target; waiting only risks losing the deal to a faster rival.
  if (p_.immediate_take && job_ == Side::Bid) {
    if (lob.best_ask && buy_target_ && *lob.best_ask <= *buy_target_ &&
        *lob.best_ask <= assignment_->limit)
      return QuoteResult{*lob.best_ask};
  } else if (p_.immediate_take && job_ == Side::Ask && lob.best_bid && sell_target_ &&
             *lob.best_bid >= *sell_target_ && *lob.best_bid >= assignment_->limit) {
    return QuoteResult{*lob.best_bid};
  }

  const double o_bid = lob.best_bid ? static_cast<double>(*lob.best_bid) : 0.0;
  const double o_ask = lob.best_ask ? static_cast<double>(*lob.best_ask)
                                    : static_cast<double>(max_price_);
  double q;
  if (job_ == Side::Bid) {
    if (limit_ <= o_bid) return std::nullopt;
    if (transactions_.empty()) {
      const double o_ask_plus = (1.0 + p_.lambda_rel) * o_ask + p_.lambda_abs;
      q = o_bid + (std::min(limit_, o_ask_plus) - o_bid) / p_.eta;
    } else {
      q = o_bid + (*buy_target_ - o_bid) / p_.eta;
    }
    Price price = std::clamp<Price>(std::llround(q), kMinPrice, assignment_->limit);
    // Keep closing the spread while the target lies beyond the standing best;
    // otherwise integer rounding can park the book one tick short of a cross.
    if (q > o_bid && price <= static_cast<Price>(o_bid))
      price = std::clamp<Price>(static_cast<Price>(o_bid) + 1, kMinPrice, assignment_->limit);
    return QuoteResult{price};
  }
  if (limit_ >= o_ask) return std::nullopt;
  if (transactions_.empty()) {
    const double o_bid_minus = (1.0 - p_.lambda_rel) * o_bid - p_.lambda_abs;
    q = o_ask - (o_ask - std::max(limit_, o_bid_minus)) / p_.eta;
  } else {
    q = o_ask - (o_ask - *sell_target_) / p_.eta;
  }
  Price price = std::clamp<Price>(std::llround(q), assignment_->limit, max_price_);
  if (q < o_ask && price >= static_cast<Price>(o_ask))
    price = std::clamp<Price>(static_cast<Price>(o_ask) - 1, assignment_->limit, max_price_);
  return QuoteResult{price};
}

// --- GDX -------------------------------------------------------------------

GdxTrader::GdxTrader(TraderId index, std::string name, const GdxParams& params, Price max_price,
                     std::uint64_t seed)
    : Trader(index, std::move(name), "GDX", seed), p_(params), max_price_(max_price) {}

void GdxTrader::observe(const QuoteObs& obs) {
  window_.push_back(obs);
  while (static_cast<int>(window_.size()) > p_.history_window) window_.pop_front();
}

void GdxTrader::respond(const MarketEvent& ev) {
  const auto prev_bb = tracker_.prev_bb;
  const auto prev_ba = tracker_.prev_ba;
  const auto d = tracker_.update(*ev.lob, ev.trade);
  if (ev.trade) {
    const Price p = ev.trade->price;
    auto mark_accepted = [&](Side side) {
      for (auto it = window_.rbegin(); it != window_.rend(); ++it) {
        if (it->side == side && it->price == p && !it->accepted) {
          it->accepted = true;
          return;
        }
      }
    };
    if (prev_bb && p == *prev_bb) {
      observe({Side::Ask, p, true});  // an ask lifted the resting bid
      mark_accepted(Side::Bid);
    } else if (prev_ba && p == *prev_ba) {
      observe({Side::Bid, p, true});
      mark_accepted(Side::Ask);
    } else {
      observe({Side::Bid, p, true});
      observe({Side::Ask, p, true});
    }
  } else {
    if (d.bid_improved && ev.lob->best_bid) observe({Side::Bid, *ev.lob->best_bid, false});
    if (d.ask_improved && ev.lob->best_ask) observe({Side::Ask, *ev.lob->best_ask, false});
  }
}

std::vector<double> GdxTrader::belief(Side side, Price limit) const {
  const int n = static_cast<int>(max_price_);
  std::vector<double> f(n, -1.0);

  // cumulative counts over the tick grid
  std::vector<int> acc_at(n + 2, 0), rej_at(n + 2, 0), opp_at(n + 2, 0);
  for (const auto& o : window_) {
    const int idx = static_cast<int>(std::clamp<Price>(o.price, 1, max_price_));
    if (o.side == side) {
      (o.accepted ? acc_at : rej_at)[idx]++;
    } else {
      opp_at[idx]++;
    }
  }
  std::vector<int> acc_le(n + 2, 0), opp_le(n + 2, 0), rej_ge(n + 2, 0);
  for (int q = 1; q <= n; ++q) {
    acc_le[q] = acc_le[q - 1] + acc_at[q];
    opp_le[q] = opp_le[q - 1] + opp_at[q];
  }
  for (int q = n; q >= 1; --q) rej_ge[q] = rej_ge[q + 1] + rej_at[q];

  for (int q = 1; q <= n; ++q) {
    double num, den;
    if (side == Side::Bid) {
      // accepted bids at <= q, plus asks at <= q, against rejected bids >= q
      num = acc_le[q] + opp_le[q];
      den = num + rej_ge[q];
    } else {
      // accepted asks at >= q, plus bids at >= q, against rejected asks <= q
      const double acc_ge = acc_le[n] - acc_le[q - 1];
      const double opp_ge = opp_le[n] - opp_le[q - 1];
      const double rej_le = rej_ge[1] - rej_ge[q + 1];
      num = acc_ge + opp_ge;
      den = num + rej_le;
    }
    if (den > 0.0) f[q - 1] = num / den;
  }

  // prior ramp: zero at the own limit, rising toward the opposite extreme
  auto prior = [&](int q) -> double {
    if (side == Side::Bid) {
      if (q <= limit) return 0.0;
      return static_cast<double>(q - limit) / static_cast<double>(max_price_ - limit);
    }
    if (q >= limit) return 0.0;
    if (limit <= 1) return 0.0;
    return static_cast<double>(limit - q) / static_cast<double>(limit - 1);
  };

  // interpolate undefined stretches between defined neighbours; undefined
  // ends are anchored at the prior value of the grid boundary
  int prev = -1;  // index of previous defined point
  for (int i = 0; i < n; ++i) {
    if (f[i] < 0.0) continue;
    const double left_val = prev >= 0 ? f[prev] : prior(1);
    const int left_idx = prev >= 0 ? prev : 0;
    if (prev >= 0 || i > 0) {
      for (int j = left_idx + (prev >= 0 ? 1 : 0); j < i; ++j) {
        const double t = static_cast<double>(j - left_idx) / static_cast<double>(i - left_idx);
        f[j] = left_val + t * (f[i] - left_val);
      }
      if (prev < 0 && f[0] < 0.0) f[0] = prior(1);
    }
    prev = i;
  }
  if (prev < 0) {
    for (int i = 0; i < n; ++i) f[i] = prior(i + 1);
  } else if (prev < n - 1) {
    const double right_val = prior(n);
    for (int j = prev + 1; j < n; ++j) {
      const double t = static_cast<double>(j - prev) / static_cast<double>(n - 1 - prev);
      f[j] = f[prev] + t * (right_val - f[prev]);
    }
  }
  for (auto& v : f) v = std::clamp(v, 0.0, 1.0);
  return f;
}

double GdxTrader::dp_value(Side side, Price limit, int horizon) const {
  const auto f = belief(side, limit);
  const Price lo = side == Side::Bid ? kMinPrice : limit;
  const Price hi = side == Side::Bid ? limit : max_price_;
  if (static_cast<long long>(hi - lo + 1) * horizon > p_.max_table_cells)
    throw ConfigError("GDX value table exceeds configured cap");
  double v = 0.0;
  for (int n = 1; n <= horizon; ++n) {
    double best = -1.0;
    for (Price q = lo; q <= hi; ++q) {
      const double fq = f[static_cast<std::size_t>(q - 1)];
      const double s = static_cast<double>(side == Side::Bid ? limit - q : q - limit);
      const double val = fq * s + (1.0 - fq) * p_.discount * v;
      if (val > best) best = val;
    }
    v = best;
  }
  return v;
}

Price GdxTrader::dp_quote(Side side, Price limit, int horizon) const {
  const auto f = belief(side, limit);
  const Price lo = side == Side::Bid ? kMinPrice : limit;
  const Price hi = side == Side::Bid ? limit : max_price_;
  if (static_cast<long long>(hi - lo + 1) * horizon > p_.max_table_cells)
    throw ConfigError("GDX value table exceeds configured cap");

  double v = 0.0;
  Price best_q = side == Side::Bid ? lo : hi;
  for (int n = 1; n <= horizon; ++n) {
    double best = -1.0;
    best_q = side == Side::Bid ? lo : hi;
    // iteration order makes ties resolve to the least aggressive price
    if (side == Side::Bid) {
      for (Price q = lo; q <= hi; ++q) {
        const double fq = f[static_cast<std::size_t>(q - 1)];
        const double val = fq * static_cast<double>(limit - q) + (1.0 - fq) * p_.discount * v;
        if (val > best + 1e-12) {
          best = val;
          best_q = q;
        }
      }
    } else {
      for (Price q = hi; q >= lo; --q) {
        const double fq = f[static_cast<std::size_t>(q - 1)];
        const double val = fq * static_cast<double>(q - limit) + (1.0 - fq) * p_.discount * v;
        if (val > best + 1e-12) {
          best = val;
          best_q = q;
        }
      }
    }
    v = best;
  }
  return best_q;
}

std::optional<QuoteResult> GdxTrader::quote(const QuoteContext& ctx, const LobSnapshot&) {
  if (!assignment_) return std::nullopt;
  const int horizon = static_cast<int>(std::max<Time>(1, ctx.period_end - ctx.time));
  const Price q = dp_quote(assignment_->side, assignment_->limit, horizon);
  return QuoteResult{q};
}

}  // namespace cdasim
