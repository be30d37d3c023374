#include "cdasim/zipp.hpp"

#include <algorithm>
#include <cmath>

namespace cdasim {

double zipp_lambda(double beta, double alpha, double horizon, double elapsed, double surplus) {
  if (horizon <= 0.0 || surplus <= 0.0) return 0.0;
  const double remaining = horizon - alpha * elapsed;
  if (remaining <= 0.0) return 0.0;
  return beta * remaining / (surplus * horizon);
}

double zipp_wait(double lambda, double u) {
  u = std::clamp(u, 0.0, 1.0 - 1e-12);
  return -lambda * std::log(1.0 - u);
}

Price zipp_delta(Price limit, Price prev_quote, Time remaining) {
  const Price gap = std::llabs(limit - prev_quote);
  const Time rem = std::max<Time>(remaining, 1);
  const Price step = (gap + rem - 1) / rem;  // ceil division
  return std::max<Price>(step, 1);
}

ZippTrader::ZippTrader(TraderId index, std::string name, const ZipParams& zip,
                       const ZippParams& zipp, Price max_price, std::uint64_t seed)
    : ZipTrader(index, std::move(name), zip, max_price, seed), zp_(zipp) {
  strategy_ = "ZIPP";
}

void ZippTrader::on_assignment(const Assignment& a) {
  ZipTrader::on_assignment(a);
  // the timer is armed on the first quote opportunity for this assignment
  t_kappa_.reset();
  last_submitted_.reset();
}

void ZippTrader::on_fill(const Trade& t) {
  if (assignment_) cum_surplus_ += static_cast<double>(std::llabs(assignment_->limit - t.price));
  ZipTrader::on_fill(t);
  t_kappa_.reset();
  last_submitted_.reset();
}

double ZippTrader::surplus_for(Price zip_quote) const {
  double s;
  if (zp_.cumulative_surplus) {
    s = cum_surplus_;
  } else {
    s = assignment_ ? static_cast<double>(std::llabs(assignment_->limit - zip_quote)) : 0.0;
  }
  return std::max(s, zp_.surplus_floor);
}

void ZippTrader::arm_timer(Time now, double horizon, double elapsed, Price zip_quote) {
  const double lambda =
      zipp_lambda(zp_.beta, zp_.alpha, horizon, elapsed, surplus_for(zip_quote));
  const double wait = zipp_wait(lambda, rng_.uniform01());
  t_kappa_ = now + static_cast<Time>(std::llround(wait));
}

std::optional<QuoteResult> ZippTrader::quote(const QuoteContext& ctx, const LobSnapshot& lob) {
  if (!assignment_) return std::nullopt;

  const Time horizon_len =
      zp_.day_deadline ? ctx.duration : (ctx.period_end - ctx.period_start);
  const Time elapsed = zp_.day_deadline ? ctx.time : (ctx.time - ctx.period_start);
  const Time remaining = std::max<Time>(horizon_len - elapsed, 1);

  const Price zq = quote_price_for(*assignment_);
  if (!last_submitted_ || *last_submitted_ != zq) {
    // underlying ZIP price moved: submit it and restart the urgency clock
    price_ = static_cast<double>(zq);
    have_price_ = true;
    last_submitted_ = zq;
    arm_timer(ctx.time, static_cast<double>(horizon_len), static_cast<double>(elapsed), zq);
    return QuoteResult{zq, false};
  }

  if (!t_kappa_ || ctx.time < *t_kappa_) {
    (void)lob;
    return QuoteResult{zq, false};  // keep the standing price alive
  }

  // timer expired: concede toward the limit
  const Price limit = assignment_->limit;
  const Price step = zipp_delta(limit, *last_submitted_, remaining);
  Price nq;
  if (assignment_->side == Side::Bid)
    nq = std::min<Price>(*last_submitted_ + step, limit);
  else
    nq = std::max<Price>(*last_submitted_ - step, limit);

  // re-sync the ZIP margin so later adaptation starts from the conceded price
  if (limit_ > 0.0) {
    const double m = static_cast<double>(nq) / limit_ - 1.0;
    if (assignment_->side == Side::Bid)
      margin_buy_ = std::min(m, 0.0);
    else
      margin_sell_ = std::max(m, 0.0);
  }
  price_ = static_cast<double>(nq);
  have_price_ = true;
  last_submitted_ = nq;
  arm_timer(ctx.time, static_cast<double>(horizon_len), static_cast<double>(elapsed), nq);
  return QuoteResult{nq, true};
}

}  // namespace cdasim
