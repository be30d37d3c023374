#include "cdasim/traders_basic.hpp"

#include <algorithm>
#include <cmath>

namespace cdasim {

LobTracker::Delta LobTracker::update(const LobSnapshot& lob, const Trade* trade) {
  Delta d;
  const auto bb = lob.best_bid;
  const auto ba = lob.best_ask;
  const int bb_vol = lob.best_bid_volume;
  const int ba_vol = lob.best_ask_volume;

  if (bb) {
    if (!prev_bb || *prev_bb < *bb) {
      d.bid_improved = true;
    } else if (trade && (*prev_bb > *bb || (*prev_bb == *bb && prev_bb_vol > bb_vol))) {
      d.bid_hit = true;
    }
  } else if (prev_bb) {
    d.bid_hit = trade != nullptr;  // emptied by a trade rather than a cancel
  }

  if (ba) {
    if (!prev_ba || *prev_ba > *ba) {
      d.ask_improved = true;
    } else if (trade && (*prev_ba < *ba || (*prev_ba == *ba && prev_ba_vol > ba_vol))) {
      d.ask_lifted = true;
    }
  } else if (prev_ba) {
    d.ask_lifted = trade != nullptr;
  }

  d.deal = trade != nullptr && (d.bid_hit || d.ask_lifted);
  prev_bb = bb;
  prev_ba = ba;
  prev_bb_vol = bb_vol;
  prev_ba_vol = ba_vol;
  return d;
}

// --- GVWY ------------------------------------------------------------------

std::optional<QuoteResult> GvwyTrader::quote(const QuoteContext&, const LobSnapshot&) {
  if (!assignment_) return std::nullopt;
  return QuoteResult{assignment_->limit};
}

// --- SHVR ------------------------------------------------------------------

std::optional<QuoteResult> ShvrTrader::quote(const QuoteContext&, const LobSnapshot& lob) {
  if (!assignment_) return std::nullopt;
  const Price limit = assignment_->limit;
  if (assignment_->side == Side::Bid) {
    // Shave one tick past the best rival bid. When the sole best bid is our
    // own standing order there is nothing to beat, so hold the position.
    if (standing_ && lob.best_bid && *lob.best_bid == *standing_ && lob.best_bid_volume == 1)
      return std::nullopt;
    const Price bid = lob.best_bid ? std::min<Price>(*lob.best_bid + 1, limit) : stub_bid_;
    standing_ = std::min(bid, limit);
    return QuoteResult{*standing_};
  }
  if (standing_ && lob.best_ask && *lob.best_ask == *standing_ && lob.best_ask_volume == 1)
    return std::nullopt;
  const Price ask = lob.best_ask ? std::max<Price>(*lob.best_ask - 1, limit) : max_price_;
  standing_ = std::max(ask, limit);
  return QuoteResult{*standing_};
}

// --- ZIC -------------------------------------------------------------------

std::optional<QuoteResult> ZicTrader::quote(const QuoteContext&, const LobSnapshot&) {
  if (!assignment_) return std::nullopt;
  const Price limit = assignment_->limit;
  if (assignment_->side == Side::Bid) return QuoteResult{rng_.uniform_int(kMinPrice, limit)};
  return QuoteResult{rng_.uniform_int(limit, max_price_)};
}

// --- ZIP -------------------------------------------------------------------

ZipTrader::ZipTrader(TraderId index, std::string name, const ZipParams& params, Price max_price,
                     std::uint64_t seed)
    : Trader(index, std::move(name), "ZIP", seed), p_(params), max_price_(max_price) {
  beta_ = rng_.uniform(p_.beta_min, p_.beta_max);
  momentum_ = rng_.uniform(p_.momentum_min, p_.momentum_max);
  margin_buy_ = -rng_.uniform(p_.margin_min, p_.margin_max);
  margin_sell_ = rng_.uniform(p_.margin_min, p_.margin_max);
}

void ZipTrader::on_assignment(const Assignment& a) {
  Trader::on_assignment(a);
  limit_ = static_cast<double>(a.limit);
  job_ = a.side;
  have_job_ = true;
  const double margin = a.side == Side::Bid ? margin_buy_ : margin_sell_;
  price_ = static_cast<double>(std::llround(limit_ * (1.0 + margin)));
  have_price_ = true;
}

Price ZipTrader::quote_price_for(const Assignment& a) const {
  const double margin = a.side == Side::Bid ? margin_buy_ : margin_sell_;
  Price q = std::llround(static_cast<double>(a.limit) * (1.0 + margin));
  if (a.side == Side::Bid)
    q = std::clamp<Price>(q, kMinPrice, a.limit);
  else
    q = std::max<Price>(q, a.limit);
  return q;
}

std::optional<QuoteResult> ZipTrader::quote(const QuoteContext&, const LobSnapshot&) {
  if (!assignment_) return std::nullopt;
  const Price q = quote_price_for(*assignment_);
  price_ = static_cast<double>(q);
  have_price_ = true;
  return QuoteResult{q};
}

double ZipTrader::target_up(double price) {
  const double abs_shift = p_.perturb_abs * rng_.uniform01();
  const double rel_shift = price * (1.0 + p_.perturb_rel * rng_.uniform01());
  return std::round(rel_shift + abs_shift);
}

double ZipTrader::target_down(double price) {
  const double abs_shift = p_.perturb_abs * rng_.uniform01();
  const double rel_shift = price * (1.0 - p_.perturb_rel * rng_.uniform01());
  return std::round(rel_shift - abs_shift);
}

bool ZipTrader::willing_to_trade(double price) const {
  if (!assignment_) return false;
  if (job_ == Side::Bid) return price_ >= price;
  return price_ <= price;
}

void ZipTrader::profit_alter(double target) {
  const double diff = target - price_;
  const double change = (1.0 - momentum_) * (beta_ * diff) + momentum_ * prev_change_;
  prev_change_ = change;
  if (limit_ <= 0.0) return;
  const double new_margin = (price_ + change) / limit_ - 1.0;
  if (job_ == Side::Bid) {
    if (new_margin < 0.0) margin_buy_ = new_margin;
  } else {
    if (new_margin > 0.0) margin_sell_ = new_margin;
  }
  const double margin = job_ == Side::Bid ? margin_buy_ : margin_sell_;
  price_ = static_cast<double>(std::llround(limit_ * (1.0 + margin)));
  on_margin_change();
}

void ZipTrader::respond(const MarketEvent& ev) {
  const auto d = tracker_.update(*ev.lob, ev.trade);
  if (!have_price_ || !have_job_) return;

  const bool active = assignment_.has_value();
  if (job_ == Side::Ask) {
    if (d.deal) {
      const double p = static_cast<double>(ev.trade->price);
      if (price_ <= p) {
        profit_alter(target_up(p));  // could have sold for more
      } else if (d.ask_lifted && active && !willing_to_trade(p)) {
        profit_alter(target_down(p));
      }
    } else if (d.ask_improved && ev.lob->best_ask &&
               price_ >= static_cast<double>(*ev.lob->best_ask)) {
      // undercut: chase the new best ask down
      profit_alter(target_down(static_cast<double>(*ev.lob->best_ask)));
    }
  } else {
    if (d.deal) {
      const double p = static_cast<double>(ev.trade->price);
      if (price_ >= p) {
        profit_alter(target_down(p));  // could have bought for less
      } else if (d.bid_hit && active && !willing_to_trade(p)) {
        profit_alter(target_up(p));
      }
    } else if (d.bid_improved && ev.lob->best_bid &&
               price_ <= static_cast<double>(*ev.lob->best_bid)) {
      // outbid: chase the new best bid up
      profit_alter(target_up(static_cast<double>(*ev.lob->best_bid)));
    }
  }
}

}  // namespace cdasim
