#include "cdasim/session.hpp"

#include <algorithm>
#include <numeric>

#include "cdasim/traders_adaptive.hpp"
#include "cdasim/traders_basic.hpp"
#include "cdasim/zipp.hpp"

namespace cdasim {

std::unique_ptr<Trader> make_trader(const std::string& strategy, TraderId index, std::string name,
                                    const StrategyParams& params, Price max_price,
                                    std::uint64_t seed) {
  if (strategy == "GVWY") return std::make_unique<GvwyTrader>(index, std::move(name), seed);
  if (strategy == "SHVR")
    return std::make_unique<ShvrTrader>(index, std::move(name), params.shvr_stub_bid, max_price,
                                        seed);
  if (strategy == "ZIC") return std::make_unique<ZicTrader>(index, std::move(name), max_price, seed);
  if (strategy == "ZIP")
    return std::make_unique<ZipTrader>(index, std::move(name), params.zip, max_price, seed);
  if (strategy == "AA")
    return std::make_unique<AaTrader>(index, std::move(name), params.aa, max_price, seed);
  if (strategy == "GDX")
    return std::make_unique<GdxTrader>(index, std::move(name), params.gdx, max_price, seed);
  if (strategy == "ZIPP")
    return std::make_unique<ZippTrader>(index, std::move(name), params.zip, params.zipp, max_price,
                                        seed);
  throw ConfigError("unknown strategy: " + strategy);
}

namespace {

int group_total(const std::vector<TraderGroup>& groups) {
  int n = 0;
  for (const auto& g : groups) n += g.count;
  return n;
}

}  // namespace

void validate_session_config(const SessionConfig& cfg) {
  if (cfg.duration < 0) throw ConfigError("duration must be non-negative");
  if (cfg.assignment_period <= 0) throw ConfigError("assignment_period must be positive");
  if (cfg.max_price < kMinPrice) throw ConfigError("max_price below the minimum tick");
  if (cfg.pool_resolution <= 0) throw ConfigError("pool_resolution must be positive");
  if (cfg.tick_display_scale <= 0.0) throw ConfigError("tick_display_scale must be positive");

  const int buyers = group_total(cfg.buyers);
  const int sellers = group_total(cfg.sellers);
  if (buyers <= 0) throw ConfigError("at least one buyer is required");
  if (sellers <= 0) throw ConfigError("at least one seller is required");

  auto check_schedule = [&](const Schedule& s, int traders, const char* label) {
    if (s.count != traders)
      throw ConfigError(std::string(label) + " schedule count does not match the trader count");
    if (!s.fixed.empty()) {
      if (static_cast<int>(s.fixed.size()) != s.count)
        throw ConfigError(std::string(label) + " fixed price list length does not match count");
      for (Price p : s.fixed)
        if (p < kMinPrice || p > cfg.max_price)
          throw ConfigError(std::string(label) + " fixed price outside [1, max_price]");
    } else {
      if (s.min_price < kMinPrice || s.max_price > cfg.max_price || s.min_price > s.max_price)
        throw ConfigError(std::string(label) + " price range invalid");
    }
  };
  check_schedule(cfg.demand, buyers, "demand");
  check_schedule(cfg.supply, sellers, "supply");

  static const char* known[] = {"GVWY", "SHVR", "ZIC", "ZIP", "AA", "GDX", "ZIPP"};
  auto check_groups = [&](const std::vector<TraderGroup>& groups, const char* label) {
    for (const auto& g : groups) {
      if (g.count <= 0) throw ConfigError(std::string(label) + " group with non-positive count");
      if (g.reaction_time <= 0.0)
        throw ConfigError(std::string(label) + " group with non-positive reaction time");
      if (std::find_if(std::begin(known), std::end(known),
                       [&](const char* k) { return g.strategy == k; }) == std::end(known))
        throw ConfigError("unknown strategy: " + g.strategy);
    }
  };
  check_groups(cfg.buyers, "buyer");
  check_groups(cfg.sellers, "seller");
}

SessionRecord run_session(const SessionConfig& cfg) {
  validate_session_config(cfg);

  SessionRecord rec;
  std::vector<std::unique_ptr<Trader>> traders;
  std::vector<double> reaction_times;

  auto add_group = [&](const TraderGroup& g, Side side) {
    for (int i = 0; i < g.count; ++i) {
      const TraderId id = static_cast<TraderId>(traders.size());
      const char prefix = side == Side::Bid ? 'B' : 'S';
      std::string name = prefix + std::string(id < 10 ? "0" : "") + std::to_string(id);
      const std::uint64_t sub = Rng::derive(cfg.seed, 1000 + static_cast<std::uint64_t>(id));
      traders.push_back(make_trader(g.strategy, id, std::move(name), g.params, cfg.max_price, sub));
      reaction_times.push_back(g.reaction_time);
    }
  };
  for (const auto& g : cfg.buyers) add_group(g, Side::Bid);
  const int n_buyers = static_cast<int>(traders.size());
  for (const auto& g : cfg.sellers) add_group(g, Side::Ask);
  const int n_traders = static_cast<int>(traders.size());

  rec.trader_names.reserve(n_traders);
  rec.trader_strategies.reserve(n_traders);
  for (const auto& t : traders) {
    rec.trader_names.push_back(t->name());
    rec.trader_strategies.push_back(t->strategy());
  }
  rec.profit_by_trader.assign(n_traders, 0);
  for (const auto& t : traders) rec.profit_by_strategy.emplace(t->strategy(), 0);

  const auto demand_prices = schedule_prices(cfg.demand);
  const auto supply_prices = schedule_prices(cfg.supply);
  rec.equilibrium = theoretical_equilibrium(demand_prices, supply_prices);

  BiasedPool pool;
  if (cfg.scheduler_mode == SchedulerMode::SpeedProportional) {
    pool = build_pool(reaction_times, cfg.pool_resolution);
  } else {
    pool.multiplicity.assign(n_traders, 1);
    pool.entries.resize(n_traders);
    for (int i = 0; i < n_traders; ++i) pool.entries[i] = i;
  }

  Rng sched_rng(Rng::derive(cfg.seed, 1));
  Rng assign_rng(Rng::derive(cfg.seed, 2));
  std::vector<int> buyer_perm(static_cast<std::size_t>(n_buyers));
  std::vector<int> seller_perm(static_cast<std::size_t>(n_traders - n_buyers));
  auto shuffle_perm = [&](std::vector<int>& perm) {
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = static_cast<int>(perm.size()) - 1; i > 0; --i)
      std::swap(perm[static_cast<std::size_t>(i)],
                perm[static_cast<std::size_t>(assign_rng.uniform_int(0, i))]);
  };
  OrderBook book;
  std::vector<TraderId> sequence;
  std::vector<int> last_quote_event(n_traders, -1);
  LobSnapshot snap;

  Time period_start = 0;
  Time period_end = std::min(cfg.assignment_period, cfg.duration);

  auto broadcast = [&](Time now, const Trade* trade) {
    snap = book.snapshot(now);
    MarketEvent ev{now, &snap, trade};
    for (auto& t : traders) t->respond(ev);
  };

  for (Time t = 0; t < cfg.duration; ++t) {
    if (t % cfg.assignment_period == 0) {
      period_start = t;
      period_end = std::min(t + cfg.assignment_period, cfg.duration);
      rec.period_starts.push_back(t);

      const auto bb0 = book.best_bid();
      const auto ba0 = book.best_ask();
      for (auto& tr : traders) {
        if (tr->assignment()) {
          tr->on_expiry();
          book.cancel(tr->index());
        }
      }
      // Deal the schedule's limit prices to traders in a fresh random order
      // each period so no group is structurally tied to the intra-marginal
      // (or extra-marginal) units.
      shuffle_perm(buyer_perm);
      shuffle_perm(seller_perm);
      for (int k = 0; k < n_buyers; ++k) {
        traders[k]->on_assignment(
            {k, Side::Bid, demand_prices[static_cast<std::size_t>(buyer_perm[static_cast<std::size_t>(k)])],
             t, period_end});
      }
      for (int k = n_buyers; k < n_traders; ++k) {
        traders[static_cast<std::size_t>(k)]->on_assignment(
            {k, Side::Ask,
             supply_prices[static_cast<std::size_t>(seller_perm[static_cast<std::size_t>(k - n_buyers)])],
             t, period_end});
      }
      if (book.best_bid() != bb0 || book.best_ask() != ba0) broadcast(t, nullptr);
    }

    step_sequence(pool, sched_rng, sequence);
    const QuoteContext ctx{t, period_start, period_end, cfg.duration};

    for (TraderId id : sequence) {
      Trader& trader = *traders[static_cast<std::size_t>(id)];
      if (!trader.assignment()) continue;
      const Assignment a = *trader.assignment();

      snap = book.snapshot(t);
      const auto qr = trader.quote(ctx, snap);
      if (!qr) continue;

      if (a.side == Side::Bid ? qr->price > a.limit : qr->price < a.limit)
        throw SessionFault("loss-making quote from " + trader.name());

      // Re-quoting an unchanged price keeps the standing order and its queue
      // position; replacing it would only forfeit time priority.
      if (const auto cur = book.resting(id);
          cur && cur->first == a.side && cur->second == qr->price)
        continue;

      const auto bb0 = book.best_bid();
      const auto ba0 = book.best_ask();
      const auto res = book.submit({id, a.side, qr->price, 1, t, qr->urgent});
      if (res.outcome == MatchResult::Outcome::Rejected)
        throw SessionFault("order rejected: " + res.reject_reason);

      last_quote_event[static_cast<std::size_t>(id)] = static_cast<int>(rec.quotes.size());
      rec.quotes.push_back({t, id, a.side, qr->price, a.limit, false, qr->urgent});

      const Trade* trade_ptr = nullptr;
      if (res.outcome == MatchResult::Outcome::Traded) {
        const Trade& trade = *res.trade;
        rec.trades.push_back(trade);
        trade_ptr = &rec.trades.back();

        for (TraderId side_id : {trade.buyer, trade.seller}) {
          Trader& party = *traders[static_cast<std::size_t>(side_id)];
          const Assignment pa = *party.assignment();
          const std::int64_t profit = pa.side == Side::Bid ? pa.limit - trade.price
                                                           : trade.price - pa.limit;
          if (profit < 0) throw SessionFault("negative surplus booked for " + party.name());
          rec.profit_by_trader[static_cast<std::size_t>(side_id)] += profit;
          rec.profit_by_strategy[party.strategy()] += profit;
          const int qi = last_quote_event[static_cast<std::size_t>(side_id)];
          if (qi >= 0) rec.quotes[static_cast<std::size_t>(qi)].executed = true;
          party.on_fill(trade);
        }
      }

      if (trade_ptr || book.best_bid() != bb0 || book.best_ask() != ba0)
        broadcast(t, trade_ptr);
    }
  }

  return rec;
}

}  // namespace cdasim
