#include "doctest.h"

#include <numeric>

#include "cdasim/session.hpp"

using namespace cdasim;

namespace {

SessionConfig mixed_market() {
  SessionConfig cfg;
  cfg.duration = 120;
  cfg.assignment_period = 30;
  cfg.max_price = 500;
  cfg.seed = 42;
  cfg.demand = {Side::Bid, 50, 150, 7, {}};
  cfg.supply = {Side::Ask, 50, 150, 7, {}};
  for (const auto& strat : {"GVWY", "SHVR", "ZIC", "ZIP", "AA", "GDX", "ZIPP"}) {
    TraderGroup g;
    g.strategy = strat;
    g.count = 1;
    cfg.buyers.push_back(g);
    cfg.sellers.push_back(g);
  }
  return cfg;
}

}  // namespace

TEST_CASE("sessions replay identically from the same seed") {
  const auto cfg = mixed_market();
  const auto a = run_session(cfg);
  const auto b = run_session(cfg);

  REQUIRE(a.trades.size() == b.trades.size());
  for (std::size_t i = 0; i < a.trades.size(); ++i) {
    CHECK(a.trades[i].time == b.trades[i].time);
    CHECK(a.trades[i].price == b.trades[i].price);
    CHECK(a.trades[i].buyer == b.trades[i].buyer);
    CHECK(a.trades[i].seller == b.trades[i].seller);
  }
  REQUIRE(a.quotes.size() == b.quotes.size());
  for (std::size_t i = 0; i < a.quotes.size(); ++i) {
    CHECK(a.quotes[i].time == b.quotes[i].time);
    CHECK(a.quotes[i].trader == b.quotes[i].trader);
    CHECK(a.quotes[i].price == b.quotes[i].price);
    CHECK(a.quotes[i].executed == b.quotes[i].executed);
    CHECK(a.quotes[i].urgent == b.quotes[i].urgent);
  }
  CHECK(a.profit_by_trader == b.profit_by_trader);
  CHECK(a.profit_by_strategy == b.profit_by_strategy);
}

TEST_CASE("a different seed gives a different history") {
  auto cfg = mixed_market();
  const auto a = run_session(cfg);
  cfg.seed = 43;
  const auto b = run_session(cfg);
  const bool differs = a.trades.size() != b.trades.size() || a.quotes.size() != b.quotes.size() ||
                       a.profit_by_trader != b.profit_by_trader;
  CHECK(differs);
}

TEST_CASE("assignments replenish on every period boundary") {
  auto cfg = mixed_market();
  cfg.duration = 180;
  const auto rec = run_session(cfg);
  CHECK(rec.period_starts == std::vector<Time>{0, 30, 60, 90, 120, 150});
}

TEST_CASE("a session produces trades and conserves bookkeeping") {
  const auto rec = run_session(mixed_market());
  CHECK(!rec.trades.empty());

  // per-strategy totals add up to per-trader totals
  const std::int64_t by_trader =
      std::accumulate(rec.profit_by_trader.begin(), rec.profit_by_trader.end(), std::int64_t{0});
  std::int64_t by_strategy = 0;
  for (const auto& [_, v] : rec.profit_by_strategy) by_strategy += v;
  CHECK(by_trader == by_strategy);

  // every trade marks exactly one standing quote per side as executed
  std::size_t executed = 0;
  for (const auto& q : rec.quotes) executed += q.executed ? 1 : 0;
  CHECK(executed == 2 * rec.trades.size());
}

TEST_CASE("all quotes are loss-free and inside the price band") {
  const auto rec = run_session(mixed_market());
  for (const auto& q : rec.quotes) {
    CHECK(q.price >= kMinPrice);
    CHECK(q.price <= 500);
    if (q.side == Side::Bid)
      CHECK(q.price <= q.limit);
    else
      CHECK(q.price >= q.limit);
  }
  for (const auto p : rec.profit_by_trader) CHECK(p >= 0);
}

TEST_CASE("extracted surplus never beats the theoretical maximum") {
  const auto cfg = mixed_market();
  const auto rec = run_session(cfg);
  const auto periods = static_cast<std::int64_t>(rec.period_starts.size());
  const std::int64_t total =
      std::accumulate(rec.profit_by_trader.begin(), rec.profit_by_trader.end(), std::int64_t{0});
  CHECK(total <= rec.equilibrium.max_surplus * periods);
}

TEST_CASE("zero duration yields an empty record") {
  auto cfg = mixed_market();
  cfg.duration = 0;
  const auto rec = run_session(cfg);
  CHECK(rec.trades.empty());
  CHECK(rec.quotes.empty());
  CHECK(rec.period_starts.empty());
}

TEST_CASE("speed-proportional scheduling is honoured end to end") {
  auto cfg = mixed_market();
  cfg.scheduler_mode = SchedulerMode::SpeedProportional;
  cfg.pool_resolution = 1;
  for (auto& g : cfg.buyers) g.reaction_time = g.strategy == "GVWY" ? 1.0 : 2.0;
  for (auto& g : cfg.sellers) g.reaction_time = g.strategy == "GVWY" ? 1.0 : 2.0;
  const auto rec = run_session(cfg);
  CHECK(!rec.trades.empty());

  // the fast trader gets twice the quote opportunities, which shows up as
  // far more GVWY quote events than any single slow trader produces
  std::vector<int> quote_count(14, 0);
  for (const auto& q : rec.quotes) quote_count[static_cast<std::size_t>(q.trader)]++;
  CHECK(quote_count[0] > 0);
}

TEST_CASE("config validation rejects inconsistent setups") {
  auto cfg = mixed_market();
  cfg.demand.count = 6;  // 7 buyers
  CHECK_THROWS_AS(validate_session_config(cfg), ConfigError);

  cfg = mixed_market();
  cfg.buyers.clear();
  CHECK_THROWS_AS(validate_session_config(cfg), ConfigError);

  cfg = mixed_market();
  cfg.buyers[0].strategy = "WOMBAT";
  CHECK_THROWS_AS(validate_session_config(cfg), ConfigError);

  cfg = mixed_market();
  cfg.assignment_period = 0;
  CHECK_THROWS_AS(validate_session_config(cfg), ConfigError);

  cfg = mixed_market();
  cfg.supply.max_price = 1000;  // beyond the system max price
  CHECK_THROWS_AS(validate_session_config(cfg), ConfigError);

  cfg = mixed_market();
  cfg.sellers[0].reaction_time = 0.0;
  CHECK_THROWS_AS(validate_session_config(cfg), ConfigError);
}
