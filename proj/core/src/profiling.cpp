#include "cdasim/profiling.hpp"

#include <chrono>

#include "cdasim/trader.hpp"

namespace cdasim {

namespace {

using Clock = std::chrono::steady_clock;

LobSnapshot sample_lob() {
  LobSnapshot lob;
  lob.bid_levels = {{97, 2}, {95, 1}, {92, 1}};
  lob.ask_levels = {{99, 1}, {103, 2}, {110, 1}};
  lob.best_bid = 97;
  lob.best_ask = 99;
  lob.best_bid_volume = 2;
  lob.best_ask_volume = 1;
  lob.last_trade = {{98, 10}};
  lob.time = 11;
  return lob;
}

}  // namespace

std::vector<StrategyProfile> profile_strategies(int calls) {
  if (calls < 1) calls = 1;
  const StrategyParams params;
  const Price max_price = 500;
  const LobSnapshot lob = sample_lob();
  const Trade trade{11, 98, 0, 1};

  std::vector<StrategyProfile> out;
  for (const char* strategy : {"GVWY", "SHVR", "ZIC", "ZIP", "AA", "GDX", "ZIPP"}) {
    auto trader = make_trader(strategy, 0, "P00", params, max_price, 12345);
    trader->on_assignment({0, Side::Bid, 120, 0, 30});
    const QuoteContext ctx{11, 0, 30, 330};

    // warm up internal state so the steady-state path is measured
    MarketEvent warm{11, &lob, &trade};
    for (int i = 0; i < 64; ++i) {
      trader->respond(warm);
      (void)trader->quote(ctx, lob);
    }

    volatile std::uint64_t sink = 0;
    auto t0 = Clock::now();
    for (int i = 0; i < calls; ++i) {
      const auto q = trader->quote(ctx, lob);
      if (q) sink = sink + static_cast<std::uint64_t>(q->price);
    }
    auto t1 = Clock::now();
    const double quote_ns =
        std::chrono::duration<double, std::nano>(t1 - t0).count() / calls;

    MarketEvent ev{11, &lob, &trade};
    t0 = Clock::now();
    for (int i = 0; i < calls; ++i) trader->respond(ev);
    t1 = Clock::now();
    const double respond_ns =
        std::chrono::duration<double, std::nano>(t1 - t0).count() / calls;

    out.push_back({strategy, quote_ns, respond_ns});
  }
  return out;
}

}  // namespace cdasim
