#include <benchmark/benchmark.h>

#include "cdasim/order_book.hpp"
#include "cdasim/rng.hpp"
#include "cdasim/session.hpp"
#include "cdasim/trader.hpp"

namespace {

using namespace cdasim;

void BM_BookSubmit(benchmark::State& state) {
  Rng rng(1);
  OrderBook book;
  TraderId id = 0;
  for (auto _ : state) {
    const Side side = rng.uniform_int(0, 1) == 0 ? Side::Bid : Side::Ask;
    const Price price = rng.uniform_int(80, 120);
    benchmark::DoNotOptimize(book.submit({id, side, price, 1, 0, false}));
    id = (id + 1) % 64;
  }
}
BENCHMARK(BM_BookSubmit);

void BM_BookSnapshot(benchmark::State& state) {
  Rng rng(2);
  OrderBook book;
  for (TraderId id = 0; id < 64; ++id) {
    const Side side = id % 2 == 0 ? Side::Bid : Side::Ask;
    const Price price = side == Side::Bid ? rng.uniform_int(50, 99) : rng.uniform_int(101, 150);
    book.submit({id, side, price, 1, 0, false});
  }
  for (auto _ : state) benchmark::DoNotOptimize(book.snapshot(0));
}
BENCHMARK(BM_BookSnapshot);

LobSnapshot bench_lob() {
  LobSnapshot lob;
  lob.bid_levels = {{97, 2}, {95, 1}};
  lob.ask_levels = {{99, 1}, {104, 2}};
  lob.best_bid = 97;
  lob.best_ask = 99;
  lob.best_bid_volume = 2;
  lob.best_ask_volume = 1;
  return lob;
}

void BM_StrategyQuote(benchmark::State& state, const char* strategy) {
  StrategyParams params;
  auto trader = make_trader(strategy, 0, "B00", params, 500, 7);
  trader->on_assignment({0, Side::Bid, 120, 0, 30});
  const auto lob = bench_lob();
  const QuoteContext ctx{10, 0, 30, 330};
  const Trade trade{10, 98, 1, 2};
  MarketEvent ev{10, &lob, &trade};
  trader->respond(ev);
  for (auto _ : state) benchmark::DoNotOptimize(trader->quote(ctx, lob));
}
BENCHMARK_CAPTURE(BM_StrategyQuote, gvwy, "GVWY");
BENCHMARK_CAPTURE(BM_StrategyQuote, shvr, "SHVR");
BENCHMARK_CAPTURE(BM_StrategyQuote, zic, "ZIC");
BENCHMARK_CAPTURE(BM_StrategyQuote, zip, "ZIP");
BENCHMARK_CAPTURE(BM_StrategyQuote, aa, "AA");
BENCHMARK_CAPTURE(BM_StrategyQuote, gdx, "GDX");
BENCHMARK_CAPTURE(BM_StrategyQuote, zipp, "ZIPP");

void BM_SessionStep(benchmark::State& state) {
  SessionConfig cfg;
  cfg.duration = 30;
  cfg.assignment_period = 30;
  cfg.seed = 3;
  cfg.demand = {Side::Bid, 50, 150, 8, {}};
  cfg.supply = {Side::Ask, 50, 150, 8, {}};
  cfg.buyers = {{"ZIP", 4, 1.0, {}}, {"ZIC", 4, 1.0, {}}};
  cfg.sellers = {{"ZIP", 4, 1.0, {}}, {"ZIC", 4, 1.0, {}}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_session(cfg));
    cfg.seed++;
  }
  state.SetItemsProcessed(state.iterations() * cfg.duration);
}
BENCHMARK(BM_SessionStep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
