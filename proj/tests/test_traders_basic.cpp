#include "doctest.h"

#include <memory>

#include "cdasim/traders_basic.hpp"

using namespace cdasim;

namespace {

LobSnapshot make_lob(std::optional<Price> bb, std::optional<Price> ba, int bb_vol = 1,
                     int ba_vol = 1, Time t = 0) {
  LobSnapshot lob;
  lob.time = t;
  lob.best_bid = bb;
  lob.best_ask = ba;
  if (bb) {
    lob.bid_levels = {{*bb, bb_vol}};
    lob.best_bid_volume = bb_vol;
  }
  if (ba) {
    lob.ask_levels = {{*ba, ba_vol}};
    lob.best_ask_volume = ba_vol;
  }
  return lob;
}

const QuoteContext kCtx{10, 0, 30, 330};

Assignment buy(Price limit) { return {0, Side::Bid, limit, 0, 30}; }
Assignment sell(Price limit) { return {0, Side::Ask, limit, 0, 30}; }

// walks the tracker through "quote appears, then trades away" so the trader
// registers a deal at `price` on the given side of the book
void feed_deal(Trader& t, Side resting_side, Price price, Time when = 5) {
  const auto before = resting_side == Side::Bid ? make_lob(price, std::nullopt, 1, 0, when)
                                                : make_lob(std::nullopt, price, 0, 1, when);
  MarketEvent ev1{when, &before, nullptr};
  t.respond(ev1);
  const auto after = make_lob(std::nullopt, std::nullopt, 0, 0, when);
  const Trade trade{when, price, 1, 2};
  MarketEvent ev2{when, &after, &trade};
  t.respond(ev2);
}

}  // namespace

TEST_CASE("GVWY quotes exactly the limit") {
  GvwyTrader t(0, "B00", 1);
  CHECK(!t.quote(kCtx, make_lob(std::nullopt, std::nullopt)).has_value());
  t.on_assignment(buy(140));
  CHECK(t.quote(kCtx, make_lob(90, 110))->price == 140);
  t.on_assignment(sell(60));
  CHECK(t.quote(kCtx, make_lob(90, 110))->price == 60);
}

TEST_CASE("SHVR improves the best price by one tick, clamped at the limit") {
  ShvrTrader t(0, "B00", kMinPrice, 500, 1);
  t.on_assignment(buy(100));
  CHECK(t.quote(kCtx, make_lob(90, 120))->price == 91);
  CHECK(t.quote(kCtx, make_lob(99, 120))->price == 100);
  CHECK(t.quote(kCtx, make_lob(100, 120))->price == 100);  // never exceeds the limit
  CHECK(t.quote(kCtx, make_lob(std::nullopt, 120))->price == kMinPrice);

  t.on_assignment(sell(100));
  CHECK(t.quote(kCtx, make_lob(90, 120))->price == 119);
  CHECK(t.quote(kCtx, make_lob(90, 101))->price == 100);
  CHECK(t.quote(kCtx, make_lob(90, 100))->price == 100);
  CHECK(t.quote(kCtx, make_lob(90, std::nullopt))->price == 500);
}

TEST_CASE("ZIC samples the full loss-free range") {
  ZicTrader buyer(0, "B00", 500, 1);
  buyer.on_assignment(buy(100));
  double sum = 0.0;
  Price lo = 500, hi = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const auto q = buyer.quote(kCtx, make_lob(std::nullopt, std::nullopt));
    REQUIRE(q.has_value());
    REQUIRE(q->price >= kMinPrice);
    REQUIRE(q->price <= 100);
    sum += static_cast<double>(q->price);
    lo = std::min(lo, q->price);
    hi = std::max(hi, q->price);
  }
  CHECK(lo == kMinPrice);
  CHECK(hi == 100);
  CHECK(sum / n == doctest::Approx(50.5).epsilon(0.01));

  ZicTrader seller(1, "S00", 200, 2);
  seller.on_assignment(sell(150));
  for (int i = 0; i < 1000; ++i) {
    const auto q = seller.quote(kCtx, make_lob(std::nullopt, std::nullopt));
    REQUIRE(q->price >= 150);
    REQUIRE(q->price <= 200);
  }
}

TEST_CASE("ZIP starts inside the documented parameter ranges") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    ZipTrader t(0, "B00", ZipParams{}, 500, seed);
    CHECK(t.margin(Side::Bid) >= 0.05);
    CHECK(t.margin(Side::Bid) <= 0.35);
    CHECK(t.margin(Side::Ask) >= 0.05);
    CHECK(t.margin(Side::Ask) <= 0.35);
  }
}

TEST_CASE("ZIP quotes are loss-free on both sides") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ZipTrader t(0, "B00", ZipParams{}, 500, seed);
    t.on_assignment(buy(100));
    const auto qb = t.quote(kCtx, make_lob(std::nullopt, std::nullopt));
    REQUIRE(qb.has_value());
    CHECK(qb->price <= 100);
    CHECK(qb->price >= kMinPrice);
    t.on_assignment(sell(100));
    const auto qa = t.quote(kCtx, make_lob(std::nullopt, std::nullopt));
    CHECK(qa->price >= 100);
  }
}

TEST_CASE("a buyer that overbid a cheap deal raises its margin") {
  // deal strikes below the buyer's current shout: it was paying too much,
  // so the shout price should come down
  ZipTrader t(0, "B00", ZipParams{}, 500, 3);
  t.on_assignment(buy(100));
  const Price before = t.quote(kCtx, make_lob(std::nullopt, std::nullopt))->price;
  feed_deal(t, Side::Bid, before - 20);
  t.on_assignment(buy(100));
  const Price after = t.quote(kCtx, make_lob(std::nullopt, std::nullopt))->price;
  CHECK(after < before);
}

TEST_CASE("a seller that underpriced a rich deal raises its ask") {
  ZipTrader t(0, "S00", ZipParams{}, 500, 4);
  t.on_assignment(sell(100));
  const Price before = t.quote(kCtx, make_lob(std::nullopt, std::nullopt))->price;
  feed_deal(t, Side::Ask, before + 20);
  t.on_assignment(sell(100));
  const Price after = t.quote(kCtx, make_lob(std::nullopt, std::nullopt))->price;
  CHECK(after > before);
}

TEST_CASE("an active buyer unwilling to match a trade price concedes") {
  ZipTrader t(0, "B00", ZipParams{}, 500, 5);
  t.on_assignment(buy(100));
  const Price before = t.quote(kCtx, make_lob(std::nullopt, std::nullopt))->price;
  // trade above the buyer's shout while it still holds an assignment
  feed_deal(t, Side::Bid, before + 4);
  const Price after = t.quote(kCtx, make_lob(std::nullopt, std::nullopt))->price;
  CHECK(after > before);
  CHECK(after <= 100);
}

TEST_CASE("a seller undercut by a better ask lowers its price") {
  ZipTrader t(0, "S00", ZipParams{}, 500, 6);
  t.on_assignment(sell(100));
  const Price before = t.quote(kCtx, make_lob(std::nullopt, std::nullopt))->price;
  REQUIRE(before > 101);
  const auto lob = make_lob(100, before - 1, 1, 1, 5);
  MarketEvent ev{5, &lob, nullptr};
  t.respond(ev);
  const Price after = t.quote(kCtx, make_lob(std::nullopt, std::nullopt))->price;
  CHECK(after < before);
  CHECK(after >= 100);
}

TEST_CASE("LobTracker classifies book transitions") {
  LobTracker tracker;
  const auto l1 = make_lob(90, 110);
  auto d = tracker.update(l1, nullptr);
  CHECK(d.bid_improved);
  CHECK(d.ask_improved);
  CHECK(!d.deal);

  const auto l2 = make_lob(95, 110);
  d = tracker.update(l2, nullptr);
  CHECK(d.bid_improved);
  CHECK(!d.ask_improved);

  // bid disappears together with a trade: hit
  const auto l3 = make_lob(std::nullopt, 110, 0, 1);
  const Trade trade{1, 95, 0, 1};
  d = tracker.update(l3, &trade);
  CHECK(d.bid_hit);
  CHECK(d.deal);

  // ask vanishes without a trade: cancel, not a lift
  const auto l4 = make_lob(std::nullopt, std::nullopt, 0, 0);
  d = tracker.update(l4, nullptr);
  CHECK(!d.ask_lifted);
  CHECK(!d.deal);
}
