#include "doctest.h"

#include "cdasim/schedule.hpp"

using namespace cdasim;

TEST_CASE("evenly spaced prices include both endpoints") {
  Schedule s{Side::Bid, 10, 190, 10, {}};
  const auto prices = schedule_prices(s);
  REQUIRE(prices.size() == 10);
  const std::vector<Price> expected{10, 30, 50, 70, 90, 110, 130, 150, 170, 190};
  CHECK(prices == expected);
}

TEST_CASE("a single-entry schedule collapses to the minimum") {
  Schedule s{Side::Ask, 80, 120, 1, {}};
  CHECK(schedule_prices(s) == std::vector<Price>{80});
}

TEST_CASE("a flat range hands everyone the same limit") {
  Schedule s{Side::Bid, 125, 125, 4, {}};
  CHECK(schedule_prices(s) == std::vector<Price>{125, 125, 125, 125});
}

TEST_CASE("fixed schedules pass through untouched") {
  Schedule s{Side::Bid, 0, 0, 3, {140, 90, 100}};
  CHECK(schedule_prices(s) == std::vector<Price>{140, 90, 100});
}

TEST_CASE("fixed schedule length must match the count") {
  Schedule s{Side::Bid, 0, 0, 2, {140, 90, 100}};
  CHECK_THROWS_AS(schedule_prices(s), ConfigError);
}

TEST_CASE("invalid ranges are rejected") {
  CHECK_THROWS_AS(schedule_prices({Side::Bid, 100, 50, 3, {}}), ConfigError);
  CHECK_THROWS_AS(schedule_prices({Side::Bid, 0, 50, 3, {}}), ConfigError);
  CHECK_THROWS_AS(schedule_prices({Side::Bid, 10, 50, 0, {}}), ConfigError);
}

TEST_CASE("stepwise crossing of mirrored linear schedules") {
  const auto demand = schedule_prices({Side::Bid, 10, 190, 10, {}});
  const auto supply = schedule_prices({Side::Ask, 10, 190, 10, {}});
  const auto eq = theoretical_equilibrium(demand, supply);
  CHECK(eq.quantity == 5);
  REQUIRE(eq.price_low.has_value());
  CHECK(*eq.price_low == 90);
  CHECK(*eq.price_high == 110);
  // assortative pairing: (190-10)+(170-30)+(150-50)+(130-70)+(110-90)
  CHECK(eq.max_surplus == 500);
}

TEST_CASE("equilibrium of the symmetric 50..150 market sits at 100") {
  const auto demand = schedule_prices({Side::Bid, 50, 150, 11, {}});
  const auto supply = schedule_prices({Side::Ask, 50, 150, 11, {}});
  const auto eq = theoretical_equilibrium(demand, supply);
  CHECK(eq.quantity == 6);
  CHECK(*eq.price_low == 100);
  CHECK(*eq.price_high == 100);
  // (150-50)+(140-60)+...+(100-100)
  CHECK(eq.max_surplus == 100 + 80 + 60 + 40 + 20 + 0);
}

TEST_CASE("no equilibrium when the curves never cross") {
  const auto eq = theoretical_equilibrium({40, 30}, {60, 70});
  CHECK(eq.quantity == 0);
  CHECK(!eq.price_low.has_value());
  CHECK(!eq.price_high.has_value());
  CHECK(eq.max_surplus == 0);
}

TEST_CASE("single touching pair gives a degenerate interval") {
  const auto eq = theoretical_equilibrium({100}, {100});
  CHECK(eq.quantity == 1);
  CHECK(*eq.price_low == 100);
  CHECK(*eq.price_high == 100);
  CHECK(eq.max_surplus == 0);
}

TEST_CASE("unbalanced sides cross at the shorter side's depth") {
  const auto eq = theoretical_equilibrium({150, 140, 130}, {50});
  CHECK(eq.quantity == 1);
  CHECK(eq.max_surplus == 100);
  CHECK(*eq.price_low == 140);  // first unmatched buyer still outbids the last seller
  CHECK(*eq.price_high == 150);
}
