#include "doctest.h"

#include <algorithm>

#include "cdasim/scheduler.hpp"

using namespace cdasim;

TEST_CASE("a trader twice as slow gets half the slots") {
  // fast trader R=1, slow trader R=2: reduced pool is {fast, fast, slow}
  const auto pool = build_pool({1.0, 2.0}, 1000);
  CHECK(pool.multiplicity == std::vector<int>{2, 1});
  CHECK(pool.entries == std::vector<TraderId>{0, 0, 1});
}

TEST_CASE("equal reaction times reduce to uniform selection") {
  const auto pool = build_pool({3.5, 3.5, 3.5, 3.5}, 1000);
  CHECK(pool.multiplicity == std::vector<int>{1, 1, 1, 1});
  CHECK(pool.size() == 4);
}

TEST_CASE("profiled latencies at resolution 50 keep the published ratios") {
  const auto pool = build_pool({4.2, 6.9, 7.1, 8.4, 9.5}, 50);
  CHECK(pool.multiplicity == std::vector<int>{113, 69, 67, 57, 50});
  // slot ratios invert the latency ratios
  CHECK(69.0 / 50.0 == doctest::Approx(9.5 / 6.9).epsilon(0.01));   // 1.38
  CHECK(69.0 / 57.0 == doctest::Approx(8.4 / 6.9).epsilon(0.01));   // 1.22
}

TEST_CASE("every step drains the pool exactly") {
  const auto pool = build_pool({1.0, 2.0, 4.0}, 100);
  Rng rng(99);
  std::vector<TraderId> seq;
  for (int step = 0; step < 200; ++step) {
    step_sequence(pool, rng, seq);
    REQUIRE(static_cast<int>(seq.size()) == pool.size());
    std::vector<int> counts(3, 0);
    for (TraderId id : seq) counts[static_cast<std::size_t>(id)]++;
    CHECK(counts[0] == pool.multiplicity[0]);
    CHECK(counts[1] == pool.multiplicity[1]);
    CHECK(counts[2] == pool.multiplicity[2]);
  }
}

TEST_CASE("first pick frequencies follow the slot shares") {
  const auto pool = build_pool({1.0, 2.0}, 1000);  // {F, F, S}
  Rng rng(7);
  int slow_first = 0;
  const int steps = 30000;
  std::vector<TraderId> seq;
  for (int step = 0; step < steps; ++step) {
    step_sequence(pool, rng, seq);
    if (seq.front() == 1) ++slow_first;
  }
  const double share = static_cast<double>(slow_first) / steps;
  CHECK(share == doctest::Approx(1.0 / 3.0).epsilon(0.03));
}

TEST_CASE("sequences replay under the same seed") {
  const auto pool = build_pool({1.0, 2.0, 3.0}, 30);
  Rng a(5), b(5);
  for (int step = 0; step < 50; ++step) CHECK(step_sequence(pool, a) == step_sequence(pool, b));
}

TEST_CASE("bad inputs are rejected") {
  CHECK_THROWS(build_pool({}, 10));
  CHECK_THROWS(build_pool({1.0, -2.0}, 10));
  CHECK_THROWS(build_pool({1.0}, 0));
}
