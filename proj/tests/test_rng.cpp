#include "doctest.h"

#include <set>
#include <vector>

#include "cdasim/rng.hpp"

using cdasim::Rng;

TEST_CASE("same seed reproduces the stream") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different seeds diverge") {
  Rng a(42), b(43);
  int same = 0;
  for (int i = 0; i < 64; ++i)
    if (a.next_u64() == b.next_u64()) ++same;
  CHECK(same == 0);
}

TEST_CASE("uniform01 stays in [0,1) and covers the range") {
  Rng r(7);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("uniform_int covers the inclusive range without bias") {
  Rng r(3);
  std::vector<int> counts(6, 0);
  const int n = 60000;
  for (int i = 0; i < n; ++i) {
    const auto v = r.uniform_int(10, 15);
    REQUIRE(v >= 10);
    REQUIRE(v <= 15);
    counts[static_cast<std::size_t>(v - 10)]++;
  }
  for (int c : counts) {
    CHECK(c > n / 6 - 600);
    CHECK(c < n / 6 + 600);
  }
}

TEST_CASE("uniform_int handles a degenerate range") {
  Rng r(5);
  for (int i = 0; i < 10; ++i) CHECK(r.uniform_int(9, 9) == 9);
}

TEST_CASE("derive gives independent substreams") {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t s = 0; s < 100; ++s) seeds.insert(Rng::derive(1234, s));
  CHECK(seeds.size() == 100);
  CHECK(Rng::derive(1234, 5) == Rng::derive(1234, 5));
  CHECK(Rng::derive(1234, 5) != Rng::derive(1235, 5));
}
