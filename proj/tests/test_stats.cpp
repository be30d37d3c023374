#include "doctest.h"

#include <cmath>
#include <vector>

#include "cdasim/rng.hpp"
#include "cdasim/stats.hpp"

using namespace cdasim;
namespace st = cdasim::stats;

TEST_CASE("special function spot values") {
  CHECK(st::log_gamma(5.0) == doctest::Approx(std::log(24.0)));
  CHECK(st::log_gamma(0.5) == doctest::Approx(0.5723649429));

  CHECK(st::incomplete_beta(1.0, 1.0, 0.3) == doctest::Approx(0.3));
  CHECK(st::incomplete_beta(2.0, 2.0, 0.5) == doctest::Approx(0.5));
  // I_x(2,2) = 3x^2 - 2x^3
  CHECK(st::incomplete_beta(2.0, 2.0, 0.3) == doctest::Approx(0.216));

  // P(1, x) = 1 - e^{-x}
  CHECK(st::gamma_p(1.0, 1.0) == doctest::Approx(0.6321205588));
  CHECK(st::gamma_p(2.5, 0.0) == doctest::Approx(0.0));

  CHECK(st::normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(st::normal_cdf(1.959964) == doctest::Approx(0.975).epsilon(1e-5));
  CHECK(st::normal_cdf(-1.959964) == doctest::Approx(0.025).epsilon(1e-4));
}

TEST_CASE("student-t distribution") {
  CHECK(st::student_t_cdf(0.0, 7.0) == doctest::Approx(0.5));
  // df=1 is Cauchy: F(1) = 0.75
  CHECK(st::student_t_cdf(1.0, 1.0) == doctest::Approx(0.75));
  // large df approaches the normal
  CHECK(st::student_t_cdf(1.959964, 1e6) == doctest::Approx(0.975).epsilon(1e-4));
  CHECK(st::student_t_quantile_two_sided(0.95, 4.0) == doctest::Approx(2.7764451).epsilon(1e-5));
}

TEST_CASE("mean confidence interval") {
  const std::vector<double> xs{1, 2, 3, 4, 5};
  const auto ci = st::mean_ci(xs);
  CHECK(ci.mean == doctest::Approx(3.0));
  // t_{0.975,4} * sqrt(2.5 / 5)
  CHECK(ci.half_width == doctest::Approx(1.96324).epsilon(1e-4));

  const std::vector<double> flat{4, 4, 4};
  CHECK(st::mean_ci(flat).half_width == doctest::Approx(0.0));
  CHECK_THROWS(st::mean_ci(std::vector<double>{1.0}));
}

TEST_CASE("welch t-test matches the frozen reference value") {
  const std::vector<double> a{1, 2, 3, 4, 5};
  const std::vector<double> b{2, 4, 6, 8, 10};
  CHECK(st::welch_t_test(a, b) == doctest::Approx(0.1075312).epsilon(1e-4));
  CHECK(st::welch_t_test(a, a) == doctest::Approx(1.0));
}

TEST_CASE("welch t-test degenerates gracefully on zero variance") {
  const std::vector<double> a{5, 5, 5};
  const std::vector<double> b{6, 6, 6};
  CHECK(st::welch_t_test(a, a) == doctest::Approx(1.0));
  CHECK(st::welch_t_test(a, b) == doctest::Approx(0.0));
}

TEST_CASE("mann-whitney exact small-sample values") {
  const std::vector<double> a{1, 2};
  const std::vector<double> b{3, 4};
  const auto r = st::mann_whitney_u(a, b);
  CHECK(r.exact);
  CHECK(r.u == doctest::Approx(0.0));
  CHECK(r.p_value == doctest::Approx(1.0 / 3.0));

  const auto r2 = st::mann_whitney_u(std::vector<double>{1, 3}, std::vector<double>{2, 4});
  CHECK(r2.exact);
  CHECK(r2.u == doctest::Approx(1.0));
  CHECK(r2.p_value == doctest::Approx(2.0 / 3.0));
}

namespace {

// brute-force two-sided p over all label assignments, tie-aware
double brute_force_p(std::vector<double> a, std::vector<double> b) {
  const int n1 = static_cast<int>(a.size());
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  const int n = static_cast<int>(pooled.size());

  auto u_of = [](const std::vector<double>& xa, const std::vector<double>& xb) {
    double u = 0.0;
    for (double x : xa)
      for (double y : xb) u += x > y ? 1.0 : (x == y ? 0.5 : 0.0);
    return u;
  };
  const double u_obs = u_of(a, b);

  long long total = 0, le = 0, ge = 0;
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != n1) continue;
    std::vector<double> xa, xb;
    for (int i = 0; i < n; ++i) ((mask >> i) & 1 ? xa : xb).push_back(pooled[i]);
    const double u = u_of(xa, xb);
    ++total;
    if (u <= u_obs + 1e-12) ++le;
    if (u >= u_obs - 1e-12) ++ge;
  }
  const double p =
      2.0 * std::min(static_cast<double>(le) / total, static_cast<double>(ge) / total);
  return std::min(1.0, p);
}

}  // namespace

TEST_CASE("mann-whitney exact path agrees with brute force enumeration") {
  Rng rng(2024);
  for (int rep = 0; rep < 40; ++rep) {
    const int n1 = 2 + static_cast<int>(rng.uniform_int(0, 2));
    const int n2 = 2 + static_cast<int>(rng.uniform_int(0, 2));
    std::vector<double> a, b;
    // distinct values keep both paths on the tie-free distribution
    for (int i = 0; i < n1; ++i) a.push_back(static_cast<double>(rng.uniform_int(0, 1000)) + 0.25);
    for (int i = 0; i < n2; ++i) b.push_back(static_cast<double>(rng.uniform_int(0, 1000)) + 0.75);
    const auto r = st::mann_whitney_u(a, b);
    CHECK(r.exact);
    CHECK(r.p_value == doctest::Approx(brute_force_p(a, b)).epsilon(1e-9));
  }
}

TEST_CASE("mann-whitney handles ties exactly for small pools") {
  const std::vector<double> a{1, 2, 2};
  const std::vector<double> b{2, 3};
  const auto r = st::mann_whitney_u(a, b);
  CHECK(r.exact);
  CHECK(r.p_value == doctest::Approx(brute_force_p(a, b)).epsilon(1e-9));
}

TEST_CASE("mann-whitney large samples use the normal approximation") {
  std::vector<double> a, b;
  Rng rng(7);
  for (int i = 0; i < 25; ++i) {
    a.push_back(rng.uniform(0.0, 1.0));
    b.push_back(rng.uniform(0.8, 1.8));  // clearly shifted
  }
  const auto r = st::mann_whitney_u(a, b);
  CHECK(!r.exact);
  CHECK(r.p_value < 0.001);

  const auto same = st::mann_whitney_u(a, a);
  CHECK(same.p_value > 0.9);
}

TEST_CASE("chi-square upper tail") {
  CHECK(st::chi_square_p(0.0, 1.0) == doctest::Approx(1.0));
  CHECK(st::chi_square_p(3.841459, 1.0) == doctest::Approx(0.05).epsilon(1e-4));
  CHECK(st::chi_square_p(100.0, 1.0) < 1e-10);
}

TEST_CASE("KS test against the exponential") {
  Rng rng(11);
  std::vector<double> expo, unif;
  const double lambda = 3.0;
  for (int i = 0; i < 400; ++i) {
    expo.push_back(-lambda * std::log(1.0 - rng.uniform01()));
    unif.push_back(rng.uniform(0.0, 2.0 * lambda));
  }
  CHECK(st::ks_test_exponential(expo, lambda) > 0.05);
  CHECK(st::ks_test_exponential(unif, lambda) < 0.01);
}
