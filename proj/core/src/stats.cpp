#include "cdasim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cdasim::stats {

double log_gamma(double x) { return std::lgamma(x); }

namespace {

// Continued fraction for the incomplete beta (Lentz's method).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3.0e-14;
  constexpr double kFpMin = 1.0e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front =
      log_gamma(a + b) - log_gamma(a) - log_gamma(b) + a * std::log(x) + b * std::log(1.0 - x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double gamma_p(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p domain");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) {
    // series
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1.0e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
  }
  // continued fraction for Q(a,x)
  double b = x + 1.0 - a;
  double c = 1.0 / 1.0e-300;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -1.0 * i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1.0e-300) d = 1.0e-300;
    c = b + an / c;
    if (std::fabs(c) < 1.0e-300) c = 1.0e-300;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1.0e-15) break;
  }
  const double q = std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
  return 1.0 - q;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double student_t_cdf(double t, double df) {
  const double x = df / (df + t * t);
  const double p = 0.5 * incomplete_beta(df / 2.0, 0.5, x);
  return t >= 0.0 ? 1.0 - p : p;
}

double student_t_quantile_two_sided(double confidence, double df) {
  if (confidence <= 0.0 || confidence >= 1.0) throw std::invalid_argument("confidence in (0,1)");
  const double target = 0.5 + confidence / 2.0;  // upper-tail quantile
  double lo = 0.0, hi = 1.0;
  while (student_t_cdf(hi, df) < target) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (student_t_cdf(mid, df) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double mean(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

MeanCi mean_ci(std::span<const double> samples, double confidence) {
  if (samples.size() < 2) throw std::invalid_argument("mean_ci requires n >= 2");
  const auto n = static_cast<double>(samples.size());
  const double m = mean(samples);
  const double s2 = variance(samples);
  if (s2 == 0.0) return {m, 0.0};
  const double t = student_t_quantile_two_sided(confidence, n - 1.0);
  return {m, t * std::sqrt(s2 / n)};
}

double welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("welch_t_test requires n >= 2");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = mean(a), mb = mean(b);
  const double va = variance(a), vb = variance(b);
  if (va == 0.0 && vb == 0.0) return ma == mb ? 1.0 : 0.0;
  const double se2 = va / na + vb / nb;
  const double t = (ma - mb) / std::sqrt(se2);
  const double df = se2 * se2 / ((va / na) * (va / na) / (na - 1.0) + (vb / nb) * (vb / nb) / (nb - 1.0));
  return 2.0 * (1.0 - student_t_cdf(std::fabs(t), df));
}

namespace {

bool has_ties(std::vector<double> pooled) {
  std::sort(pooled.begin(), pooled.end());
  return std::adjacent_find(pooled.begin(), pooled.end()) != pooled.end();
}

double u_statistic(std::span<const double> a, std::span<const double> b) {
  double u = 0.0;
  for (double x : a)
    for (double y : b) {
      if (x > y)
        u += 1.0;
      else if (x == y)
        u += 0.5;
    }
  return u;
}

// Exact null distribution of U over rank arrangements (no ties), via the
// classic recurrence c(m,n,u) = c(m-1,n,u-n) + c(m,n-1,u).
std::vector<double> exact_u_counts(int n1, int n2) {
  const int max_u = n1 * n2;
  std::vector<std::vector<double>> c(n2 + 1, std::vector<double>(max_u + 1, 0.0));
  for (int n = 0; n <= n2; ++n) c[n][0] = 1.0;  // m = 0 layer
  for (int m = 1; m <= n1; ++m) {
    std::vector<std::vector<double>> next(n2 + 1, std::vector<double>(max_u + 1, 0.0));
    next[0][0] = 1.0;  // n = 0
    for (int n = 1; n <= n2; ++n)
      for (int u = 0; u <= m * n; ++u) {
        double v = next[n - 1][u];
        if (u >= n) v += c[n][u - n];
        next[n][u] = v;
      }
    c.swap(next);
  }
  return c[n2];
}

// Tie-safe exact two-sided p by enumerating all C(n1+n2, n1) assignments of
// the pooled values to the first sample. Only used for small pools.
double exact_p_enumerate(std::span<const double> a, std::span<const double> b, double u_obs) {
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const int n = static_cast<int>(pooled.size());
  const int n1 = static_cast<int>(a.size());
  long long total = 0, le = 0, ge = 0;
  std::vector<int> idx(n1);
  for (int i = 0; i < n1; ++i) idx[i] = i;
  std::vector<double> xa(n1), xb(n - n1);
  while (true) {
    // evaluate current combination
    int ai = 0, bi = 0;
    std::vector<bool> in_a(n, false);
    for (int i : idx) in_a[i] = true;
    for (int i = 0; i < n; ++i) {
      if (in_a[i])
        xa[ai++] = pooled[i];
      else
        xb[bi++] = pooled[i];
    }
    const double u = u_statistic(xa, xb);
    ++total;
    if (u <= u_obs + 1e-12) ++le;
    if (u >= u_obs - 1e-12) ++ge;
    // next combination
    int i = n1 - 1;
    while (i >= 0 && idx[i] == n - n1 + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < n1; ++j) idx[j] = idx[j - 1] + 1;
  }
  const double p_le = static_cast<double>(le) / static_cast<double>(total);
  const double p_ge = static_cast<double>(ge) / static_cast<double>(total);
  return std::min(1.0, 2.0 * std::min(p_le, p_ge));
}

}  // namespace

MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("mann_whitney_u requires non-empty samples");
  const int n1 = static_cast<int>(a.size());
  const int n2 = static_cast<int>(b.size());
  const double u = u_statistic(a, b);

  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const bool ties = has_ties(pooled);

  if (n1 < 20 && n2 < 20) {
    if (!ties) {
      // exact p from the tie-free null distribution of U
      const auto counts = exact_u_counts(n1, n2);
      double total = 0.0;
      for (double c : counts) total += c;
      const int ui = static_cast<int>(std::llround(u));
      double le = 0.0, ge = 0.0;
      for (int v = 0; v <= n1 * n2; ++v) {
        if (v <= ui) le += counts[v];
        if (v >= ui) ge += counts[v];
      }
      const double p = std::min(1.0, 2.0 * std::min(le / total, ge / total));
      return {u, p, true};
    }
    if (n1 + n2 <= 22) return {u, exact_p_enumerate(a, b, u), true};
  }

  // Normal approximation with tie correction and continuity correction.
  const double n1d = n1, n2d = n2, nd = n1d + n2d;
  std::sort(pooled.begin(), pooled.end());
  double tie_term = 0.0;
  for (std::size_t i = 0; i < pooled.size();) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j] == pooled[i]) ++j;
    const double t = static_cast<double>(j - i);
    tie_term += t * (t * t - 1.0);
    i = j;
  }
  const double mu = n1d * n2d / 2.0;
  const double sigma2 = n1d * n2d / 12.0 * ((nd + 1.0) - tie_term / (nd * (nd - 1.0)));
  if (sigma2 <= 0.0) return {u, 1.0, false};
  const double z = (std::fabs(u - mu) - 0.5) / std::sqrt(sigma2);
  const double p = std::min(1.0, 2.0 * (1.0 - normal_cdf(std::max(z, 0.0))));
  return {u, p, false};
}

double chi_square_p(double statistic, double df) {
  if (statistic <= 0.0) return 1.0;
  return 1.0 - gamma_p(df / 2.0, statistic / 2.0);
}

double ks_test_exponential(std::span<const double> samples, double lambda) {
  if (samples.empty() || lambda <= 0.0) throw std::invalid_argument("ks_test_exponential domain");
  std::vector<double> xs(samples.begin(), samples.end());
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = 1.0 - std::exp(-xs[i] / lambda);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  // asymptotic Kolmogorov distribution
  const double sqrt_n = std::sqrt(n);
  const double lam = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
  double p = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lam * lam);
    p += sign * term;
    sign = -sign;
    if (term < 1e-12) break;
  }
  return std::clamp(2.0 * p, 0.0, 1.0);
}

}  // namespace cdasim::stats
