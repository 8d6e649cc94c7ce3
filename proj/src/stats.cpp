#include "ycs/stats.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ycs {

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 400;
  constexpr double kEps = 1e-14;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

double mean_of(std::span<const double> xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs, double mean) {
  double sum = 0.0;
  for (double x : xs) sum += (x - mean) * (x - mean);
  return sum / static_cast<double>(xs.size() - 1);
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  assert(a > 0.0 && b > 0.0);
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_sf(double t, double df) {
  assert(df > 0.0);
  if (std::isinf(t)) return t > 0.0 ? 0.0 : 1.0;
  const double x = df / (df + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(0.5 * df, 0.5, x);
  return t >= 0.0 ? tail : 1.0 - tail;
}

TTestResult welch_t_test(std::span<const double> a,
                         std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw std::invalid_argument("welch_t_test needs >= 2 samples per group");
  }
  TTestResult result;
  result.mean_a = mean_of(a);
  result.mean_b = mean_of(b);
  const double va = sample_variance(a, result.mean_a);
  const double vb = sample_variance(b, result.mean_b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double se2 = va / na + vb / nb;
  if (se2 <= 0.0) {
    // Both samples constant.
    if (result.mean_a == result.mean_b) {
      result.t = 0.0;
      result.p = 1.0;
    } else {
      result.t = result.mean_a < result.mean_b
                     ? -std::numeric_limits<double>::infinity()
                     : std::numeric_limits<double>::infinity();
      result.p = 0.0;
    }
    result.df = 0.0;
    return result;
  }
  result.t = (result.mean_a - result.mean_b) / std::sqrt(se2);
  result.df = se2 * se2 /
              (va * va / (na * na * (na - 1.0)) +
               vb * vb / (nb * nb * (nb - 1.0)));
  result.p = 2.0 * student_t_sf(std::abs(result.t), result.df);
  if (result.p > 1.0) result.p = 1.0;
  return result;
}

}  // namespace ycs
