#pragma once

#include <span>

namespace ycs {

// Continued-fraction evaluation of the regularized incomplete beta
// function I_x(a, b), accurate to ~1e-10 over the t-test range.
double regularized_incomplete_beta(double a, double b, double x);

// One-sided survival P(T > t) for Student's t with `df` degrees of
// freedom (df may be fractional).
double student_t_sf(double t, double df);

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;  // two-sided
  double mean_a = 0.0;
  double mean_b = 0.0;
};

// Welch's unequal-variance t-test with Welch-Satterthwaite degrees of
// freedom. Each sample needs >= 2 values. When both samples are
// degenerate (zero variance): p = 1 for equal means, p = 0 otherwise.
TTestResult welch_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace ycs
