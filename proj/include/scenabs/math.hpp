#pragma once

#include <cmath>
#include <limits>

#include "scenabs/errors.hpp"

namespace scenabs {

/// ln C(n, k); -inf outside the triangle.
inline double log_binomial(double n, double k) {
  if (k < 0.0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

namespace detail {

// Continued fraction for the regularized incomplete beta (Lentz's method).
inline double betacf(double a, double b, double x) {
  constexpr int max_it = 300;
  constexpr double eps = 3e-15, fpmin = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_it; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

}  // namespace detail

/// Regularized incomplete beta I_x(a, b).
inline double betainc(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double lbt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                     a * std::log(x) + b * std::log1p(-x);
  const double bt = std::exp(lbt);
  if (x < (a + 1.0) / (a + b + 2.0))
    return bt * detail::betacf(a, b, x) / a;
  return 1.0 - bt * detail::betacf(b, a, 1.0 - x) / b;
}

/// Inverse of I_x(a, b) in x, by bisection (monotone in x).
inline double betainc_inv(double a, double b, double p) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (betainc(a, b, mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

struct ConfidenceInterval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Two-sided Clopper-Pearson interval for k successes out of m at the given
/// confidence level.
inline ConfidenceInterval clopper_pearson(int k, int m, double level = 0.99) {
  if (m < 1 || k < 0 || k > m) throw invalid_input("clopper_pearson: bad counts");
  const double tail = 0.5 * (1.0 - level);
  ConfidenceInterval ci;
  ci.lo = (k == 0) ? 0.0 : betainc_inv(static_cast<double>(k), static_cast<double>(m - k + 1), tail);
  ci.hi = (k == m) ? 1.0 : betainc_inv(static_cast<double>(k + 1), static_cast<double>(m - k), 1.0 - tail);
  return ci;
}

}  // namespace scenabs
