#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "scenabs/errors.hpp"
#include "scenabs/math.hpp"

namespace scenabs {

/// Parameters of the sample-size bounds. `r` is the number of scalar
/// optimization variables for the convex bounds; `d_vc` replaces it for the
/// VC-dimension bound.
struct BoundParams {
  double eps = 0.0;   // violation level, in (0,1)
  double beta = 0.0;  // confidence parameter, in (0,1)
  double alpha = 0.0; // empirical violation, in [0, eps)
  int r = 0;          // optimization-variable count (>= 1)
  int d_vc = 0;       // VC dimension (>= 1), used by min_N_vc only

  void check(bool vc = false) const {
    if (!(eps > 0.0 && eps < 1.0)) throw invalid_input("bounds: eps must be in (0,1)");
    if (!(beta > 0.0 && beta < 1.0)) throw invalid_input("bounds: beta must be in (0,1)");
    if (!(alpha >= 0.0 && alpha < eps)) throw invalid_input("bounds: alpha must be in [0, eps)");
    if (vc) {
      if (d_vc < 1) throw invalid_input("bounds: d_vc must be >= 1");
    } else {
      if (r < 1) throw invalid_input("bounds: r must be >= 1");
    }
  }
};

namespace detail {

// ln of  C(m,k) * sum_{i=0}^{min(m,N)} C(N,i) eps^i (1-eps)^{N-i}
// with k = floor(alpha N), m = k + r - 1.  The binomial tail is summed from
// i = min(m,N) downward with the term-ratio recurrence, so only O(1) terms
// contribute once the ratio drops below 1.
inline double log_removal_lhs(std::int64_t n, double eps, double alpha, int r) {
  const auto k = static_cast<std::int64_t>(std::floor(alpha * static_cast<double>(n)));
  const std::int64_t m = k + r - 1;
  const std::int64_t top = std::min(m, n);
  const double lead = log_binomial(static_cast<double>(n), static_cast<double>(top)) +
                      static_cast<double>(top) * std::log(eps) +
                      static_cast<double>(n - top) * std::log1p(-eps);
  double sum = 1.0, term = 1.0;
  for (std::int64_t i = top; i >= 1; --i) {
    const double ratio = (static_cast<double>(i) * (1.0 - eps)) /
                         ((static_cast<double>(n - i) + 1.0) * eps);
    term *= ratio;
    sum += term;
    if (term < 1e-18 * sum && ratio < 1.0) break;
  }
  return log_binomial(static_cast<double>(m), static_cast<double>(k)) + lead + std::log(sum);
}

inline bool removal_pred(std::int64_t n, double eps, double log_beta, double alpha, int r) {
  return log_removal_lhs(n, eps, alpha, r) <= log_beta;
}

}  // namespace detail

/// Smallest N for which the implicit sample-size condition
///   C(floor(aN)+r-1, floor(aN)) * sum_{i<=floor(aN)+r-1} C(N,i) eps^i (1-eps)^{N-i} <= beta
/// holds. The predicate is not monotone in N (the floor ticks), so the search
/// first locates, by doubling and bisection, an anchor N from which a whole
/// floor period of consecutive N passes, then scans downward for the true
/// first crossing, stopping after two full periods of consecutive failures.
inline std::int64_t min_N_implicit(const BoundParams& p) {
  p.check();
  const double lbeta = std::log(p.beta);
  auto pred = [&](std::int64_t n) { return detail::removal_pred(n, p.eps, lbeta, p.alpha, p.r); };

  constexpr std::int64_t n_cap = 1'000'000'000;
  if (p.alpha == 0.0) {
    // floor(aN) == 0: predicate is monotone, plain doubling + bisection
    std::int64_t hi = std::max<std::int64_t>(p.r, 2);
    while (!pred(hi)) {
      hi *= 2;
      if (hi > n_cap) throw invalid_input("min_N_implicit: N exceeds cap");
    }
    std::int64_t lo = hi / 2;
    while (lo + 1 < hi) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      (pred(mid) ? hi : lo) = mid;
    }
    return hi;
  }

  const auto period = static_cast<std::int64_t>(std::ceil(1.0 / p.alpha));
  auto stable = [&](std::int64_t n) {
    for (std::int64_t m = n; m <= n + period; ++m)
      if (!pred(m)) return false;
    return true;
  };
  std::int64_t hi = std::max<std::int64_t>(p.r, 2);
  while (!stable(hi)) {
    hi *= 2;
    if (hi > n_cap) throw invalid_input("min_N_implicit: N exceeds cap");
  }
  std::int64_t lo = hi / 2;
  while (lo + 1 < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (stable(mid) ? hi : lo) = mid;
  }
  // downward scan for the first crossing below the stable anchor
  std::int64_t best = hi, fails = 0;
  for (std::int64_t n = hi - 1; n >= 1 && fails <= 2 * (period + 1); --n) {
    if (pred(n)) {
      best = n;
      fails = 0;
    } else {
      ++fails;
    }
  }
  return best;
}

/// True iff the implicit condition holds at the given N.
inline bool implicit_condition_holds(std::int64_t n, const BoundParams& p) {
  p.check();
  return detail::removal_pred(n, p.eps, std::log(p.beta), p.alpha, p.r);
}

/// Explicit bound from the Chernoff relaxation of the implicit condition:
///   N >= (2+a)e/(e-a)^2 [ (r-1) ln(2e(2+a)(r-1)/(e-a)^2) + ln(1/b) ] + (r-1)/2.
/// For r = 1 the (r-1) terms vanish.
inline std::int64_t min_N_chernoff(const BoundParams& p) {
  p.check();
  const double gap = p.eps - p.alpha;
  const double lead = (2.0 + p.alpha) * p.eps / (gap * gap);
  double rhs;
  if (p.r >= 2) {
    const double rm1 = static_cast<double>(p.r - 1);
    rhs = lead * (rm1 * std::log(2.0 * p.eps * (2.0 + p.alpha) * rm1 / (gap * gap)) +
                  std::log(1.0 / p.beta)) +
          rm1 / 2.0;
  } else {
    rhs = lead * std::log(1.0 / p.beta);
  }
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(rhs)));
}

/// VC-dimension bound for the non-convex case:
///   N >= 5e/(e-a)^2 [ d_vc ln(40e/(e-a)^2) + ln(4/b) ].
inline std::int64_t min_N_vc(const BoundParams& p) {
  p.check(/*vc=*/true);
  const double gap = p.eps - p.alpha;
  const double lead = 5.0 * p.eps / (gap * gap);
  const double rhs = lead * (static_cast<double>(p.d_vc) * std::log(40.0 * p.eps / (gap * gap)) +
                             std::log(4.0 / p.beta));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(rhs)));
}

}  // namespace scenabs
