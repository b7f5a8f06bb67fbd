// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 The underlay authors
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <type_traits>

#include "underlay/errors.hpp"

namespace underlay {

namespace detail {

inline constexpr int kGammaMaxIterations = 500;

// Lower-tail power series: P(a,x) = x^a e^-x / Gamma(a) * sum_k x^k / (a+1)...(a+k).
// Converges fast for x < a + 1.
template <typename Scalar>
Scalar gamma_series_p(Scalar a, Scalar x) {
  Scalar ap = a;
  Scalar term = Scalar(1) / a;
  Scalar sum = term;
  for (int i = 0; i < kGammaMaxIterations; ++i) {
    ap += Scalar(1);
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * std::numeric_limits<Scalar>::epsilon()) {
      return sum * std::exp(a * std::log(x) - x - std::lgamma(a));
    }
  }
  throw numeric_error("incomplete gamma series did not converge");
}

// Upper-tail continued fraction, evaluated with the modified Lentz method.
template <typename Scalar>
Scalar gamma_continued_fraction_q(Scalar a, Scalar x) {
  constexpr Scalar tiny =
      std::numeric_limits<Scalar>::min() / std::numeric_limits<Scalar>::epsilon();
  Scalar b = x + Scalar(1) - a;
  Scalar c = Scalar(1) / tiny;
  Scalar d = Scalar(1) / b;
  Scalar h = d;
  for (int i = 1; i <= kGammaMaxIterations; ++i) {
    const Scalar an = -Scalar(i) * (Scalar(i) - a);
    b += Scalar(2);
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = Scalar(1) / d;
    const Scalar delta = d * c;
    h *= delta;
    if (std::abs(delta - Scalar(1)) < std::numeric_limits<Scalar>::epsilon()) {
      return h * std::exp(a * std::log(x) - x - std::lgamma(a));
    }
  }
  throw numeric_error("incomplete gamma continued fraction did not converge");
}

}  // namespace detail

// Regularized lower incomplete gamma function P(a, x) = gamma(a, x) / Gamma(a).
// Series branch for x < a + 1, continued fraction otherwise; requires a > 0
// and x >= 0.
template <typename Scalar>
Scalar regularized_lower_gamma(Scalar a, Scalar x) {
  static_assert(std::is_floating_point_v<Scalar>);
  if (!(a > Scalar(0))) throw std::domain_error("regularized_lower_gamma: a must be > 0");
  if (!(x >= Scalar(0))) throw std::domain_error("regularized_lower_gamma: x must be >= 0");
  if (x == Scalar(0)) return Scalar(0);
  if (x < a + Scalar(1)) return detail::gamma_series_p(a, x);
  return Scalar(1) - detail::gamma_continued_fraction_q(a, x);
}

template <typename Scalar>
Scalar regularized_upper_gamma(Scalar a, Scalar x) {
  static_assert(std::is_floating_point_v<Scalar>);
  if (!(a > Scalar(0))) throw std::domain_error("regularized_upper_gamma: a must be > 0");
  if (!(x >= Scalar(0))) throw std::domain_error("regularized_upper_gamma: x must be >= 0");
  if (x == Scalar(0)) return Scalar(1);
  if (x < a + Scalar(1)) return Scalar(1) - detail::gamma_series_p(a, x);
  return detail::gamma_continued_fraction_q(a, x);
}

// erf through the same kernel: erf(x) = sgn(x) P(1/2, x^2).
template <typename Scalar>
Scalar error_function(Scalar x) {
  if (x == Scalar(0)) return x;
  const Scalar p = regularized_lower_gamma(Scalar(0.5), x * x);
  return x > Scalar(0) ? p : -p;
}

// Digamma for x > 0: recurrence shift to x >= 10, then the Bernoulli
// asymptotic series; absolute error < 1e-12 over the shifted range.
template <typename Scalar>
Scalar digamma(Scalar x) {
  static_assert(std::is_floating_point_v<Scalar>);
  if (!(x > Scalar(0))) throw std::domain_error("digamma: x must be > 0");
  Scalar shift = Scalar(0);
  while (x < Scalar(10)) {
    shift -= Scalar(1) / x;
    x += Scalar(1);
  }
  const Scalar inv = Scalar(1) / x;
  const Scalar inv2 = inv * inv;
  const Scalar tail =
      inv2 * (Scalar(1.0 / 12) -
              inv2 * (Scalar(1.0 / 120) -
                      inv2 * (Scalar(1.0 / 252) -
                              inv2 * (Scalar(1.0 / 240) -
                                      inv2 * (Scalar(1.0 / 132) - inv2 * Scalar(691.0 / 32760))))));
  return shift + std::log(x) - inv / Scalar(2) - tail;
}

// Trigamma for x > 0, same shift-then-asymptotic scheme as digamma.
template <typename Scalar>
Scalar trigamma(Scalar x) {
  static_assert(std::is_floating_point_v<Scalar>);
  if (!(x > Scalar(0))) throw std::domain_error("trigamma: x must be > 0");
  Scalar shift = Scalar(0);
  while (x < Scalar(10)) {
    shift += Scalar(1) / (x * x);
    x += Scalar(1);
  }
  const Scalar inv = Scalar(1) / x;
  const Scalar inv2 = inv * inv;
  const Scalar tail =
      inv * inv2 *
      (Scalar(1.0 / 6) -
       inv2 * (Scalar(1.0 / 30) -
               inv2 * (Scalar(1.0 / 42) - inv2 * (Scalar(1.0 / 30) - inv2 * Scalar(5.0 / 66)))));
  return shift + inv + inv2 / Scalar(2) + tail;
}

}  // namespace underlay
