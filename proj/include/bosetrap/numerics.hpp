// Copyright (c) 2026 bosetrap developers
// SPDX-License-Identifier: Apache-2.0

#ifndef BOSETRAP_NUMERICS_HPP
#define BOSETRAP_NUMERICS_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace bosetrap {

/// Apery's constant zeta(3), to double precision.
inline constexpr double kZeta3 = 1.2020569031595942854;

/// log(sinh(x)) for x > 0 without overflow at large x.
///
/// Large arguments use sinh(x) = e^x (1 - e^{-2x}) / 2, so
/// log sinh(x) = x - log 2 + log1p(-e^{-2x}) stays finite for x up to
/// ~1e308.  Small arguments evaluate sinh directly.
inline double log_sinh(double x) {
  if (x < 0.25) return std::log(std::sinh(x));
  return x - 0.6931471805599453094 + std::log1p(-std::exp(-2.0 * x));
}

/// Stable log(sum_i exp(v_i)).  Returns -inf for an empty span.
double log_sum_exp(std::span<const double> values);

/// Gauss-Legendre nodes and weights on [a, b].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1], Newton iteration on the
/// Legendre recurrence.  Rules are cached per n; thread-safe.
const QuadratureRule& gauss_legendre(int n);

/// Rescaled copy of gauss_legendre(n) on [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// Runs fn(i) for i in [0, count) across hardware threads.  fn must be
/// safe to call concurrently for distinct i.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace bosetrap

#endif
