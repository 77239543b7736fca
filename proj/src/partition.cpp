// Copyright (c) 2026 bosetrap developers
// SPDX-License-Identifier: Apache-2.0

#include "bosetrap/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "bosetrap/numerics.hpp"

namespace bosetrap {

double log_cycle_weight(int ell, double beta, double hbar, double w_xy, double w_z) {
  if (ell < 1) throw std::invalid_argument("log_cycle_weight: ell must be >= 1");
  if (!(beta > 0.0)) throw std::invalid_argument("log_cycle_weight: beta must be positive");
  if (!(w_xy > 0.0 && w_z > 0.0))
    throw std::invalid_argument("log_cycle_weight: frequencies must be positive");
  const double half = 0.5 * ell * beta * hbar;
  return -(std::log(8.0) + 2.0 * log_sinh(half * w_xy) + log_sinh(half * w_z));
}

PartitionTable build_partition_table(int n_max, double beta, double hbar, double freq_xy,
                                     double freq_z, SinhVariant variant) {
  if (n_max < 0) throw std::invalid_argument("build_partition_table: n_max must be >= 0");
  PartitionTable table;
  table.beta = beta;
  table.hbar = hbar;
  table.freq_xy = freq_xy;
  table.freq_z = freq_z;
  table.variant = variant;
  table.log_z.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  if (n_max == 0) return table;

  std::vector<double> log_b(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (int ell = 1; ell <= n_max; ++ell)
    log_b[ell] = log_cycle_weight(ell, beta, hbar, freq_xy, freq_z);

  std::vector<double> terms;
  terms.reserve(n_max);
  for (int n = 1; n <= n_max; ++n) {
    terms.clear();
    for (int ell = 1; ell <= n; ++ell) terms.push_back(log_b[ell] + table.log_z[n - ell]);
    table.log_z[n] = log_sum_exp(terms) - std::log(static_cast<double>(n));
  }
  return table;
}

PartitionTable build_partition_table(const TrapModel& model, const ThermalPoint& thermal,
                                     SinhVariant variant) {
  double freq_xy = model.omega_xy;
  double freq_z = model.omega_z;
  if (variant == SinhVariant::kRenormalized) {
    const auto [w_xy, w_z] = renormalized_frequencies(model);
    freq_xy = w_xy;
    freq_z = w_z;
  }
  return build_partition_table(model.n_particles, thermal.beta, model.hbar, freq_xy,
                               freq_z, variant);
}

double log_partition_ratio(const PartitionTable& table, int ell) {
  const int n = table.n_max();
  if (ell < 1 || ell > n)
    throw std::out_of_range("log_partition_ratio: ell must be in [1, N]");
  return table.log_z[n - ell] - table.log_z[n];
}

double brute_force_partition(int n, double beta, double hbar, double freq_xy,
                             double freq_z) {
  if (n < 0) throw std::invalid_argument("brute_force_partition: n must be >= 0");
  if (n > 5)
    throw std::invalid_argument("brute_force_partition: factorial guard, n must be <= 5");
  if (n == 0) return 1.0;

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<char> seen(n);
  double total = 0.0;
  std::size_t count = 0;
  do {
    std::fill(seen.begin(), seen.end(), 0);
    double log_term = 0.0;
    for (int start = 0; start < n; ++start) {
      if (seen[start]) continue;
      int len = 0;
      for (int j = start; !seen[j]; j = perm[j]) {
        seen[j] = 1;
        ++len;
      }
      log_term += log_cycle_weight(len, beta, hbar, freq_xy, freq_z);
    }
    total += std::exp(log_term);
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));

  return total / static_cast<double>(count);
}

}  // namespace bosetrap
