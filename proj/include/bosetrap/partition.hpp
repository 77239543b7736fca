// Copyright (c) 2026 bosetrap developers
// SPDX-License-Identifier: Apache-2.0

#ifndef BOSETRAP_PARTITION_HPP
#define BOSETRAP_PARTITION_HPP

#include <vector>

#include "bosetrap/model.hpp"

namespace bosetrap {

/// Which frequencies enter the per-cycle sinh weights: the internal
/// (renormalized) frequencies w, or the bare confinement frequencies
/// Omega.  They coincide for inter_omega == 0.
enum class SinhVariant { kRenormalized, kConfinement };

/// Log-domain canonical partition values log Z(n), n = 0..n_max, for a
/// fixed (beta, frequency pair).  Only ratios Z(N-l)/Z(N) are ever
/// consumed, so the N-independent center-of-mass factor is omitted and
/// the table is built from cycle weights alone.  Immutable once built.
struct PartitionTable {
  std::vector<double> log_z;  ///< log Z(n), log_z[0] == 0
  double beta = 0.0;
  double hbar = 1.0;
  double freq_xy = 0.0;  ///< frequency entering the transverse weights
  double freq_z = 0.0;   ///< frequency entering the axial weights
  SinhVariant variant = SinhVariant::kRenormalized;

  int n_max() const { return static_cast<int>(log_z.size()) - 1; }
};

/// log of the length-l cycle weight
///   1 / (8 sinh(l beta hbar w_z / 2) sinh^2(l beta hbar w_xy / 2)),
/// assembled from log_sinh so it stays finite for l beta hbar w up to
/// ~1e4 and beyond.  Strictly decreasing in l.
double log_cycle_weight(int ell, double beta, double hbar, double w_xy, double w_z);

/// Builds log Z(n) for n = 0..n_max by the cycle recursion
///   log Z(n) = -log n + logsumexp_{l=1..n}[log b_l + log Z(n-l)],
/// O(n_max^2).  The variant tag records which frequency family the
/// caller passed.
PartitionTable build_partition_table(int n_max, double beta, double hbar, double freq_xy,
                                     double freq_z, SinhVariant variant);

/// Convenience: table for (model, thermal) with frequencies selected by
/// the variant (renormalized -> w, confinement -> Omega).
PartitionTable build_partition_table(const TrapModel& model, const ThermalPoint& thermal,
                                     SinhVariant variant);

/// log Z(N - l) - log Z(N) for l in [1, N]; throws std::out_of_range
/// otherwise.
double log_partition_ratio(const PartitionTable& table, int ell);

/// Z(n) by direct summation over all n! permutations grouped by cycle
/// type; the validation oracle for the recursion.  Guarded to n <= 5.
double brute_force_partition(int n, double beta, double hbar, double freq_xy,
                             double freq_z);

}  // namespace bosetrap

#endif
