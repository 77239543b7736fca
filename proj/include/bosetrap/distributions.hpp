// Copyright (c) 2026 bosetrap developers
// SPDX-License-Identifier: Apache-2.0

#ifndef BOSETRAP_DISTRIBUTIONS_HPP
#define BOSETRAP_DISTRIBUTIONS_HPP

#include <functional>
#include <vector>

#include "bosetrap/model.hpp"
#include "bosetrap/partition.hpp"

namespace bosetrap {

/// The four momentum-distribution families.
///
/// kBoseExact is the canonical cycle sum for harmonically interacting
/// bosons; kBoseIdeal its non-interacting limit (w = Omega); then the
/// limit chain continues: keeping only length-1 cycles gives
/// kDistinguishable, and dropping the confinement gives kMaxwell.
enum class Family { kBoseExact, kBoseIdeal, kDistinguishable, kMaxwell };

/// Integral convention.  The Bose cycle sums natively integrate to N,
/// the distinguishable and Maxwell forms to 1; either can be rescaled
/// to the other convention.
enum class Normalization { kTotalN, kPerParticle };

struct DistributionSpec {
  Family family = Family::kBoseIdeal;
  SinhVariant sinh_variant = SinhVariant::kRenormalized;
  Normalization normalization = Normalization::kTotalN;
};

/// A cylindrical momentum point; all families depend on (p_rho, |p_z|)
/// only.
struct MomentumPoint {
  double p_rho = 0.0;
  double p_z = 0.0;
};

/// Gaussian width coefficient of the length-l cycle term,
///   A_l(Omega, w) = w coth(beta hbar w l / 2)
///                 + [Omega coth(beta hbar Omega / 2)
///                    - w coth(beta hbar w / 2)] / N.
/// Strictly positive; the bracket vanishes identically for w == Omega.
double a_coefficient(int ell, double omega_conf, double omega_ren, double beta,
                     double hbar, int n_particles);

/// Exact interacting-boson momentum distribution (cycle sum).  The
/// explicit sinh weights use the frequencies selected by
/// spec.sinh_variant; the partition ratios come from `table`, which
/// must have been built for the same (model, thermal) pair (mismatch
/// throws std::invalid_argument).  Integrates to N in the kTotalN
/// convention when the sinh weights match the table frequencies.
double eval_bose_exact(const MomentumPoint& point, const TrapModel& model,
                       const ThermalPoint& thermal, const PartitionTable& table,
                       const DistributionSpec& spec);

/// Ideal (non-interacting) boson gas; requires model.inter_omega == 0.
/// Identical code path to eval_bose_exact with w == Omega.
double eval_bose_ideal(const MomentumPoint& point, const TrapModel& model,
                       const ThermalPoint& thermal, const PartitionTable& table);

/// Length-1-cycle (distinguishable particle) closed form; integrates
/// to 1 and is exactly Gaussian in (p_rho, p_z).
double eval_distinguishable(const MomentumPoint& point, const TrapModel& model,
                            const ThermalPoint& thermal);

/// Free-particle Maxwell-Boltzmann distribution,
/// (beta / 2 pi m)^{3/2} exp(-beta p^2 / 2m); integrates to 1.
double eval_maxwell(const MomentumPoint& point, double mass, const ThermalPoint& thermal);

/// Reusable evaluator for one (family, model, temperature) triple.
/// Precomputes the per-cycle log weights and Gaussian coefficients so
/// that point evaluations cost one pass over l = 1..N; pure and safe
/// to share across threads once built.
class DistributionEvaluator {
 public:
  /// Builds any required partition table internally (physical cycle
  /// weights, i.e. internal frequencies).
  DistributionEvaluator(const TrapModel& model, const ThermalPoint& thermal,
                        const DistributionSpec& spec);

  /// Reuses a caller-supplied table; it must match (model, thermal)
  /// and is only read during construction.  Pass nullptr to build one.
  DistributionEvaluator(const TrapModel& model, const ThermalPoint& thermal,
                        const DistributionSpec& spec, const PartitionTable* table);

  double operator()(double p_rho, double p_z) const;
  double operator()(const MomentumPoint& p) const { return (*this)(p.p_rho, p.p_z); }

  const TrapModel& model() const { return model_; }
  const ThermalPoint& thermal() const { return thermal_; }
  const DistributionSpec& spec() const { return spec_; }

 private:
  TrapModel model_;
  ThermalPoint thermal_;
  DistributionSpec spec_;
  // cycle-sum state (empty for the closed-form families)
  std::vector<double> scaled_weight_;  ///< exp(log term - peak_log_)
  std::vector<double> inv_a_xy_;       ///< 1 / (hbar m A_l^xy)
  std::vector<double> inv_a_z_;        ///< 1 / (hbar m A_l^z)
  double peak_log_ = 0.0;
  double prefactor_ = 0.0;
  double scale_ = 1.0;  ///< normalization rescaling
};

/// Result of the cylindrical normalization quadrature.
struct NormalizationResult {
  double value = 0.0;
  double error_estimate = 0.0;  ///< |value - half-node value|
};

/// 2 pi  int int  p_rho n(p_rho, p_z) dp_rho dp_z over the truncated
/// domain (z symmetry doubled), Gauss-Legendre with `nodes` points per
/// axis and a half-node Richardson error estimate.
NormalizationResult normalization_integral(const DistributionEvaluator& eval,
                                           int nodes = 128);

/// Default evaluation-domain cutoff max(10 sqrt(hbar m w),
/// 6 sqrt(2 m k_B T)): covers both the condensate peak and the thermal
/// tail.
double default_momentum_cutoff(const TrapModel& model, double temperature);

}  // namespace bosetrap

#endif
