// Copyright (c) 2026 bosetrap developers
// SPDX-License-Identifier: Apache-2.0

#ifndef BOSETRAP_THERMOMETRY_HPP
#define BOSETRAP_THERMOMETRY_HPP

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bosetrap/distributions.hpp"
#include "bosetrap/model.hpp"

namespace bosetrap {

/// Which trial family is fitted to the measured distribution: the
/// free-particle Maxwell form on the tail |p| > p_c, or the full
/// ideal-boson form over all momenta.
enum class FitProcedure { kMaxwellTail, kBoseEinstein };

/// Amplitude treatment during fitting.  kPerParticle compares the
/// unit-normalized trial family directly against the target (which is
/// then expected to be per-particle, n/N); kFreeScale additionally
/// minimizes over a multiplicative prefactor, making the fit invariant
/// under target rescaling.
enum class AmplitudeMode { kPerParticle, kFreeScale };

/// Spherical-shell quadrature controls for the least-squares
/// objectives.  p_max == 0 selects max(10 sqrt(hbar m w),
/// 6 sqrt(2 m k_B T_hi)) with T_hi the bracket top (or the trial
/// temperature for one-shot objective calls).
struct QuadratureSpec {
  int nodes = 128;    ///< per dimension (radial and polar)
  double p_max = 0.0; ///< truncation radius; 0 = automatic

  void validate() const;
};

/// Controls for fit_temperature.  Bracket values of 0 select the
/// default [0.05, 5] * T0(model).
struct FitConfig {
  FitProcedure procedure = FitProcedure::kMaxwellTail;
  double p_c = 5.0;  ///< tail threshold, units of momentum_scale(model)
  double bracket_lo = 0.0;  ///< kelvin-equivalent absolute temperature
  double bracket_hi = 0.0;
  double rel_tol = 1e-8;  ///< relative convergence tolerance on T
  QuadratureSpec quadrature;
  AmplitudeMode amplitude = AmplitudeMode::kPerParticle;

  void validate() const;
};

struct FitResult {
  double fitted_temperature = 0.0;
  double objective_value = 0.0;
  /// |objective(nodes) - objective(nodes/2)| at the fitted temperature,
  /// the two-refinement quadrature estimate.
  double objective_error_estimate = 0.0;
  double amplitude_scale = 1.0;  ///< fitted prefactor (1 under kPerParticle)
  int evaluations = 0;           ///< objective evaluations consumed
  std::pair<double, double> bracket_used{0.0, 0.0};
  FitProcedure procedure = FitProcedure::kMaxwellTail;
};

/// A measured (or synthetic) cylindrically symmetric momentum
/// distribution; must be safe to call concurrently.
using TargetFunction = std::function<double(double p_rho, double p_z)>;

/// Least-squares mismatch int_{|p| > p_c} (n_maxwell(p; T) - target(p))^2 d^3p
/// between the unit-normalized Maxwell form at t_trial and the target,
/// by spherical-shell quadrature (radial on [p_c, p_max], polar on
/// [0, pi/2] doubled, azimuth analytic).  p_c is absolute here; pass
/// error_estimate to also get the half-node Richardson difference.
double mb_tail_objective(double t_trial, const TargetFunction& target,
                         const TrapModel& model, double p_c,
                         const QuadratureSpec& quadrature,
                         double* error_estimate = nullptr);

/// Same mismatch with the per-particle ideal-boson family over all
/// momenta; rebuilds the partition table at every trial temperature.
double be_objective(double t_trial, const TargetFunction& target,
                    const TrapModel& model, const QuadratureSpec& quadrature,
                    double* error_estimate = nullptr);

/// Minimizes the configured objective over the temperature bracket:
/// a 64-point log-spaced scan relocates the bracket around the coarse
/// minimum, then golden-section refines to config.rel_tol.  The target
/// is sampled once on the quadrature grid and reused.  Throws
/// std::runtime_error if the coarse minimum lands on a bracket edge.
FitResult fit_temperature(const TargetFunction& target, const TrapModel& model,
                          const FitConfig& config);

/// One entry of the thermometry-bias sweep.
struct BiasRow {
  int n_particles = 0;
  double t_be = 0.0;          ///< generating temperature (absolute)
  double t_be_over_t0 = 0.0;  ///< same, in units of T0(N)
  double t_mb = 0.0;          ///< tail-fit temperature (absolute)
  double rel_diff = 0.0;      ///< (T_BE - T_MB) / T_BE
  bool ok = false;
  std::string note;  ///< failure reason when !ok
};

/// For every (N, T) pair: synthesizes the per-particle ideal-boson
/// distribution at temperature t * T0(N), tail-fits the Maxwell family
/// to it, and records the relative thermometry bias.  Failed fits are
/// flagged in their row, never dropped.  Rows run concurrently.
std::vector<BiasRow> bias_sweep(const TrapModel& base_model, std::span<const int> n_list,
                                std::span<const double> t_over_t0_grid,
                                const FitConfig& config);

}  // namespace bosetrap

#endif
