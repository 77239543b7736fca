// Copyright (c) 2026 bosetrap developers
// SPDX-License-Identifier: Apache-2.0

#ifndef BOSETRAP_MODEL_HPP
#define BOSETRAP_MODEL_HPP

#include <utility>

namespace bosetrap {

/// Sign of the harmonic pair interaction.  An attractive coupling
/// softens the internal modes, w = sqrt(Omega^2 - N omega^2); a
/// repulsive one stiffens them, w = sqrt(Omega^2 + N omega^2).
enum class InteractionSign { kAttractive, kRepulsive };

/// Physical parameters of N bosons in an anisotropic parabolic trap
/// with harmonic pair interactions.  Defaults are natural units
/// hbar = m = k_B = 1.  Immutable after validation; safe to share
/// across threads.
struct TrapModel {
  int n_particles = 1;
  double mass = 1.0;
  double hbar = 1.0;
  double boltzmann_k = 1.0;
  double omega_xy = 1.0;  ///< radial confinement frequency
  double omega_z = 1.0;   ///< axial confinement frequency
  double inter_omega = 0.0;
  InteractionSign inter_sign = InteractionSign::kAttractive;

  /// Throws std::invalid_argument / std::domain_error if any invariant
  /// is violated (non-positive parameters, over-strong attraction).
  void validate() const;
};

/// A temperature and its inverse, beta = 1 / (k_B T).
struct ThermalPoint {
  double temperature = 1.0;
  double beta = 1.0;

  static ThermalPoint from_temperature(double t, const TrapModel& model);
};

/// Internal-mode frequencies (w_xy, w_z) with w = sqrt(Omega^2 -+ N omega^2).
/// For inter_omega == 0 returns (omega_xy, omega_z) verbatim, no arithmetic.
/// Throws std::domain_error naming the axis when Omega^2 -+ N omega^2 <= 0.
std::pair<double, double> renormalized_frequencies(const TrapModel& model);

/// Finite-N condensation scale T0 = (hbar w / k_B) (N / zeta(3))^{1/3}.
/// The anisotropic case uses the geometric mean w = (w_xy^2 w_z)^{1/3}.
double condensation_temperature(const TrapModel& model);

/// Characteristic momentum sqrt(hbar m w) from the geometric-mean
/// internal frequency; the unit for threshold momenta p_c.
double momentum_scale(const TrapModel& model);

}  // namespace bosetrap

#endif
