// Copyright (c) 2026 bosetrap developers
// SPDX-License-Identifier: Apache-2.0

#include "bosetrap/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bosetrap/numerics.hpp"

namespace bosetrap {

namespace {

double renormalized_axis(double omega, double n_omega_sq, InteractionSign sign,
                         const char* axis) {
  const double w_sq = (sign == InteractionSign::kAttractive)
                          ? omega * omega - n_omega_sq
                          : omega * omega + n_omega_sq;
  if (w_sq <= 0.0) {
    throw std::domain_error(std::string("renormalized_frequencies: attraction too "
                                        "strong on the ") +
                            axis + " axis (Omega^2 - N omega^2 <= 0)");
  }
  return std::sqrt(w_sq);
}

}  // namespace

void TrapModel::validate() const {
  if (n_particles < 1) throw std::invalid_argument("TrapModel: n_particles must be >= 1");
  if (!(mass > 0.0)) throw std::invalid_argument("TrapModel: mass must be positive");
  if (!(hbar > 0.0)) throw std::invalid_argument("TrapModel: hbar must be positive");
  if (!(boltzmann_k > 0.0))
    throw std::invalid_argument("TrapModel: boltzmann_k must be positive");
  if (!(omega_xy > 0.0)) throw std::invalid_argument("TrapModel: omega_xy must be positive");
  if (!(omega_z > 0.0)) throw std::invalid_argument("TrapModel: omega_z must be positive");
  if (!(inter_omega >= 0.0))
    throw std::invalid_argument("TrapModel: inter_omega must be non-negative");
  renormalized_frequencies(*this);  // rejects over-strong attraction
}

ThermalPoint ThermalPoint::from_temperature(double t, const TrapModel& model) {
  if (!(t > 0.0)) throw std::invalid_argument("ThermalPoint: temperature must be positive");
  ThermalPoint point;
  point.temperature = t;
  point.beta = 1.0 / (model.boltzmann_k * t);
  return point;
}

std::pair<double, double> renormalized_frequencies(const TrapModel& model) {
  if (model.inter_omega == 0.0) return {model.omega_xy, model.omega_z};
  const double n_omega_sq =
      static_cast<double>(model.n_particles) * model.inter_omega * model.inter_omega;
  return {renormalized_axis(model.omega_xy, n_omega_sq, model.inter_sign, "xy"),
          renormalized_axis(model.omega_z, n_omega_sq, model.inter_sign, "z")};
}

double condensation_temperature(const TrapModel& model) {
  const auto [w_xy, w_z] = renormalized_frequencies(model);
  const double w_mean = std::cbrt(w_xy * w_xy * w_z);
  return model.hbar * w_mean / model.boltzmann_k *
         std::cbrt(static_cast<double>(model.n_particles) / kZeta3);
}

double momentum_scale(const TrapModel& model) {
  const auto [w_xy, w_z] = renormalized_frequencies(model);
  const double w_mean = std::cbrt(w_xy * w_xy * w_z);
  return std::sqrt(model.hbar * model.mass * w_mean);
}

}  // namespace bosetrap
