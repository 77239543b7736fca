// Copyright (c) 2026 bosetrap developers
// SPDX-License-Identifier: Apache-2.0

#include "bosetrap/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "bosetrap/numerics.hpp"

namespace bosetrap {

namespace {

constexpr double kPi = std::numbers::pi;

/// Frequencies entering the per-cycle sinh weights for the requested
/// reading: the internal frequencies w, or the bare confinement
/// frequencies Omega.  The partition ratios always come from the
/// caller's table, so the two readings differ only here.
std::pair<double, double> sinh_frequencies(const TrapModel& model, SinhVariant variant) {
  if (variant == SinhVariant::kRenormalized) return renormalized_frequencies(model);
  return {model.omega_xy, model.omega_z};
}

/// A table is acceptable only if it was built for this (model,
/// thermal) pair: same particle number, same beta and hbar, and
/// frequencies equal to the pair its own variant tag implies.
void check_table(const TrapModel& model, const ThermalPoint& thermal,
                 const PartitionTable& table) {
  if (table.n_max() != model.n_particles)
    throw std::invalid_argument("partition table holds " + std::to_string(table.n_max()) +
                                " particles, model has " +
                                std::to_string(model.n_particles));
  if (table.beta != thermal.beta)
    throw std::invalid_argument("partition table was built for a different temperature");
  if (table.hbar != model.hbar)
    throw std::invalid_argument("partition table was built for a different hbar");
  const auto [freq_xy, freq_z] = sinh_frequencies(model, table.variant);
  if (table.freq_xy != freq_xy || table.freq_z != freq_z)
    throw std::invalid_argument("partition table was built for different frequencies");
}

}  // namespace

double a_coefficient(int ell, double omega_conf, double omega_ren, double beta,
                     double hbar, int n_particles) {
  if (ell < 1) throw std::invalid_argument("a_coefficient: ell must be >= 1");
  if (!(beta > 0.0 && hbar > 0.0))
    throw std::invalid_argument("a_coefficient: beta and hbar must be positive");
  if (!(omega_conf > 0.0 && omega_ren > 0.0))
    throw std::invalid_argument("a_coefficient: frequencies must be positive");
  if (n_particles < 1)
    throw std::invalid_argument("a_coefficient: particle number must be >= 1");
  const double half_beta = 0.5 * beta * hbar;
  const double leading = omega_ren / std::tanh(half_beta * omega_ren * ell);
  // The bracket is identically zero for omega_ren == omega_conf: both
  // operands are then the same expression and cancel exactly.
  const double bracket = omega_conf / std::tanh(half_beta * omega_conf) -
                         omega_ren / std::tanh(half_beta * omega_ren);
  return leading + bracket / n_particles;
}

DistributionEvaluator::DistributionEvaluator(const TrapModel& model,
                                             const ThermalPoint& thermal,
                                             const DistributionSpec& spec)
    : DistributionEvaluator(model, thermal, spec, nullptr) {}

DistributionEvaluator::DistributionEvaluator(const TrapModel& model,
                                             const ThermalPoint& thermal,
                                             const DistributionSpec& spec,
                                             const PartitionTable* table)
    : model_(model), thermal_(thermal), spec_(spec) {
  model_.validate();
  if (!(thermal_.beta > 0.0))
    throw std::invalid_argument("DistributionEvaluator: beta must be positive");

  const double beta = thermal_.beta;
  const double hbar = model_.hbar;
  const double mass = model_.mass;
  const int n = model_.n_particles;

  if (spec_.family == Family::kMaxwell || spec_.family == Family::kDistinguishable) {
    scale_ = spec_.normalization == Normalization::kTotalN ? static_cast<double>(n) : 1.0;
    scaled_weight_.assign(1, 1.0);
    if (spec_.family == Family::kMaxwell) {
      const double inv_width = 0.5 * beta / mass;
      inv_a_xy_.assign(1, inv_width);
      inv_a_z_.assign(1, inv_width);
      prefactor_ = scale_ * std::pow(beta / (2.0 * kPi * mass), 1.5);
    } else {
      const double tanh_xy = std::tanh(0.5 * beta * hbar * model_.omega_xy);
      const double tanh_z = std::tanh(0.5 * beta * hbar * model_.omega_z);
      const double hm = hbar * mass;
      inv_a_xy_.assign(1, tanh_xy / (hm * model_.omega_xy));
      inv_a_z_.assign(1, tanh_z / (hm * model_.omega_z));
      prefactor_ = scale_ * std::sqrt(tanh_xy * tanh_xy * tanh_z /
                                      (kPi * kPi * kPi * hm * hm * hm *
                                       model_.omega_xy * model_.omega_xy * model_.omega_z));
    }
    return;
  }

  if (spec_.family == Family::kBoseIdeal && model_.inter_omega != 0.0)
    throw std::invalid_argument(
        "DistributionEvaluator: the ideal-bose family requires inter_omega == 0");

  // The partition ratios always use the physical cycle weights (internal
  // frequencies); the sinh variant switches only the per-cycle weight
  // factors of the distribution formula below.
  PartitionTable own;
  if (table == nullptr) {
    own = build_partition_table(model_, thermal_, SinhVariant::kRenormalized);
    table = &own;
  } else {
    check_table(model_, thermal_, *table);
  }

  const auto [w_xy, w_z] = renormalized_frequencies(model_);
  const auto [nu_xy, nu_z] = spec_.family == Family::kBoseIdeal
                                 ? std::pair(model_.omega_xy, model_.omega_z)
                                 : sinh_frequencies(model_, spec_.sinh_variant);

  scale_ = spec_.normalization == Normalization::kPerParticle ? 1.0 / n : 1.0;
  scaled_weight_.resize(n);
  inv_a_xy_.resize(n);
  inv_a_z_.resize(n);
  std::vector<double> base_log(n);
  for (int ell = 1; ell <= n; ++ell) {
    const double a_xy = a_coefficient(ell, model_.omega_xy, w_xy, beta, hbar, n);
    const double a_z = a_coefficient(ell, model_.omega_z, w_z, beta, hbar, n);
    const double half_ell = 0.5 * ell * beta * hbar;
    base_log[ell - 1] = log_partition_ratio(*table, ell) -
                        2.0 * log_sinh(half_ell * nu_xy) - log_sinh(half_ell * nu_z) -
                        std::log(a_xy) - 0.5 * std::log(a_z);
    inv_a_xy_[ell - 1] = 1.0 / (hbar * mass * a_xy);
    inv_a_z_[ell - 1] = 1.0 / (hbar * mass * a_z);
  }
  peak_log_ = *std::max_element(base_log.begin(), base_log.end());
  for (int i = 0; i < n; ++i) scaled_weight_[i] = std::exp(base_log[i] - peak_log_);
  prefactor_ =
      std::exp(peak_log_ + std::log(scale_) - 1.5 * std::log(4.0 * kPi * hbar * mass));
}

double DistributionEvaluator::operator()(double p_rho, double p_z) const {
  const double rho2 = p_rho * p_rho;
  const double z2 = p_z * p_z;
  double sum = 0.0;
  for (std::size_t i = 0; i < scaled_weight_.size(); ++i)
    sum += scaled_weight_[i] * std::exp(-rho2 * inv_a_xy_[i] - z2 * inv_a_z_[i]);
  return prefactor_ * sum;
}

double eval_bose_exact(const MomentumPoint& point, const TrapModel& model,
                       const ThermalPoint& thermal, const PartitionTable& table,
                       const DistributionSpec& spec) {
  DistributionSpec forced = spec;
  forced.family = Family::kBoseExact;
  return DistributionEvaluator(model, thermal, forced, &table)(point);
}

double eval_bose_ideal(const MomentumPoint& point, const TrapModel& model,
                       const ThermalPoint& thermal, const PartitionTable& table) {
  DistributionSpec spec;
  spec.family = Family::kBoseIdeal;
  spec.normalization = Normalization::kTotalN;
  return DistributionEvaluator(model, thermal, spec, &table)(point);
}

double eval_distinguishable(const MomentumPoint& point, const TrapModel& model,
                            const ThermalPoint& thermal) {
  DistributionSpec spec;
  spec.family = Family::kDistinguishable;
  spec.normalization = Normalization::kPerParticle;
  return DistributionEvaluator(model, thermal, spec)(point);
}

double eval_maxwell(const MomentumPoint& point, double mass, const ThermalPoint& thermal) {
  if (!(mass > 0.0)) throw std::invalid_argument("eval_maxwell: mass must be positive");
  if (!(thermal.beta > 0.0))
    throw std::invalid_argument("eval_maxwell: beta must be positive");
  const double p2 = point.p_rho * point.p_rho + point.p_z * point.p_z;
  return std::pow(thermal.beta / (2.0 * kPi * mass), 1.5) *
         std::exp(-0.5 * thermal.beta * p2 / mass);
}

double default_momentum_cutoff(const TrapModel& model, double temperature) {
  const double condensate = 10.0 * momentum_scale(model);
  const double thermal =
      6.0 * std::sqrt(2.0 * model.mass * model.boltzmann_k * temperature);
  return std::max(condensate, thermal);
}

NormalizationResult normalization_integral(const DistributionEvaluator& eval, int nodes) {
  if (nodes < 8)
    throw std::invalid_argument("normalization_integral: need at least 8 nodes");
  const double p_max =
      default_momentum_cutoff(eval.model(), eval.thermal().temperature);

  // 2 pi * int p_rho dp_rho int dp_z, z half-plane doubled by symmetry.
  const auto run = [&](int n) {
    const QuadratureRule radial = gauss_legendre(n, 0.0, p_max);
    const QuadratureRule axial = gauss_legendre(n, 0.0, p_max);
    std::vector<double> row(n, 0.0);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += axial.weights[j] * eval(radial.nodes[i], axial.nodes[j]);
      row[i] = radial.weights[i] * radial.nodes[i] * acc;
    });
    return 4.0 * kPi * std::accumulate(row.begin(), row.end(), 0.0);
  };

  const double value = run(nodes);
  const double coarse = run(std::max(8, nodes / 2));
  return {value, std::abs(value - coarse)};
}

}  // namespace bosetrap
