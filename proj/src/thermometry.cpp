// Copyright (c) 2026 bosetrap developers
// SPDX-License-Identifier: Apache-2.0

#include "bosetrap/thermometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bosetrap/numerics.hpp"

namespace bosetrap {

namespace {

constexpr double kPi = std::numbers::pi;

/// Flattened spherical-shell quadrature grid over p in [p_lo, p_max]:
/// radial Gauss-Legendre times polar Gauss-Legendre on [0, pi/2]
/// (z symmetry doubled), azimuth integrated analytically.  weight
/// already contains the full d^3p measure factor.
struct ShellGrid {
  std::vector<double> p_rho;
  std::vector<double> p_z;
  std::vector<double> weight;

  std::size_t size() const { return weight.size(); }
};

ShellGrid make_shell_grid(double p_lo, double p_max, int nodes) {
  const QuadratureRule radial = gauss_legendre(nodes, p_lo, p_max);
  const QuadratureRule polar = gauss_legendre(nodes, 0.0, 0.5 * kPi);
  ShellGrid grid;
  const std::size_t total = static_cast<std::size_t>(nodes) * nodes;
  grid.p_rho.resize(total);
  grid.p_z.resize(total);
  grid.weight.resize(total);
  std::size_t k = 0;
  for (int i = 0; i < nodes; ++i) {
    const double r = radial.nodes[i];
    const double wr = radial.weights[i] * r * r;
    for (int j = 0; j < nodes; ++j, ++k) {
      const double theta = polar.nodes[j];
      grid.p_rho[k] = r * std::sin(theta);
      grid.p_z[k] = r * std::cos(theta);
      grid.weight[k] = 4.0 * kPi * wr * polar.weights[j] * std::sin(theta);
    }
  }
  return grid;
}

std::vector<double> sample_on_grid(const TargetFunction& f, const ShellGrid& grid) {
  std::vector<double> values(grid.size());
  parallel_for(grid.size(),
               [&](std::size_t i) { values[i] = f(grid.p_rho[i], grid.p_z[i]); });
  return values;
}

/// Integrated squared mismatch between trial and target samples; under
/// kFreeScale the optimal multiplicative prefactor is eliminated
/// analytically and reported through amplitude_out.
double weighted_mismatch(const ShellGrid& grid, const std::vector<double>& trial,
                         const std::vector<double>& target, AmplitudeMode amplitude,
                         double* amplitude_out) {
  if (amplitude_out != nullptr) *amplitude_out = 1.0;
  if (amplitude == AmplitudeMode::kPerParticle) {
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double d = trial[i] - target[i];
      acc += grid.weight[i] * d * d;
    }
    return acc;
  }
  double s_ff = 0.0, s_fg = 0.0, s_gg = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = grid.weight[i];
    s_ff += w * trial[i] * trial[i];
    s_fg += w * trial[i] * target[i];
    s_gg += w * target[i] * target[i];
  }
  if (!(s_ff > 0.0)) return s_gg;  // trial vanished on the shell; scale moot
  if (amplitude_out != nullptr) *amplitude_out = s_fg / s_ff;
  return std::max(0.0, s_gg - s_fg * s_fg / s_ff);
}

/// Per-particle trial family at the given temperature, evaluated on the
/// grid.  kMaxwellTail fits the Maxwell form, kBoseEinstein the ideal
/// Bose form (which rebuilds its partition table at every call).
std::vector<double> trial_on_grid(FitProcedure procedure, double t_trial,
                                  const TrapModel& model, const ShellGrid& grid) {
  const ThermalPoint thermal = ThermalPoint::from_temperature(t_trial, model);
  DistributionSpec spec;
  spec.family =
      procedure == FitProcedure::kMaxwellTail ? Family::kMaxwell : Family::kBoseIdeal;
  spec.normalization = Normalization::kPerParticle;
  const DistributionEvaluator eval(model, thermal, spec);
  std::vector<double> values(grid.size());
  parallel_for(grid.size(),
               [&](std::size_t i) { values[i] = eval(grid.p_rho[i], grid.p_z[i]); });
  return values;
}

double resolve_p_max(const QuadratureSpec& quadrature, const TrapModel& model,
                     double t_hi) {
  if (quadrature.p_max > 0.0) return quadrature.p_max;
  return default_momentum_cutoff(model, t_hi);
}

double one_shot_objective(FitProcedure procedure, double t_trial,
                          const TargetFunction& target, const TrapModel& model,
                          double p_lo, const QuadratureSpec& quadrature,
                          double* error_estimate) {
  if (!(t_trial > 0.0))
    throw std::invalid_argument("objective: trial temperature must be positive");
  quadrature.validate();
  model.validate();
  const double p_max = resolve_p_max(quadrature, model, t_trial);
  if (!(p_lo >= 0.0) || p_lo >= p_max)
    throw std::invalid_argument(
        "objective: threshold momentum must lie in [0, p_max)");

  const auto run = [&](int nodes) {
    const ShellGrid grid = make_shell_grid(p_lo, p_max, nodes);
    const std::vector<double> target_values = sample_on_grid(target, grid);
    const std::vector<double> trial = trial_on_grid(procedure, t_trial, model, grid);
    return weighted_mismatch(grid, trial, target_values, AmplitudeMode::kPerParticle,
                             nullptr);
  };
  const double value = run(quadrature.nodes);
  if (error_estimate != nullptr)
    *error_estimate = std::abs(value - run(std::max(8, quadrature.nodes / 2)));
  return value;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (nodes < 8 || nodes > 4096)
    throw std::invalid_argument("QuadratureSpec: nodes must be in [8, 4096]");
  if (!(p_max >= 0.0) || !std::isfinite(p_max))
    throw std::invalid_argument("QuadratureSpec: p_max must be finite and >= 0");
}

void FitConfig::validate() const {
  if (!(p_c >= 0.0))
    throw std::invalid_argument("FitConfig: threshold momentum p_c must be >= 0");
  if (!(rel_tol > 0.0) || rel_tol > 1e-2)
    throw std::invalid_argument("FitConfig: rel_tol must lie in (0, 1e-2]");
  if (bracket_lo < 0.0 || bracket_hi < 0.0)
    throw std::invalid_argument("FitConfig: bracket temperatures must be >= 0");
  if (bracket_lo > 0.0 && bracket_hi > 0.0 && !(bracket_lo < bracket_hi))
    throw std::invalid_argument("FitConfig: bracket_lo must be below bracket_hi");
  quadrature.validate();
}

double mb_tail_objective(double t_trial, const TargetFunction& target,
                         const TrapModel& model, double p_c,
                         const QuadratureSpec& quadrature, double* error_estimate) {
  return one_shot_objective(FitProcedure::kMaxwellTail, t_trial, target, model, p_c,
                            quadrature, error_estimate);
}

double be_objective(double t_trial, const TargetFunction& target, const TrapModel& model,
                    const QuadratureSpec& quadrature, double* error_estimate) {
  return one_shot_objective(FitProcedure::kBoseEinstein, t_trial, target, model, 0.0,
                            quadrature, error_estimate);
}

FitResult fit_temperature(const TargetFunction& target, const TrapModel& model,
                          const FitConfig& config) {
  config.validate();
  model.validate();
  const double t_condensation = condensation_temperature(model);
  const double t_lo = config.bracket_lo > 0.0 ? config.bracket_lo : 0.05 * t_condensation;
  const double t_hi = config.bracket_hi > 0.0 ? config.bracket_hi : 5.0 * t_condensation;
  if (!(t_lo < t_hi))
    throw std::invalid_argument("fit_temperature: bracket_lo must be below bracket_hi");

  const double p_max = resolve_p_max(config.quadrature, model, t_hi);
  const double p_lo = config.procedure == FitProcedure::kMaxwellTail
                          ? config.p_c * momentum_scale(model)
                          : 0.0;
  if (p_lo >= p_max)
    throw std::invalid_argument(
        "fit_temperature: threshold momentum reaches the quadrature truncation "
        "radius; lower p_c or raise the node budget");

  const ShellGrid grid = make_shell_grid(p_lo, p_max, config.quadrature.nodes);
  const std::vector<double> target_values = sample_on_grid(target, grid);

  int evaluations = 0;
  const auto objective = [&](double t, double* amplitude_out) {
    ++evaluations;
    const std::vector<double> trial = trial_on_grid(config.procedure, t, model, grid);
    return weighted_mismatch(grid, trial, target_values, config.amplitude,
                             amplitude_out);
  };

  // Coarse 64-point log-spaced scan to localize the minimum.
  constexpr int kScanPoints = 64;
  const double log_ratio = std::log(t_hi / t_lo);
  std::vector<double> scan_t(kScanPoints);
  int best = -1;
  double best_value = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kScanPoints; ++k) {
    scan_t[k] = t_lo * std::exp(log_ratio * k / (kScanPoints - 1));
    const double value = objective(scan_t[k], nullptr);
    if (value < best_value) {
      best_value = value;
      best = k;
    }
  }
  if (best <= 0)
    throw std::runtime_error(
        "fit_temperature: objective minimum at the lower bracket edge (T = " +
        std::to_string(t_lo) + "); widen the bracket");
  if (best >= kScanPoints - 1)
    throw std::runtime_error(
        "fit_temperature: objective minimum at the upper bracket edge (T = " +
        std::to_string(t_hi) + "); widen the bracket");

  // Golden-section refinement inside the relocated bracket.
  constexpr double kInvPhi = 0.6180339887498948482;
  double a = scan_t[best - 1];
  double b = scan_t[best + 1];
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = objective(x1, nullptr);
  double f2 = objective(x2, nullptr);
  for (int iter = 0; iter < 200 && (b - a) > config.rel_tol * 0.5 * (a + b); ++iter) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = objective(x1, nullptr);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = objective(x2, nullptr);
    }
  }

  FitResult result;
  result.procedure = config.procedure;
  result.bracket_used = {t_lo, t_hi};
  result.fitted_temperature = f1 < f2 ? x1 : x2;
  result.objective_value = objective(result.fitted_temperature, &result.amplitude_scale);

  // Two-refinement quadrature estimate at the solution.
  const int half_nodes = std::max(8, config.quadrature.nodes / 2);
  const ShellGrid half_grid = make_shell_grid(p_lo, p_max, half_nodes);
  const std::vector<double> half_target = sample_on_grid(target, half_grid);
  const std::vector<double> half_trial =
      trial_on_grid(config.procedure, result.fitted_temperature, model, half_grid);
  const double half_value =
      weighted_mismatch(half_grid, half_trial, half_target, config.amplitude, nullptr);
  result.objective_error_estimate = std::abs(result.objective_value - half_value);
  result.evaluations = evaluations;
  return result;
}

std::vector<BiasRow> bias_sweep(const TrapModel& base_model, std::span<const int> n_list,
                                std::span<const double> t_over_t0_grid,
                                const FitConfig& config) {
  config.validate();
  if (n_list.empty() || t_over_t0_grid.empty())
    throw std::invalid_argument("bias_sweep: empty particle or temperature grid");
  for (double t : t_over_t0_grid)
    if (!(t > 0.0))
      throw std::invalid_argument("bias_sweep: temperatures must be positive");

  std::vector<BiasRow> rows(n_list.size() * t_over_t0_grid.size());
  parallel_for(rows.size(), [&](std::size_t idx) {
    const std::size_t i_n = idx / t_over_t0_grid.size();
    const std::size_t i_t = idx % t_over_t0_grid.size();
    BiasRow& row = rows[idx];
    row.n_particles = n_list[i_n];
    row.t_be_over_t0 = t_over_t0_grid[i_t];
    try {
      TrapModel model = base_model;
      model.n_particles = n_list[i_n];
      model.validate();
      row.t_be = row.t_be_over_t0 * condensation_temperature(model);
      const ThermalPoint thermal = ThermalPoint::from_temperature(row.t_be, model);
      DistributionSpec spec;
      spec.family = Family::kBoseIdeal;
      spec.normalization = Normalization::kPerParticle;
      const DistributionEvaluator synthetic(model, thermal, spec);

      FitConfig fit_config = config;
      fit_config.procedure = FitProcedure::kMaxwellTail;
      const FitResult fit = fit_temperature(
          [&synthetic](double p_rho, double p_z) { return synthetic(p_rho, p_z); },
          model, fit_config);
      row.t_mb = fit.fitted_temperature;
      row.rel_diff = (row.t_be - row.t_mb) / row.t_be;
      row.ok = true;
    } catch (const std::exception& error) {
      row.ok = false;
      row.note = error.what();
    }
  });
  return rows;
}

}  // namespace bosetrap
