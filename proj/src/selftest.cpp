// Copyright (c) 2026 bosetrap developers
// SPDX-License-Identifier: Apache-2.0

#include "bosetrap/selftest.hpp"

#include <algorithm>
#include <cmath>

#include "bosetrap/distributions.hpp"
#include "bosetrap/model.hpp"
#include "bosetrap/partition.hpp"
#include "bosetrap/thermometry.hpp"

namespace bosetrap {

namespace {

class Battery {
 public:
  explicit Battery(const SelfTestReporter& reporter) : reporter_(reporter) {}

  void check(const std::string& name, double measured, double tolerance,
             const std::string& detail) {
    SelfTestCheck result;
    result.name = name;
    result.measured = measured;
    result.tolerance = tolerance;
    result.detail = detail;
    result.passed = std::isfinite(measured) && measured <= tolerance;
    if (!result.passed) ++failures_;
    if (reporter_) reporter_(result);
  }

  int failures() const { return failures_; }

 private:
  const SelfTestReporter& reporter_;
  int failures_ = 0;
};

TrapModel isotropic_model(int n) {
  TrapModel model;
  model.n_particles = n;
  return model;  // hbar = m = k_B = omega = 1
}

void partition_recursion_check(Battery& battery) {
  double worst = 0.0;
  for (int n = 2; n <= 5; ++n) {
    for (double beta : {0.5, 1.0, 2.0}) {
      for (double freq : {0.7, 1.0, 1.6}) {
        const PartitionTable table = build_partition_table(
            n, beta, 1.0, freq, freq, SinhVariant::kRenormalized);
        const double recursion = std::exp(table.log_z[n]);
        const double enumeration = brute_force_partition(n, beta, 1.0, freq, freq);
        worst = std::max(worst, std::abs(recursion - enumeration) / enumeration);
      }
    }
  }
  battery.check("partition-recursion-vs-enumeration", worst, 1e-12,
                "max relative gap over N<=5 and a 3x3 (beta, frequency) grid");
}

void normalization_checks(Battery& battery) {
  const TrapModel model = isotropic_model(100);
  const ThermalPoint thermal =
      ThermalPoint::from_temperature(condensation_temperature(model), model);

  DistributionSpec spec;
  spec.family = Family::kBoseIdeal;
  const NormalizationResult ideal =
      normalization_integral(DistributionEvaluator(model, thermal, spec));
  battery.check("ideal-normalization", std::abs(ideal.value - 100.0) / 100.0, 1e-4,
                "integral of the 100-particle ideal distribution vs 100");

  spec.family = Family::kMaxwell;
  spec.normalization = Normalization::kPerParticle;
  const NormalizationResult maxwell =
      normalization_integral(DistributionEvaluator(model, thermal, spec));
  battery.check("maxwell-normalization", std::abs(maxwell.value - 1.0), 1e-8,
                "unit integral of the Maxwell form");

  spec.family = Family::kDistinguishable;
  const NormalizationResult dist =
      normalization_integral(DistributionEvaluator(model, thermal, spec));
  battery.check("distinguishable-normalization", std::abs(dist.value - 1.0), 1e-8,
                "unit integral of the distinguishable form");
}

void collapse_and_symmetry_checks(Battery& battery) {
  const TrapModel model = isotropic_model(64);
  const ThermalPoint thermal = ThermalPoint::from_temperature(2.5, model);
  const PartitionTable table =
      build_partition_table(model, thermal, SinhVariant::kRenormalized);

  double worst_gap = 0.0;
  double worst_asym = 0.0;
  for (double p_rho : {0.0, 0.5, 1.3}) {
    for (double p_z : {0.0, 0.4, 2.1}) {
      const MomentumPoint point{p_rho, p_z};
      const double ideal = eval_bose_ideal(point, model, thermal, table);
      for (SinhVariant variant : {SinhVariant::kRenormalized, SinhVariant::kConfinement}) {
        DistributionSpec spec;
        spec.family = Family::kBoseExact;
        spec.sinh_variant = variant;
        const double exact = eval_bose_exact(point, model, thermal, table, spec);
        worst_gap = std::max(worst_gap, std::abs(exact - ideal));
      }
      const MomentumPoint mirrored{p_rho, -p_z};
      worst_asym = std::max(
          worst_asym, std::abs(eval_bose_ideal(mirrored, model, thermal, table) - ideal));
    }
  }
  battery.check("interacting-to-ideal-collapse", worst_gap, 0.0,
                "zero-coupling cycle sum must match the ideal form bit for bit");
  battery.check("z-reflection-symmetry", worst_asym, 0.0,
                "values must be even in p_z");
}

void fit_recovery_checks(Battery& battery) {
  const TrapModel model = isotropic_model(100);
  const double t_star = 1.2 * condensation_temperature(model);
  const ThermalPoint thermal = ThermalPoint::from_temperature(t_star, model);

  FitConfig config;
  config.rel_tol = 1e-6;
  config.quadrature.nodes = 64;

  config.procedure = FitProcedure::kMaxwellTail;
  const FitResult tail = fit_temperature(
      [&](double p_rho, double p_z) {
        return eval_maxwell({p_rho, p_z}, model.mass, thermal);
      },
      model, config);
  battery.check("tail-fit-recovery",
                std::abs(tail.fitted_temperature - t_star) / t_star, 1e-4,
                "Maxwell tail fit must recover the generating temperature");

  DistributionSpec spec;
  spec.family = Family::kBoseIdeal;
  spec.normalization = Normalization::kPerParticle;
  const DistributionEvaluator synthetic(model, thermal, spec);
  config.procedure = FitProcedure::kBoseEinstein;
  const FitResult bose = fit_temperature(
      [&](double p_rho, double p_z) { return synthetic(p_rho, p_z); }, model, config);
  battery.check("bose-fit-recovery",
                std::abs(bose.fitted_temperature - t_star) / t_star, 1e-4,
                "ideal-boson fit must recover the generating temperature");
}

void extreme_parameter_check(Battery& battery) {
  double worst = 0.0;  // stays 0 while everything is finite
  for (double beta : {1e-3, 1.0, 1e4}) {
    const TrapModel model = isotropic_model(2000);
    const ThermalPoint thermal =
        ThermalPoint::from_temperature(1.0 / (model.boltzmann_k * beta), model);
    DistributionSpec spec;
    spec.family = Family::kBoseIdeal;
    const DistributionEvaluator eval(model, thermal, spec);
    for (double p : {0.0, 1.0, 50.0}) {
      const double value = eval(p, 0.5 * p);
      if (!std::isfinite(value) || value < 0.0) worst = 1.0;
    }
  }
  battery.check("extreme-beta-finiteness", worst, 0.0,
                "2000-particle evaluations stay finite for beta in [1e-3, 1e4]");
}

}  // namespace

int run_selftest(const SelfTestReporter& reporter) {
  Battery battery(reporter);
  partition_recursion_check(battery);
  normalization_checks(battery);
  collapse_and_symmetry_checks(battery);
  fit_recovery_checks(battery);
  extreme_parameter_check(battery);
  return battery.failures();
}

}  // namespace bosetrap
