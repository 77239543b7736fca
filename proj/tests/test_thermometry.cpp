// Copyright (c) 2026 bosetrap developers
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "bosetrap/distributions.hpp"
#include "bosetrap/thermometry.hpp"

using namespace bosetrap;

namespace {

/// Per-particle synthetic target of the given family at temperature t.
TargetFunction make_target(const TrapModel& model, double t, Family family) {
  const ThermalPoint thermal = ThermalPoint::from_temperature(t, model);
  DistributionSpec spec;
  spec.family = family;
  spec.normalization = Normalization::kPerParticle;
  auto eval = std::make_shared<DistributionEvaluator>(model, thermal, spec);
  return [eval](double p_rho, double p_z) { return (*eval)(p_rho, p_z); };
}

}  // namespace

TEST_CASE("configuration invariants are enforced") {
  FitConfig config;
  CHECK_NOTHROW(config.validate());

  FitConfig bad = config;
  bad.p_c = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = config;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = config;
  bad.rel_tol = 0.1;  // above the 1e-2 ceiling
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = config;
  bad.bracket_lo = 2.0;
  bad.bracket_hi = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = config;
  bad.quadrature.nodes = 4;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = config;
  bad.quadrature.p_max = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("objectives vanish when trial and target coincide") {
  TrapModel model;
  model.n_particles = 50;
  const double t_star = 1.3 * condensation_temperature(model);
  QuadratureSpec quadrature;
  quadrature.nodes = 64;

  SUBCASE("maxwell tail") {
    const TargetFunction target = make_target(model, t_star, Family::kMaxwell);
    const double p_c = 5.0 * momentum_scale(model);
    double error = 0.0;
    const double at_truth =
        mb_tail_objective(t_star, target, model, p_c, quadrature, &error);
    CHECK(at_truth < 1e-20);
    CHECK(error < 1e-20);
    CHECK(mb_tail_objective(1.3 * t_star, target, model, p_c, quadrature) > at_truth);
    CHECK(mb_tail_objective(0.7 * t_star, target, model, p_c, quadrature) > at_truth);
  }

  SUBCASE("bose-einstein") {
    const TargetFunction target = make_target(model, t_star, Family::kBoseIdeal);
    const double at_truth = be_objective(t_star, target, model, quadrature);
    CHECK(at_truth < 1e-20);
    CHECK(be_objective(1.3 * t_star, target, model, quadrature) > at_truth);
  }
}

TEST_CASE("objective argument guards") {
  TrapModel model;
  const TargetFunction zero = [](double, double) { return 0.0; };
  QuadratureSpec quadrature;
  CHECK_THROWS_AS(mb_tail_objective(0.0, zero, model, 1.0, quadrature),
                  std::invalid_argument);
  quadrature.p_max = 2.0;
  CHECK_THROWS_AS(mb_tail_objective(1.0, zero, model, 2.5, quadrature),
                  std::invalid_argument);  // threshold beyond truncation
}

TEST_CASE("maxwell self-fit recovers the generating temperature") {
  TrapModel model;
  model.n_particles = 100;
  const double t_star = 1.2 * condensation_temperature(model);
  const TargetFunction target = make_target(model, t_star, Family::kMaxwell);

  FitConfig config;  // maxwell tail, p_c = 5
  config.quadrature.nodes = 64;
  const FitResult result = fit_temperature(target, model, config);
  CHECK(result.fitted_temperature == doctest::Approx(t_star).epsilon(1e-6));
  CHECK(result.amplitude_scale == 1.0);
  CHECK(result.evaluations > 64);  // coarse scan plus refinement
  CHECK(result.bracket_used.first < t_star);
  CHECK(result.bracket_used.second > t_star);
  CHECK(result.procedure == FitProcedure::kMaxwellTail);
}

TEST_CASE("bose-einstein fit recovers the generating temperature") {
  TrapModel model;
  model.n_particles = 100;
  const double t_star = 1.2 * condensation_temperature(model);
  const TargetFunction target = make_target(model, t_star, Family::kBoseIdeal);

  FitConfig config;
  config.procedure = FitProcedure::kBoseEinstein;
  config.quadrature.nodes = 64;
  const FitResult result = fit_temperature(target, model, config);
  CHECK(result.fitted_temperature == doctest::Approx(t_star).epsilon(1e-4));
  CHECK(result.objective_value < 1e-12);
}

TEST_CASE("free amplitude makes the fit invariant under target rescaling") {
  TrapModel model;
  model.n_particles = 100;
  const double t_star = 1.1 * condensation_temperature(model);
  const TargetFunction base = make_target(model, t_star, Family::kMaxwell);
  const TargetFunction scaled = [base](double p_rho, double p_z) {
    return 3.7 * base(p_rho, p_z);
  };

  FitConfig config;
  config.amplitude = AmplitudeMode::kFreeScale;
  config.quadrature.nodes = 64;
  const FitResult result = fit_temperature(scaled, model, config);
  CHECK(result.fitted_temperature == doctest::Approx(t_star).epsilon(1e-6));
  // The recovered scale inherits the temperature tolerance through the
  // amplitude's dependence on the fitted temperature.
  CHECK(result.amplitude_scale == doctest::Approx(3.7).epsilon(1e-6));
}

TEST_CASE("minimum on a bracket edge is reported, not returned") {
  TrapModel model;
  model.n_particles = 100;
  const double t_star = 10.0 * condensation_temperature(model);
  const TargetFunction target = make_target(model, t_star, Family::kMaxwell);

  FitConfig config;
  config.bracket_lo = 0.05 * condensation_temperature(model);
  config.bracket_hi = 1.0 * condensation_temperature(model);  // excludes t_star
  config.quadrature.nodes = 32;
  CHECK_THROWS_AS(fit_temperature(target, model, config), std::runtime_error);
}

TEST_CASE("bias sweep flags failures and orders rows N-major") {
  TrapModel model;
  const std::array<int, 2> n_list{20, 50};
  const std::array<double, 2> t_grid{0.5, 2.0};

  FitConfig config;
  config.quadrature.nodes = 48;
  const std::vector<BiasRow> rows =
      bias_sweep(model, std::span(n_list), std::span(t_grid), config);
  REQUIRE(rows.size() == 4);

  CHECK(rows[0].n_particles == 20);
  CHECK(rows[0].t_be_over_t0 == 0.5);
  CHECK(rows[1].n_particles == 20);
  CHECK(rows[1].t_be_over_t0 == 2.0);
  CHECK(rows[2].n_particles == 50);
  CHECK(rows[3].n_particles == 50);

  for (const BiasRow& row : rows) {
    REQUIRE(row.ok);
    CHECK(row.note.empty());
    TrapModel scaled = model;
    scaled.n_particles = row.n_particles;
    CHECK(row.t_be ==
          doctest::Approx(row.t_be_over_t0 * condensation_temperature(scaled))
              .epsilon(1e-15));
    CHECK(std::isfinite(row.rel_diff));
    CHECK(row.rel_diff == doctest::Approx((row.t_be - row.t_mb) / row.t_be).epsilon(1e-12));
  }

  // Deep in the degenerate regime the tail fit reads low; far above the
  // condensation scale the bias is small.
  CHECK(rows[0].rel_diff > 0.0);
  CHECK(std::abs(rows[1].rel_diff) < 0.05);

  CHECK_THROWS_AS(bias_sweep(model, std::span<const int>(), std::span(t_grid), config),
                  std::invalid_argument);
}
