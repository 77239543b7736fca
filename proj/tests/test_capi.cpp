// Copyright (c) 2026 bosetrap developers
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

#include "bosetrap.h"
#include "bosetrap/distributions.hpp"
#include "bosetrap/model.hpp"

namespace {

/// RAII wrapper keeping the C-API tests leak-free.
struct Model {
  bt_model* handle = nullptr;
  ~Model() { bt_model_free(handle); }
};

bt_model_params default_params() {
  bt_model_params params;
  bt_model_params_init(&params);
  return params;
}

double maxwell_target(double p_rho, double p_z, void* user_data) {
  const double beta = *static_cast<const double*>(user_data);
  const double p2 = p_rho * p_rho + p_z * p_z;
  return std::pow(beta / (2.0 * std::numbers::pi), 1.5) * std::exp(-0.5 * beta * p2);
}

}  // namespace

TEST_CASE("version and error strings are always available") {
  CHECK(bt_version() != nullptr);
  CHECK(bt_last_error() != nullptr);
}

TEST_CASE("null and invalid arguments are rejected with messages") {
  CHECK(bt_model_create(nullptr, nullptr) == BT_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(bt_last_error()) > 0);

  bt_model_params params = default_params();
  params.n_particles = 0;
  Model model;
  CHECK(bt_model_create(&params, &model.handle) == BT_ERR_INVALID_ARGUMENT);
  CHECK(model.handle == nullptr);

  params = default_params();
  params.n_particles = 100;
  params.inter_omega = 0.2;  // N omega^2 = 4 > Omega^2: trap collapses
  CHECK(bt_model_create(&params, &model.handle) == BT_ERR_DOMAIN);
  CHECK(std::string(bt_last_error()).find("axis") != std::string::npos);
}

TEST_CASE("model accessors round-trip the frozen frequency values") {
  bt_model_params params = default_params();
  params.n_particles = 4;
  params.omega_z = 1.3;
  params.inter_omega = 0.1;
  Model model;
  REQUIRE(bt_model_create(&params, &model.handle) == BT_OK);

  double w_xy = 0.0, w_z = 0.0;
  REQUIRE(bt_model_frequencies(model.handle, &w_xy, &w_z) == BT_OK);
  CHECK(w_xy == doctest::Approx(0.9797958971132712).epsilon(1e-15));
  CHECK(w_z == doctest::Approx(1.2845232578665129).epsilon(1e-15));

  bosetrap::TrapModel reference;
  reference.n_particles = 4;
  reference.omega_z = 1.3;
  reference.inter_omega = 0.1;
  double t0 = 0.0, scale = 0.0, cutoff = 0.0;
  REQUIRE(bt_model_condensation_temperature(model.handle, &t0) == BT_OK);
  CHECK(t0 == bosetrap::condensation_temperature(reference));
  REQUIRE(bt_model_momentum_scale(model.handle, &scale) == BT_OK);
  CHECK(scale == bosetrap::momentum_scale(reference));
  REQUIRE(bt_default_momentum_cutoff(model.handle, 2.0, &cutoff) == BT_OK);
  CHECK(cutoff == bosetrap::default_momentum_cutoff(reference, 2.0));
}

TEST_CASE("partition tables through the C interface") {
  bt_model_params params = default_params();
  params.n_particles = 5;
  Model model;
  REQUIRE(bt_model_create(&params, &model.handle) == BT_OK);

  bt_table* table = nullptr;
  REQUIRE(bt_table_build(model.handle, 1.0, BT_SINH_RENORMALIZED, &table) == BT_OK);
  CHECK(bt_table_size(table) == 5);
  CHECK(bt_table_size(nullptr) == -1);

  double value = -1.0;
  REQUIRE(bt_table_log_z(table, 0, &value) == BT_OK);
  CHECK(value == 0.0);
  REQUIRE(bt_table_log_ratio(table, 1, &value) == BT_OK);
  CHECK(value == doctest::Approx(1.3265419124743939).epsilon(1e-13));
  CHECK(bt_table_log_z(table, 6, &value) == BT_ERR_INVALID_ARGUMENT);
  CHECK(bt_table_log_ratio(table, 0, &value) == BT_ERR_INVALID_ARGUMENT);
  bt_table_free(table);
}

TEST_CASE("grid evaluation agrees with the native evaluator") {
  bt_model_params params = default_params();
  params.n_particles = 16;
  Model model;
  REQUIRE(bt_model_create(&params, &model.handle) == BT_OK);

  bt_dist_spec spec;
  bt_dist_spec_init(&spec);
  CHECK(spec.family == BT_FAMILY_BOSE_IDEAL);

  const std::vector<double> p_rho{0.0, 0.5, 1.0, 2.0};
  const std::vector<double> p_z{0.0, 0.3, 1.5, 0.0};
  std::vector<double> values(4, -1.0);
  REQUIRE(bt_eval_grid(model.handle, 2.0, &spec, p_rho.data(), p_z.data(), 4,
                       values.data()) == BT_OK);

  bosetrap::TrapModel reference;
  reference.n_particles = 16;
  const bosetrap::DistributionEvaluator eval(
      reference, bosetrap::ThermalPoint::from_temperature(2.0, reference), {});
  for (int i = 0; i < 4; ++i)
    CHECK(values[i] == doctest::Approx(eval(p_rho[i], p_z[i])).epsilon(1e-15));

  double single = -1.0;
  REQUIRE(bt_eval(model.handle, 2.0, &spec, 0.5, 0.3, &single) == BT_OK);
  CHECK(single == doctest::Approx(values[1]).epsilon(1e-15));
}

TEST_CASE("family constraints and frozen closed-form values") {
  bt_model_params params = default_params();
  Model model;
  REQUIRE(bt_model_create(&params, &model.handle) == BT_OK);

  bt_dist_spec spec;
  bt_dist_spec_init(&spec);
  spec.family = BT_FAMILY_MAXWELL;
  spec.normalization = BT_NORM_PER_PARTICLE;
  double value = 0.0;
  REQUIRE(bt_eval(model.handle, 1.0, &spec, 0.0, 0.0, &value) == BT_OK);
  CHECK(value == doctest::Approx(0.06349363593424097).epsilon(1e-14));

  spec.family = static_cast<bt_family>(99);
  CHECK(bt_eval(model.handle, 1.0, &spec, 0.0, 0.0, &value) ==
        BT_ERR_INVALID_ARGUMENT);

  bt_model_params interacting = default_params();
  interacting.n_particles = 4;
  interacting.inter_omega = 0.1;
  Model other;
  REQUIRE(bt_model_create(&interacting, &other.handle) == BT_OK);
  bt_dist_spec ideal;
  bt_dist_spec_init(&ideal);
  CHECK(bt_eval(other.handle, 1.0, &ideal, 0.0, 0.0, &value) ==
        BT_ERR_INVALID_ARGUMENT);
  CHECK(std::string(bt_last_error()).find("inter_omega") != std::string::npos);
}

TEST_CASE("normalization integral through the C interface") {
  bt_model_params params = default_params();
  params.n_particles = 16;
  Model model;
  REQUIRE(bt_model_create(&params, &model.handle) == BT_OK);

  bt_dist_spec spec;
  bt_dist_spec_init(&spec);
  double value = 0.0, error = -1.0;
  REQUIRE(bt_normalization_integral(model.handle, 3.0, &spec, 96, &value, &error) ==
          BT_OK);
  CHECK(value == doctest::Approx(16.0).epsilon(1e-6));
  CHECK(error >= 0.0);
  CHECK(error < 1e-4);
  CHECK(bt_normalization_integral(model.handle, 3.0, &spec, 4, &value, nullptr) ==
        BT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("temperature fit through the C interface") {
  bt_model_params params = default_params();
  params.n_particles = 100;
  Model model;
  REQUIRE(bt_model_create(&params, &model.handle) == BT_OK);

  double t0 = 0.0;
  REQUIRE(bt_model_condensation_temperature(model.handle, &t0) == BT_OK);
  const double t_star = 1.2 * t0;
  double beta_star = 1.0 / t_star;

  bt_fit_config config;
  bt_fit_config_init(&config);
  CHECK(config.procedure == BT_FIT_MAXWELL_TAIL);
  config.quadrature_nodes = 64;

  bt_fit_result result;
  REQUIRE(bt_fit_temperature(model.handle, maxwell_target, &beta_star, &config,
                             &result) == BT_OK);
  CHECK(result.fitted_temperature == doctest::Approx(t_star).epsilon(1e-6));
  CHECK(result.evaluations > 64);
  CHECK(result.bracket_lo < result.bracket_hi);

  // A bracket that excludes the generating temperature is a numerical
  // failure, not a crash.
  config.bracket_lo = 0.05 * t0;
  config.bracket_hi = 0.5 * t0;
  CHECK(bt_fit_temperature(model.handle, maxwell_target, &beta_star, &config,
                           &result) == BT_ERR_NUMERICAL);
  CHECK(std::string(bt_last_error()).find("bracket") != std::string::npos);

  CHECK(bt_fit_temperature(model.handle, nullptr, nullptr, &config, &result) ==
        BT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("bias sweep through the C interface") {
  bt_model_params params = default_params();
  Model model;
  REQUIRE(bt_model_create(&params, &model.handle) == BT_OK);

  const int n_list[1] = {20};
  const double t_grid[2] = {0.8, 1.6};
  bt_fit_config config;
  bt_fit_config_init(&config);
  config.quadrature_nodes = 48;

  bt_sweep_row rows[2];
  REQUIRE(bt_bias_sweep(model.handle, n_list, 1, t_grid, 2, &config, rows) == BT_OK);
  for (const bt_sweep_row& row : rows) {
    CHECK(row.n_particles == 20);
    CHECK(row.ok == 1);
    CHECK(row.note[0] == '\0');
    CHECK(row.t_mb > 0.0);
    CHECK(std::isfinite(row.rel_diff));
  }
  CHECK(rows[0].t_be < rows[1].t_be);

  CHECK(bt_bias_sweep(model.handle, nullptr, 1, t_grid, 2, &config, rows) ==
        BT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("self-test battery reports through the callback") {
  struct Tally {
    int calls = 0;
    int failures = 0;
  } tally;

  const int failures = bt_selftest(
      [](const char* name, int passed, double measured, double tolerance,
         const char* detail, void* user_data) {
        auto* t = static_cast<Tally*>(user_data);
        ++t->calls;
        if (!passed) ++t->failures;
        CHECK(name != nullptr);
        CHECK(std::strlen(name) > 0);
        CHECK(detail != nullptr);
        CHECK(std::isfinite(measured));
        CHECK(tolerance >= 0.0);
      },
      &tally);

  CHECK(failures == 0);
  CHECK(failures == tally.failures);
  CHECK(tally.calls >= 8);
}
