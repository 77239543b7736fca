// Copyright (c) 2026 bosetrap developers
// SPDX-License-Identifier: Apache-2.0

#include "bosetrap.h"

#include <cstdio>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include "bosetrap/distributions.hpp"
#include "bosetrap/model.hpp"
#include "bosetrap/numerics.hpp"
#include "bosetrap/partition.hpp"
#include "bosetrap/selftest.hpp"
#include "bosetrap/thermometry.hpp"

struct bt_model {
  bosetrap::TrapModel model;
};

struct bt_table {
  bosetrap::PartitionTable table;
};

namespace {

thread_local std::string g_last_error = "";

void set_error(const std::string& message) { g_last_error = message; }

/// Runs fn, translating C++ exceptions into status codes and the
/// thread-local message.
template <typename Fn>
bt_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& error) {
    set_error(error.what());
    return BT_ERR_INVALID_ARGUMENT;
  } catch (const std::out_of_range& error) {
    set_error(error.what());
    return BT_ERR_INVALID_ARGUMENT;
  } catch (const std::domain_error& error) {
    set_error(error.what());
    return BT_ERR_DOMAIN;
  } catch (const std::runtime_error& error) {
    set_error(error.what());
    return BT_ERR_NUMERICAL;
  } catch (const std::exception& error) {
    set_error(error.what());
    return BT_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return BT_ERR_INTERNAL;
  }
}

bt_status require(bool condition, const char* message) {
  if (condition) return BT_OK;
  set_error(message);
  return BT_ERR_INVALID_ARGUMENT;
}

bosetrap::SinhVariant to_variant(bt_sinh_variant variant) {
  return variant == BT_SINH_CONFINEMENT ? bosetrap::SinhVariant::kConfinement
                                        : bosetrap::SinhVariant::kRenormalized;
}

bosetrap::DistributionSpec to_spec(const bt_dist_spec& spec) {
  bosetrap::DistributionSpec out;
  switch (spec.family) {
    case BT_FAMILY_BOSE_EXACT: out.family = bosetrap::Family::kBoseExact; break;
    case BT_FAMILY_BOSE_IDEAL: out.family = bosetrap::Family::kBoseIdeal; break;
    case BT_FAMILY_DISTINGUISHABLE:
      out.family = bosetrap::Family::kDistinguishable;
      break;
    case BT_FAMILY_MAXWELL: out.family = bosetrap::Family::kMaxwell; break;
    default: throw std::invalid_argument("bt_dist_spec: unknown family");
  }
  out.sinh_variant = to_variant(spec.sinh_variant);
  out.normalization = spec.normalization == BT_NORM_PER_PARTICLE
                          ? bosetrap::Normalization::kPerParticle
                          : bosetrap::Normalization::kTotalN;
  return out;
}

bosetrap::FitConfig to_fit_config(const bt_fit_config& config) {
  bosetrap::FitConfig out;
  out.procedure = config.procedure == BT_FIT_BOSE_EINSTEIN
                      ? bosetrap::FitProcedure::kBoseEinstein
                      : bosetrap::FitProcedure::kMaxwellTail;
  out.p_c = config.p_c;
  out.bracket_lo = config.bracket_lo;
  out.bracket_hi = config.bracket_hi;
  out.rel_tol = config.rel_tol;
  out.quadrature.nodes = config.quadrature_nodes;
  out.quadrature.p_max = config.quadrature_p_max;
  out.amplitude = config.amplitude == BT_AMPLITUDE_FREE_SCALE
                      ? bosetrap::AmplitudeMode::kFreeScale
                      : bosetrap::AmplitudeMode::kPerParticle;
  return out;
}

}  // namespace

extern "C" {

const char* bt_last_error(void) { return g_last_error.c_str(); }

const char* bt_version(void) { return "0.1.0"; }

void bt_model_params_init(bt_model_params* params) {
  if (params == nullptr) return;
  params->n_particles = 1;
  params->mass = 1.0;
  params->hbar = 1.0;
  params->boltzmann_k = 1.0;
  params->omega_xy = 1.0;
  params->omega_z = 1.0;
  params->inter_omega = 0.0;
  params->attractive = 1;
}

bt_status bt_model_create(const bt_model_params* params, bt_model** out) {
  if (bt_status s = require(params != nullptr && out != nullptr,
                            "bt_model_create: null pointer argument"))
    return s;
  *out = nullptr;
  return guarded([&] {
    bosetrap::TrapModel model;
    model.n_particles = params->n_particles;
    model.mass = params->mass;
    model.hbar = params->hbar;
    model.boltzmann_k = params->boltzmann_k;
    model.omega_xy = params->omega_xy;
    model.omega_z = params->omega_z;
    model.inter_omega = params->inter_omega;
    model.inter_sign = params->attractive != 0 ? bosetrap::InteractionSign::kAttractive
                                               : bosetrap::InteractionSign::kRepulsive;
    model.validate();
    bosetrap::renormalized_frequencies(model);  // reject collapsed regimes now
    *out = new bt_model{model};
    return BT_OK;
  });
}

void bt_model_free(bt_model* model) { delete model; }

bt_status bt_model_frequencies(const bt_model* model, double* w_xy, double* w_z) {
  if (bt_status s = require(model != nullptr, "bt_model_frequencies: null model"))
    return s;
  return guarded([&] {
    const auto [fx, fz] = bosetrap::renormalized_frequencies(model->model);
    if (w_xy != nullptr) *w_xy = fx;
    if (w_z != nullptr) *w_z = fz;
    return BT_OK;
  });
}

bt_status bt_model_condensation_temperature(const bt_model* model, double* t0) {
  if (bt_status s = require(model != nullptr && t0 != nullptr,
                            "bt_model_condensation_temperature: null pointer argument"))
    return s;
  return guarded([&] {
    *t0 = bosetrap::condensation_temperature(model->model);
    return BT_OK;
  });
}

bt_status bt_model_momentum_scale(const bt_model* model, double* scale) {
  if (bt_status s = require(model != nullptr && scale != nullptr,
                            "bt_model_momentum_scale: null pointer argument"))
    return s;
  return guarded([&] {
    *scale = bosetrap::momentum_scale(model->model);
    return BT_OK;
  });
}

bt_status bt_default_momentum_cutoff(const bt_model* model, double temperature,
                                     double* p_max) {
  if (bt_status s = require(model != nullptr && p_max != nullptr,
                            "bt_default_momentum_cutoff: null pointer argument"))
    return s;
  return guarded([&] {
    if (!(temperature > 0.0))
      throw std::invalid_argument(
          "bt_default_momentum_cutoff: temperature must be positive");
    *p_max = bosetrap::default_momentum_cutoff(model->model, temperature);
    return BT_OK;
  });
}

bt_status bt_table_build(const bt_model* model, double temperature,
                         bt_sinh_variant variant, bt_table** out) {
  if (bt_status s = require(model != nullptr && out != nullptr,
                            "bt_table_build: null pointer argument"))
    return s;
  *out = nullptr;
  return guarded([&] {
    const auto thermal = bosetrap::ThermalPoint::from_temperature(temperature,
                                                                  model->model);
    *out = new bt_table{
        bosetrap::build_partition_table(model->model, thermal, to_variant(variant))};
    return BT_OK;
  });
}

void bt_table_free(bt_table* table) { delete table; }

int bt_table_size(const bt_table* table) {
  return table == nullptr ? -1 : table->table.n_max();
}

bt_status bt_table_log_z(const bt_table* table, int n, double* out) {
  if (bt_status s = require(table != nullptr && out != nullptr,
                            "bt_table_log_z: null pointer argument"))
    return s;
  return guarded([&] {
    if (n < 0 || n > table->table.n_max())
      throw std::out_of_range("bt_table_log_z: n outside [0, N]");
    *out = table->table.log_z[static_cast<std::size_t>(n)];
    return BT_OK;
  });
}

bt_status bt_table_log_ratio(const bt_table* table, int ell, double* out) {
  if (bt_status s = require(table != nullptr && out != nullptr,
                            "bt_table_log_ratio: null pointer argument"))
    return s;
  return guarded([&] {
    *out = bosetrap::log_partition_ratio(table->table, ell);
    return BT_OK;
  });
}

void bt_dist_spec_init(bt_dist_spec* spec) {
  if (spec == nullptr) return;
  spec->family = BT_FAMILY_BOSE_IDEAL;
  spec->sinh_variant = BT_SINH_RENORMALIZED;
  spec->normalization = BT_NORM_TOTAL_N;
}

bt_status bt_eval(const bt_model* model, double temperature, const bt_dist_spec* spec,
                  double p_rho, double p_z, double* out) {
  return bt_eval_grid(model, temperature, spec, &p_rho, &p_z, 1, out);
}

bt_status bt_eval_grid(const bt_model* model, double temperature,
                       const bt_dist_spec* spec, const double* p_rho, const double* p_z,
                       size_t count, double* out) {
  if (bt_status s = require(model != nullptr && spec != nullptr && p_rho != nullptr &&
                                p_z != nullptr && out != nullptr,
                            "bt_eval_grid: null pointer argument"))
    return s;
  return guarded([&] {
    const auto thermal =
        bosetrap::ThermalPoint::from_temperature(temperature, model->model);
    const bosetrap::DistributionEvaluator eval(model->model, thermal, to_spec(*spec));
    bosetrap::parallel_for(count, [&](std::size_t i) { out[i] = eval(p_rho[i], p_z[i]); });
    return BT_OK;
  });
}

bt_status bt_normalization_integral(const bt_model* model, double temperature,
                                    const bt_dist_spec* spec, int nodes, double* value,
                                    double* error_estimate) {
  if (bt_status s = require(model != nullptr && spec != nullptr && value != nullptr,
                            "bt_normalization_integral: null pointer argument"))
    return s;
  return guarded([&] {
    const auto thermal =
        bosetrap::ThermalPoint::from_temperature(temperature, model->model);
    const bosetrap::DistributionEvaluator eval(model->model, thermal, to_spec(*spec));
    const bosetrap::NormalizationResult result =
        bosetrap::normalization_integral(eval, nodes);
    *value = result.value;
    if (error_estimate != nullptr) *error_estimate = result.error_estimate;
    return BT_OK;
  });
}

void bt_fit_config_init(bt_fit_config* config) {
  if (config == nullptr) return;
  config->procedure = BT_FIT_MAXWELL_TAIL;
  config->p_c = 5.0;
  config->bracket_lo = 0.0;
  config->bracket_hi = 0.0;
  config->rel_tol = 1e-8;
  config->quadrature_nodes = 128;
  config->quadrature_p_max = 0.0;
  config->amplitude = BT_AMPLITUDE_PER_PARTICLE;
}

bt_status bt_fit_temperature(const bt_model* model, bt_target_fn target,
                             void* user_data, const bt_fit_config* config,
                             bt_fit_result* out) {
  if (bt_status s = require(model != nullptr && target != nullptr &&
                                config != nullptr && out != nullptr,
                            "bt_fit_temperature: null pointer argument"))
    return s;
  return guarded([&] {
    const bosetrap::FitResult result = bosetrap::fit_temperature(
        [target, user_data](double p_rho, double p_z) {
          return target(p_rho, p_z, user_data);
        },
        model->model, to_fit_config(*config));
    out->fitted_temperature = result.fitted_temperature;
    out->objective_value = result.objective_value;
    out->objective_error_estimate = result.objective_error_estimate;
    out->amplitude_scale = result.amplitude_scale;
    out->evaluations = result.evaluations;
    out->bracket_lo = result.bracket_used.first;
    out->bracket_hi = result.bracket_used.second;
    out->procedure = config->procedure;
    return BT_OK;
  });
}

bt_status bt_bias_sweep(const bt_model* base_model, const int* n_list, size_t n_count,
                        const double* t_over_t0, size_t t_count,
                        const bt_fit_config* config, bt_sweep_row* rows) {
  if (bt_status s =
          require(base_model != nullptr && n_list != nullptr && t_over_t0 != nullptr &&
                      config != nullptr && rows != nullptr && n_count > 0 && t_count > 0,
                  "bt_bias_sweep: null pointer or empty grid"))
    return s;
  return guarded([&] {
    const std::vector<bosetrap::BiasRow> result = bosetrap::bias_sweep(
        base_model->model, std::span<const int>(n_list, n_count),
        std::span<const double>(t_over_t0, t_count), to_fit_config(*config));
    for (std::size_t i = 0; i < result.size(); ++i) {
      const bosetrap::BiasRow& row = result[i];
      rows[i].n_particles = row.n_particles;
      rows[i].t_be = row.t_be;
      rows[i].t_be_over_t0 = row.t_be_over_t0;
      rows[i].t_mb = row.t_mb;
      rows[i].rel_diff = row.rel_diff;
      rows[i].ok = row.ok ? 1 : 0;
      std::snprintf(rows[i].note, sizeof(rows[i].note), "%s", row.note.c_str());
    }
    return BT_OK;
  });
}

int bt_selftest(bt_selftest_report_fn reporter, void* user_data) {
  try {
    return bosetrap::run_selftest([&](const bosetrap::SelfTestCheck& check) {
      if (reporter != nullptr)
        reporter(check.name.c_str(), check.passed ? 1 : 0, check.measured,
                 check.tolerance, check.detail.c_str(), user_data);
    });
  } catch (const std::exception& error) {
    set_error(error.what());
    return -1;
  } catch (...) {
    set_error("unknown error");
    return -1;
  }
}

}  // extern "C"
