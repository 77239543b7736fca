// Copyright (c) 2026 bosetrap developers
// SPDX-License-Identifier: Apache-2.0
//
// Command-line surface over the bosetrap C API: evaluates momentum
// distributions to CSV, runs temperature fits against measured grids,
// reproduces the reference figures, and runs the self-test battery.
// Exit codes: 0 success, 1 numerical failure, 2 usage error.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "bosetrap.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct ModelDeleter {
  void operator()(bt_model* m) const { bt_model_free(m); }
};
using ModelHandle = std::unique_ptr<bt_model, ModelDeleter>;

int exit_code_for(bt_status status) {
  return status == BT_ERR_INVALID_ARGUMENT ? kExitUsage : kExitNumerical;
}

int fail(bt_status status, const std::string& context) {
  std::fprintf(stderr, "error: %s: %s\n", context.c_str(), bt_last_error());
  return exit_code_for(status);
}

int usage_error(const std::string& message) {
  std::fprintf(stderr, "error: %s\n", message.c_str());
  return kExitUsage;
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buffer;
}

/// `#`-prefixed header block recording every resolved parameter, so any
/// output file can be regenerated from its own manifest.
class Manifest {
 public:
  explicit Manifest(std::string command) : command_(std::move(command)) {}

  void add(const std::string& key, const std::string& value) {
    params_.emplace_back(key, value);
  }
  void add(const std::string& key, double value) { add(key, format_double(value)); }
  void add(const std::string& key, int value) { add(key, std::to_string(value)); }

  void write(std::ostream& out, const std::string& columns) const {
    out << "# bosetrap-cli " << bt_version() << "\n";
    out << "# command: " << command_ << "\n";
    out << "# timestamp: " << utc_timestamp() << "\n";
    std::string regenerate = "bosetrap " + command_;
    for (const auto& [key, value] : params_) {
      out << "# param: " << key << "=" << value << "\n";
      regenerate += " --" + key + " " + value;
    }
    out << "# regenerate: " << regenerate << "\n";
    out << "# columns: " << columns << "\n";
    out << columns << "\n";
  }

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> params_;
};

bool open_output(const std::string& path, std::ofstream& out) {
  out.open(path, std::ios::binary);  // binary: LF endings everywhere
  if (!out) std::fprintf(stderr, "error: cannot open output file '%s'\n", path.c_str());
  return static_cast<bool>(out);
}

/// Shared trap-model flags.  hbar, mass and k_B stay at their natural
/// unit value of 1 on the command line.
struct ModelOptions {
  int n = 1000;
  double omega_xy = 1.0;
  double omega_z = 1.0;
  double inter_omega = 0.0;
  std::string sign = "attractive";

  void attach(CLI::App* cmd) {
    cmd->add_option("--n", n, "particle number")->check(CLI::PositiveNumber);
    cmd->add_option("--omega-xy", omega_xy, "radial confinement frequency")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--omega-z", omega_z, "axial confinement frequency")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--inter-omega", inter_omega,
                    "pair-interaction frequency (0 = non-interacting)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--sign", sign, "interaction sign")
        ->check(CLI::IsMember({"attractive", "repulsive"}));
  }

  ModelHandle create(bt_status* status) const {
    bt_model_params params;
    bt_model_params_init(&params);
    params.n_particles = n;
    params.omega_xy = omega_xy;
    params.omega_z = omega_z;
    params.inter_omega = inter_omega;
    params.attractive = sign == "attractive" ? 1 : 0;
    bt_model* raw = nullptr;
    *status = bt_model_create(&params, &raw);
    return ModelHandle(raw);
  }

  void record(Manifest& manifest) const {
    manifest.add("n", n);
    manifest.add("omega-xy", omega_xy);
    manifest.add("omega-z", omega_z);
    manifest.add("inter-omega", inter_omega);
    manifest.add("sign", sign);
  }
};

bt_family family_from_name(const std::string& name) {
  if (name == "bose") return BT_FAMILY_BOSE_EXACT;
  if (name == "ideal") return BT_FAMILY_BOSE_IDEAL;
  if (name == "dist") return BT_FAMILY_DISTINGUISHABLE;
  return BT_FAMILY_MAXWELL;
}

bool all_finite(const std::vector<double>& values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

// ------------------------------------------------------------------
// dist: evaluate one distribution on a (p_rho, p_z) grid
// ------------------------------------------------------------------

struct DistOptions {
  ModelOptions model;
  double temp = 1.0;
  std::string family = "bose";
  std::string sinh_variant = "renormalized";
  std::string normalization = "total-n";
  double p_max = 0.0;  // 0 = automatic cutoff
  int points = 200;
  std::string out = "dist.csv";
};

int run_dist(const DistOptions& opt) {
  if (opt.family == "ideal" && opt.model.inter_omega != 0.0)
    return usage_error("--model ideal requires --inter-omega 0");

  bt_status status;
  ModelHandle model = opt.model.create(&status);
  if (!model) return fail(status, "--n/--omega/--inter-omega validation");

  double p_max = opt.p_max;
  if (p_max <= 0.0) {
    if ((status = bt_default_momentum_cutoff(model.get(), opt.temp, &p_max)) != BT_OK)
      return fail(status, "--temp validation");
  }

  bt_dist_spec spec;
  bt_dist_spec_init(&spec);
  spec.family = family_from_name(opt.family);
  spec.sinh_variant =
      opt.sinh_variant == "confinement" ? BT_SINH_CONFINEMENT : BT_SINH_RENORMALIZED;
  spec.normalization =
      opt.normalization == "per-particle" ? BT_NORM_PER_PARTICLE : BT_NORM_TOTAL_N;

  const std::size_t count = static_cast<std::size_t>(opt.points) * opt.points;
  std::vector<double> p_rho(count), p_z(count), values(count);
  for (int i = 0; i < opt.points; ++i) {
    const double rho = p_max * i / (opt.points - 1);
    for (int j = 0; j < opt.points; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * opt.points + j;
      p_rho[k] = rho;
      p_z[k] = p_max * j / (opt.points - 1);
    }
  }
  status = bt_eval_grid(model.get(), opt.temp, &spec, p_rho.data(), p_z.data(), count,
                        values.data());
  if (status != BT_OK) return fail(status, "distribution evaluation");
  if (!all_finite(values)) {
    std::fprintf(stderr, "error: non-finite value in evaluated grid\n");
    return kExitNumerical;
  }

  Manifest manifest("dist");
  opt.model.record(manifest);
  manifest.add("temp", opt.temp);
  manifest.add("model", opt.family);
  manifest.add("sinh-variant", opt.sinh_variant);
  manifest.add("normalization", opt.normalization);
  manifest.add("p-max", p_max);
  manifest.add("points", opt.points);
  manifest.add("out", opt.out);

  std::ofstream file;
  if (!open_output(opt.out, file)) return kExitUsage;
  manifest.write(file, "p_rho,p_z,n");
  for (std::size_t k = 0; k < count; ++k)
    file << format_double(p_rho[k]) << ',' << format_double(p_z[k]) << ','
         << format_double(values[k]) << '\n';
  return kExitOk;
}

// ------------------------------------------------------------------
// fit: temperature fit against a measured CSV grid
// ------------------------------------------------------------------

/// Bilinear interpolation over a full tensor grid read from CSV
/// (columns p_rho,p_z,n); constant extension outside the grid.
struct GridTarget {
  std::vector<double> rho_axis;
  std::vector<double> z_axis;
  std::vector<double> values;  // rho-major

  double reach() const { return std::min(rho_axis.back(), z_axis.back()); }

  double operator()(double p_rho, double p_z) const {
    p_z = std::abs(p_z);
    const auto locate = [](const std::vector<double>& axis, double x, double& frac) {
      if (x <= axis.front()) {
        frac = 0.0;
        return std::size_t{0};
      }
      if (x >= axis.back()) {
        frac = 1.0;
        return axis.size() - 2;
      }
      const std::size_t hi =
          std::upper_bound(axis.begin(), axis.end(), x) - axis.begin();
      const std::size_t lo = hi - 1;
      frac = (x - axis[lo]) / (axis[hi] - axis[lo]);
      return lo;
    };
    double fr = 0.0, fz = 0.0;
    const std::size_t ir = locate(rho_axis, p_rho, fr);
    const std::size_t iz = locate(z_axis, p_z, fz);
    const std::size_t cols = z_axis.size();
    const double v00 = values[ir * cols + iz];
    const double v01 = values[ir * cols + iz + 1];
    const double v10 = values[(ir + 1) * cols + iz];
    const double v11 = values[(ir + 1) * cols + iz + 1];
    return (1.0 - fr) * ((1.0 - fz) * v00 + fz * v01) +
           fr * ((1.0 - fz) * v10 + fz * v11);
  }
};

double grid_target_trampoline(double p_rho, double p_z, void* user_data) {
  return (*static_cast<const GridTarget*>(user_data))(p_rho, p_z);
}

bool load_grid_target(const std::string& path, GridTarget& target,
                      std::string& error) {
  std::ifstream file(path);
  if (!file) {
    error = "cannot open input file '" + path + "'";
    return false;
  }
  std::vector<std::array<double, 3>> rows;
  std::string line;
  while (std::getline(file, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line == "p_rho,p_z,n") continue;  // column header
    std::array<double, 3> row{};
    const char* cursor = line.c_str();
    char* end = nullptr;
    bool ok = true;
    for (int c = 0; c < 3; ++c) {
      row[c] = std::strtod(cursor, &end);
      if (end == cursor) {
        ok = false;
        break;
      }
      cursor = end;
      if (c < 2) {
        while (*cursor == ' ') ++cursor;
        if (*cursor != ',') {
          ok = false;
          break;
        }
        ++cursor;
      }
    }
    if (!ok) {
      error = "malformed CSV line: '" + line + "'";
      return false;
    }
    rows.push_back(row);
  }
  if (rows.empty()) {
    error = "input file holds no data rows";
    return false;
  }

  auto collect_axis = [&](int column) {
    std::vector<double> axis;
    axis.reserve(rows.size());
    for (const auto& row : rows) axis.push_back(row[column]);
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
    return axis;
  };
  target.rho_axis = collect_axis(0);
  target.z_axis = collect_axis(1);
  if (target.rho_axis.size() < 2 || target.z_axis.size() < 2 ||
      rows.size() != target.rho_axis.size() * target.z_axis.size()) {
    error = "input is not a full (p_rho x p_z) tensor grid";
    return false;
  }
  target.values.assign(rows.size(), 0.0);
  std::vector<char> seen(rows.size(), 0);
  for (const auto& row : rows) {
    const std::size_t ir = std::lower_bound(target.rho_axis.begin(),
                                            target.rho_axis.end(), row[0]) -
                           target.rho_axis.begin();
    const std::size_t iz =
        std::lower_bound(target.z_axis.begin(), target.z_axis.end(), row[1]) -
        target.z_axis.begin();
    const std::size_t k = ir * target.z_axis.size() + iz;
    if (seen[k]) {
      error = "duplicate grid point in input";
      return false;
    }
    seen[k] = 1;
    target.values[k] = row[2];
  }
  return true;
}

struct FitOptions {
  ModelOptions model;
  std::string in;
  std::string procedure = "mb-tail";
  std::string amplitude = "per-particle";
  double p_c = 5.0;
  double temp_lo = 0.0;
  double temp_hi = 0.0;
  double rel_tol = 1e-8;
  int nodes = 128;
  double p_max = 0.0;
  std::string out;
};

int run_fit(const FitOptions& opt) {
  if (opt.procedure == "be" && opt.model.inter_omega != 0.0)
    return usage_error("--procedure be fits the ideal family; requires --inter-omega 0");

  GridTarget target;
  std::string error;
  if (!load_grid_target(opt.in, target, error)) return usage_error(error);

  bt_status status;
  ModelHandle model = opt.model.create(&status);
  if (!model) return fail(status, "--n/--omega/--inter-omega validation");

  bt_fit_config config;
  bt_fit_config_init(&config);
  config.procedure = opt.procedure == "be" ? BT_FIT_BOSE_EINSTEIN : BT_FIT_MAXWELL_TAIL;
  config.p_c = opt.p_c;
  config.bracket_lo = opt.temp_lo;
  config.bracket_hi = opt.temp_hi;
  config.rel_tol = opt.rel_tol;
  config.quadrature_nodes = opt.nodes;
  config.amplitude = opt.amplitude == "free-scale" ? BT_AMPLITUDE_FREE_SCALE
                                                   : BT_AMPLITUDE_PER_PARTICLE;

  // Keep the objective inside the measured grid's reach.
  double p_max = opt.p_max;
  if (p_max <= 0.0) p_max = target.reach();
  if (p_max > target.reach()) {
    std::fprintf(stderr,
                 "note: clamping quadrature radius to the input grid reach (%g)\n",
                 target.reach());
    p_max = target.reach();
  }
  config.quadrature_p_max = p_max;

  bt_fit_result result;
  status = bt_fit_temperature(model.get(), grid_target_trampoline, &target, &config,
                              &result);
  if (status != BT_OK) return fail(status, "temperature fit");

  std::printf("procedure = %s\n", opt.procedure.c_str());
  std::printf("fitted_temperature = %s\n", format_double(result.fitted_temperature).c_str());
  std::printf("objective_value = %s\n", format_double(result.objective_value).c_str());
  std::printf("objective_error_estimate = %s\n",
              format_double(result.objective_error_estimate).c_str());
  std::printf("amplitude_scale = %s\n", format_double(result.amplitude_scale).c_str());
  std::printf("evaluations = %d\n", result.evaluations);
  std::printf("bracket = [%s, %s]\n", format_double(result.bracket_lo).c_str(),
              format_double(result.bracket_hi).c_str());

  if (!opt.out.empty()) {
    Manifest manifest("fit");
    opt.model.record(manifest);
    manifest.add("in", opt.in);
    manifest.add("procedure", opt.procedure);
    manifest.add("amplitude", opt.amplitude);
    manifest.add("pc", opt.p_c);
    manifest.add("temp-lo", result.bracket_lo);
    manifest.add("temp-hi", result.bracket_hi);
    manifest.add("rel-tol", opt.rel_tol);
    manifest.add("nodes", opt.nodes);
    manifest.add("p-max", p_max);
    std::ofstream file;
    if (!open_output(opt.out, file)) return kExitUsage;
    manifest.write(file,
                   "procedure,fitted_temperature,objective_value,"
                   "objective_error_estimate,amplitude_scale,evaluations");
    file << opt.procedure << ',' << format_double(result.fitted_temperature) << ','
         << format_double(result.objective_value) << ','
         << format_double(result.objective_error_estimate) << ','
         << format_double(result.amplitude_scale) << ',' << result.evaluations << '\n';
  }
  return kExitOk;
}

// ------------------------------------------------------------------
// fig1: distribution curves at several temperatures, plus the
// zero-momentum value across a temperature grid (the inset)
// ------------------------------------------------------------------

struct Fig1Options {
  int n = 1000;
  std::vector<double> temps;  // units of T0; defaulted below
  double p_max = 6.0;         // units of sqrt(hbar m Omega) = 1
  int points = 200;
  double inset_min = 0.2;
  double inset_max = 2.0;
  int inset_steps = 37;
  std::string out_curves = "fig1_curves.csv";
  std::string out_inset = "fig1_inset.csv";
};

int run_fig1(Fig1Options opt) {
  if (opt.temps.empty()) opt.temps = {0.5, 0.75, 1.0, 1.25, 1.5};
  for (double t : opt.temps)
    if (!(t > 0.0)) return usage_error("--temps entries must be positive");
  if (!(opt.inset_min > 0.0) || !(opt.inset_max > opt.inset_min))
    return usage_error("--inset-min/--inset-max must satisfy 0 < min < max");

  ModelOptions model_options;  // isotropic natural units, no interaction
  model_options.n = opt.n;
  bt_status status;
  ModelHandle model = model_options.create(&status);
  if (!model) return fail(status, "--n validation");

  double t0 = 0.0;
  if ((status = bt_model_condensation_temperature(model.get(), &t0)) != BT_OK)
    return fail(status, "condensation temperature");

  bt_dist_spec spec;
  bt_dist_spec_init(&spec);  // ideal family, total-N

  // File A: radial cuts n(p, 0) normalized to the p = 0 value.
  std::vector<double> p_rho(opt.points), p_z(opt.points, 0.0), values(opt.points);
  for (int i = 0; i < opt.points; ++i) p_rho[i] = opt.p_max * i / (opt.points - 1);

  Manifest curves_manifest("fig1");
  curves_manifest.add("n", opt.n);
  {
    std::string list;
    for (std::size_t i = 0; i < opt.temps.size(); ++i)
      list += (i ? "," : "") + format_double(opt.temps[i]);
    curves_manifest.add("temps", list);
  }
  curves_manifest.add("p-max", opt.p_max);
  curves_manifest.add("points", opt.points);
  curves_manifest.add("t0", t0);
  curves_manifest.add("out-curves", opt.out_curves);

  std::ofstream curves;
  if (!open_output(opt.out_curves, curves)) return kExitUsage;
  curves_manifest.write(curves, "T,p,n_over_n0");
  for (double t_over_t0 : opt.temps) {
    const double temp = t_over_t0 * t0;
    status = bt_eval_grid(model.get(), temp, &spec, p_rho.data(), p_z.data(),
                          static_cast<std::size_t>(opt.points), values.data());
    if (status != BT_OK) return fail(status, "curve evaluation");
    const double n0 = values[0];
    if (!(n0 > 0.0) || !all_finite(values)) {
      std::fprintf(stderr, "error: degenerate curve normalization at T=%g\n", temp);
      return kExitNumerical;
    }
    for (int i = 0; i < opt.points; ++i)
      curves << format_double(temp) << ',' << format_double(p_rho[i]) << ','
             << format_double(values[i] / n0) << '\n';
  }

  // File B: n(p = 0) across the inset temperature grid.
  Manifest inset_manifest("fig1");
  inset_manifest.add("n", opt.n);
  inset_manifest.add("inset-min", opt.inset_min);
  inset_manifest.add("inset-max", opt.inset_max);
  inset_manifest.add("inset-steps", opt.inset_steps);
  inset_manifest.add("t0", t0);
  inset_manifest.add("out-inset", opt.out_inset);

  std::ofstream inset;
  if (!open_output(opt.out_inset, inset)) return kExitUsage;
  inset_manifest.write(inset, "T_over_T0,n_at_zero");
  for (int k = 0; k < opt.inset_steps; ++k) {
    const double t_over_t0 =
        opt.inset_min +
        (opt.inset_max - opt.inset_min) * k / (opt.inset_steps - 1);
    double value = 0.0;
    status = bt_eval(model.get(), t_over_t0 * t0, &spec, 0.0, 0.0, &value);
    if (status != BT_OK) return fail(status, "inset evaluation");
    if (!std::isfinite(value)) {
      std::fprintf(stderr, "error: non-finite inset value\n");
      return kExitNumerical;
    }
    inset << format_double(t_over_t0) << ',' << format_double(value) << '\n';
  }
  return kExitOk;
}

// ------------------------------------------------------------------
// fig2: thermometry bias sweep
// ------------------------------------------------------------------

struct Fig2Options {
  std::vector<int> n_list;  // defaulted below
  double t_min = 0.3;
  double t_max = 2.0;
  int steps = 40;
  double p_c = 5.0;
  int nodes = 128;
  double rel_tol = 1e-8;
  std::string amplitude = "per-particle";
  std::string out = "fig2.csv";
};

int run_fig2(Fig2Options opt) {
  if (opt.n_list.empty()) opt.n_list = {500, 1000, 2000};
  for (int n : opt.n_list)
    if (n < 1) return usage_error("--n-list entries must be positive");
  if (!(opt.t_min > 0.0) || !(opt.t_max > opt.t_min))
    return usage_error("--t-min/--t-max must satisfy 0 < min < max");

  ModelOptions model_options;  // isotropic natural units, no interaction
  bt_status status;
  ModelHandle model = model_options.create(&status);
  if (!model) return fail(status, "model construction");

  std::vector<double> t_grid(opt.steps);
  for (int k = 0; k < opt.steps; ++k)
    t_grid[k] = opt.t_min + (opt.t_max - opt.t_min) * k / (opt.steps - 1);

  bt_fit_config config;
  bt_fit_config_init(&config);
  config.p_c = opt.p_c;
  config.rel_tol = opt.rel_tol;
  config.quadrature_nodes = opt.nodes;
  config.amplitude = opt.amplitude == "free-scale" ? BT_AMPLITUDE_FREE_SCALE
                                                   : BT_AMPLITUDE_PER_PARTICLE;

  std::vector<bt_sweep_row> rows(opt.n_list.size() * t_grid.size());
  status = bt_bias_sweep(model.get(), opt.n_list.data(), opt.n_list.size(),
                         t_grid.data(), t_grid.size(), &config, rows.data());
  if (status != BT_OK) return fail(status, "bias sweep");

  Manifest manifest("fig2");
  {
    std::string list;
    for (std::size_t i = 0; i < opt.n_list.size(); ++i)
      list += (i ? "," : "") + std::to_string(opt.n_list[i]);
    manifest.add("n-list", list);
  }
  manifest.add("t-min", opt.t_min);
  manifest.add("t-max", opt.t_max);
  manifest.add("steps", opt.steps);
  manifest.add("pc", opt.p_c);
  manifest.add("nodes", opt.nodes);
  manifest.add("rel-tol", opt.rel_tol);
  manifest.add("amplitude", opt.amplitude);
  manifest.add("out", opt.out);

  std::ofstream file;
  if (!open_output(opt.out, file)) return kExitUsage;
  manifest.write(file, "N,T_BE_over_T0,T_MB,rel_diff,flag");
  std::size_t failed = 0;
  for (const bt_sweep_row& row : rows) {
    std::string flag = "ok";
    if (!row.ok) {
      ++failed;
      flag = "failed:";
      for (const char* c = row.note; *c != '\0'; ++c)
        flag += *c == ',' ? ';' : *c;  // keep the CSV single-celled
    }
    file << row.n_particles << ',' << format_double(row.t_be_over_t0) << ','
         << format_double(row.t_mb) << ',' << format_double(row.rel_diff) << ','
         << flag << '\n';
  }
  if (failed == rows.size()) {
    std::fprintf(stderr, "error: every sweep row failed\n");
    return kExitNumerical;
  }
  if (failed > 0)
    std::fprintf(stderr, "warning: %zu of %zu sweep rows failed (see flag column)\n",
                 failed, rows.size());
  return kExitOk;
}

// ------------------------------------------------------------------
// selftest
// ------------------------------------------------------------------

void report_check(const char* name, int passed, double measured, double tolerance,
                  const char* detail, void* user_data) {
  (void)user_data;
  std::printf("[%s] %-38s measured=%-12.5g tolerance=%-9.3g %s\n",
              passed ? "PASS" : "FAIL", name, measured, tolerance, detail);
}

int run_selftest_cmd() {
  const int failures = bt_selftest(report_check, nullptr);
  if (failures < 0) {
    std::fprintf(stderr, "error: self test aborted: %s\n", bt_last_error());
    return kExitNumerical;
  }
  std::printf("%s: %d failure%s\n", failures == 0 ? "OK" : "FAILED", failures,
              failures == 1 ? "" : "s");
  return failures == 0 ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Momentum distributions and thermometry of harmonically confined bosons"};
  app.require_subcommand(1);

  DistOptions dist;
  CLI::App* cmd_dist = app.add_subcommand("dist", "evaluate a distribution to CSV");
  dist.model.attach(cmd_dist);
  cmd_dist->add_option("--temp", dist.temp, "temperature")->check(CLI::PositiveNumber);
  cmd_dist->add_option("--model", dist.family, "distribution family")
      ->check(CLI::IsMember({"bose", "ideal", "dist", "maxwell"}));
  cmd_dist->add_option("--sinh-variant", dist.sinh_variant, "cycle-weight frequencies")
      ->check(CLI::IsMember({"renormalized", "confinement"}));
  cmd_dist->add_option("--normalization", dist.normalization, "integral convention")
      ->check(CLI::IsMember({"total-n", "per-particle"}));
  cmd_dist->add_option("--p-max", dist.p_max, "grid extent per axis (0 = automatic)")
      ->check(CLI::NonNegativeNumber);
  cmd_dist->add_option("--points", dist.points, "grid points per axis")
      ->check(CLI::Range(2, 4096));
  cmd_dist->add_option("--out", dist.out, "output CSV path");

  FitOptions fit;
  CLI::App* cmd_fit = app.add_subcommand("fit", "fit a temperature to a measured grid");
  fit.model.attach(cmd_fit);
  cmd_fit->add_option("--in", fit.in, "input CSV (columns p_rho,p_z,n)")->required();
  cmd_fit->add_option("--procedure", fit.procedure, "fit procedure")
      ->check(CLI::IsMember({"mb-tail", "be"}));
  cmd_fit->add_option("--amplitude", fit.amplitude, "amplitude treatment")
      ->check(CLI::IsMember({"per-particle", "free-scale"}));
  cmd_fit->add_option("--pc", fit.p_c, "tail threshold in momentum-scale units")
      ->check(CLI::NonNegativeNumber);
  cmd_fit->add_option("--temp-lo", fit.temp_lo, "bracket low (0 = default)")
      ->check(CLI::NonNegativeNumber);
  cmd_fit->add_option("--temp-hi", fit.temp_hi, "bracket high (0 = default)")
      ->check(CLI::NonNegativeNumber);
  cmd_fit->add_option("--rel-tol", fit.rel_tol, "convergence tolerance")
      ->check(CLI::PositiveNumber);
  cmd_fit->add_option("--nodes", fit.nodes, "quadrature nodes per dimension")
      ->check(CLI::Range(8, 4096));
  cmd_fit->add_option("--p-max", fit.p_max, "quadrature radius (0 = grid reach)")
      ->check(CLI::NonNegativeNumber);
  cmd_fit->add_option("--out", fit.out, "optional result CSV path");

  Fig1Options fig1;
  CLI::App* cmd_fig1 =
      app.add_subcommand("fig1", "distribution curves and zero-momentum inset");
  cmd_fig1->add_option("--n", fig1.n, "particle number")->check(CLI::PositiveNumber);
  cmd_fig1->add_option("--temps", fig1.temps,
                       "curve temperatures in units of T0 (default 0.5..1.5)");
  cmd_fig1->add_option("--p-max", fig1.p_max, "cut extent in momentum-scale units")
      ->check(CLI::PositiveNumber);
  cmd_fig1->add_option("--points", fig1.points, "points per curve")
      ->check(CLI::Range(2, 4096));
  cmd_fig1->add_option("--inset-min", fig1.inset_min, "inset grid low (units of T0)");
  cmd_fig1->add_option("--inset-max", fig1.inset_max, "inset grid high (units of T0)");
  cmd_fig1->add_option("--inset-steps", fig1.inset_steps, "inset grid points")
      ->check(CLI::Range(2, 4096));
  cmd_fig1->add_option("--out-curves", fig1.out_curves, "curves CSV path");
  cmd_fig1->add_option("--out-inset", fig1.out_inset, "inset CSV path");

  Fig2Options fig2;
  CLI::App* cmd_fig2 = app.add_subcommand("fig2", "thermometry bias sweep");
  cmd_fig2->add_option("--n-list", fig2.n_list,
                       "particle numbers (default 500,1000,2000)");
  cmd_fig2->add_option("--t-min", fig2.t_min, "sweep low in units of T0")
      ->check(CLI::PositiveNumber);
  cmd_fig2->add_option("--t-max", fig2.t_max, "sweep high in units of T0")
      ->check(CLI::PositiveNumber);
  cmd_fig2->add_option("--steps", fig2.steps, "temperature points per branch")
      ->check(CLI::Range(2, 4096));
  cmd_fig2->add_option("--pc", fig2.p_c, "tail threshold in momentum-scale units")
      ->check(CLI::NonNegativeNumber);
  cmd_fig2->add_option("--nodes", fig2.nodes, "quadrature nodes per dimension")
      ->check(CLI::Range(8, 4096));
  cmd_fig2->add_option("--rel-tol", fig2.rel_tol, "fit convergence tolerance")
      ->check(CLI::PositiveNumber);
  cmd_fig2->add_option("--amplitude", fig2.amplitude, "amplitude treatment")
      ->check(CLI::IsMember({"per-particle", "free-scale"}));
  cmd_fig2->add_option("--out", fig2.out, "output CSV path");

  CLI::App* cmd_selftest =
      app.add_subcommand("selftest", "run the cross-module check battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (cmd_dist->parsed()) return run_dist(dist);
  if (cmd_fit->parsed()) return run_fit(fit);
  if (cmd_fig1->parsed()) return run_fig1(fig1);
  if (cmd_fig2->parsed()) return run_fig2(fig2);
  if (cmd_selftest->parsed()) return run_selftest_cmd();
  return kExitUsage;  // unreachable: require_subcommand(1)
}
