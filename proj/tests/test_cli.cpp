// Copyright (c) 2026 bosetrap developers
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the command-line binary: exit codes, CSV schema,
// determinism of the payload, and value spot checks.  The binary path
// is injected by the build as BOSETRAP_CLI_PATH.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(BOSETRAP_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  while (std::fgets(buffer, sizeof(buffer), pipe) != nullptr) result.output += buffer;
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string temp_dir() {
  static std::string dir = [] {
    char pattern[] = "/tmp/bosetrap_cli_XXXXXX";
    const char* made = mkdtemp(pattern);
    REQUIRE(made != nullptr);
    return std::string(made);
  }();
  return dir;
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  REQUIRE(file.good());
  std::ostringstream out;
  out << file.rdbuf();
  return out.str();
}

/// File content with every `#` manifest line removed; the timestamp
/// lives there, so this is the determinism comparison payload.
std::string payload(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line, body;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    body += line;
    body += '\n';
  }
  return body;
}

std::vector<std::vector<double>> data_rows(const std::string& path, int columns) {
  std::istringstream in(read_file(path));
  std::string line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    const char* cursor = line.c_str();
    char* end = nullptr;
    bool numeric = true;
    for (int c = 0; c < columns; ++c) {
      const double value = std::strtod(cursor, &end);
      if (end == cursor) {
        numeric = false;
        break;
      }
      row.push_back(value);
      cursor = end;
      if (*cursor == ',') ++cursor;
    }
    if (numeric) rows.push_back(row);  // skips the column-header line
  }
  return rows;
}

}  // namespace

TEST_CASE("missing or unknown subcommands are usage errors") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("dist --no-such-flag 1").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("dist: payload is deterministic and finite") {
  const std::string out_a = temp_dir() + "/dist_a.csv";
  const std::string out_b = temp_dir() + "/dist_b.csv";
  const std::string flags =
      "dist --n 4 --temp 1.25 --omega-z 1.3 --inter-omega 0.1 --points 24 --out ";
  CHECK(run_cli(flags + out_a).exit_code == 0);
  CHECK(run_cli(flags + out_b).exit_code == 0);
  CHECK(payload(out_a) == payload(out_b));

  const auto rows = data_rows(out_a, 3);
  REQUIRE(rows.size() == 24 * 24);
  for (const auto& row : rows) {
    REQUIRE(row.size() == 3);
    CHECK(std::isfinite(row[2]));
    CHECK(row[2] >= 0.0);
  }
  CHECK(read_file(out_a).find("# command: dist") != std::string::npos);
  CHECK(read_file(out_a).find("p_rho,p_z,n") != std::string::npos);
}

TEST_CASE("dist: frozen maxwell peak value") {
  const std::string out = temp_dir() + "/maxwell.csv";
  CHECK(run_cli("dist --model maxwell --n 1 --temp 1 --points 2 --p-max 1 "
                "--normalization per-particle --out " +
                out)
            .exit_code == 0);
  const auto rows = data_rows(out, 3);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0][0] == 0.0);
  CHECK(rows[0][1] == 0.0);
  CHECK(rows[0][2] == doctest::Approx(0.06349363593424097).epsilon(1e-15));
}

TEST_CASE("dist: ideal family with coupling is rejected as usage") {
  CHECK(run_cli("dist --model ideal --n 4 --inter-omega 0.1").exit_code == 2);
}

TEST_CASE("dist: sinh variants coincide byte-for-byte without coupling") {
  const std::string out_a = temp_dir() + "/variant_ren.csv";
  const std::string out_b = temp_dir() + "/variant_conf.csv";
  const std::string flags = "dist --model bose --n 8 --temp 2.0 --points 16 ";
  CHECK(run_cli(flags + "--sinh-variant renormalized --out " + out_a).exit_code == 0);
  CHECK(run_cli(flags + "--sinh-variant confinement --out " + out_b).exit_code == 0);
  CHECK(payload(out_a) == payload(out_b));
}

TEST_CASE("fit: recovers the temperature of a generated grid") {
  const std::string grid = temp_dir() + "/target.csv";
  CHECK(run_cli("dist --model ideal --n 50 --temp 4.0 --normalization per-particle "
                "--points 200 --out " +
                grid)
            .exit_code == 0);

  const RunResult fit = run_cli("fit --in " + grid +
                                " --procedure be --n 50 --temp-lo 2 --temp-hi 8 "
                                "--nodes 64");
  CHECK(fit.exit_code == 0);
  const std::size_t at = fit.output.find("fitted_temperature = ");
  REQUIRE(at != std::string::npos);
  const double fitted = std::strtod(fit.output.c_str() + at + 21, nullptr);
  CHECK(fitted == doctest::Approx(4.0).epsilon(0.01));

  CHECK(run_cli("fit --in /nonexistent.csv").exit_code == 2);
}

TEST_CASE("fig1: normalized curves and monotone inset") {
  const std::string curves = temp_dir() + "/curves.csv";
  const std::string inset = temp_dir() + "/inset.csv";
  CHECK(run_cli("fig1 --n 20 --temps 1.0 --points 16 --inset-steps 5 --out-curves " +
                curves + " --out-inset " + inset)
            .exit_code == 0);

  const auto curve_rows = data_rows(curves, 3);
  REQUIRE(curve_rows.size() == 16);
  CHECK(curve_rows[0][1] == 0.0);
  CHECK(curve_rows[0][2] == 1.0);  // normalized to the zero-momentum value
  for (std::size_t i = 1; i < curve_rows.size(); ++i)
    CHECK(curve_rows[i][2] < curve_rows[i - 1][2]);  // monotone decay of the cut

  const auto inset_rows = data_rows(inset, 2);
  REQUIRE(inset_rows.size() == 5);
  for (std::size_t i = 1; i < inset_rows.size(); ++i) {
    CHECK(inset_rows[i][0] > inset_rows[i - 1][0]);
    CHECK(inset_rows[i][1] < inset_rows[i - 1][1]);  // colder means taller peak
  }
}

TEST_CASE("fig2: small sweep succeeds with ok rows") {
  const std::string out = temp_dir() + "/sweep.csv";
  CHECK(run_cli("fig2 --n-list 20 --steps 3 --t-min 0.8 --t-max 1.6 --nodes 32 --out " +
                out)
            .exit_code == 0);
  const auto rows = data_rows(out, 4);
  REQUIRE(rows.size() == 3);
  const std::string text = read_file(out);
  CHECK(text.find(",ok") != std::string::npos);
  CHECK(text.find("failed") == std::string::npos);
  for (const auto& row : rows) {
    CHECK(row[0] == 20.0);
    CHECK(std::isfinite(row[3]));
  }
}

TEST_CASE("selftest: battery passes end to end") {
  const RunResult result = run_cli("selftest");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("[PASS]") != std::string::npos);
  CHECK(result.output.find("[FAIL]") == std::string::npos);
  CHECK(result.output.find("OK: 0 failures") != std::string::npos);
}
