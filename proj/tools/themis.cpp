/*
 * Copyright 2026 The themis-sim Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// themis: run campaign scenarios, benchmark, and audit recorded runs.
//
// Exit codes: 0 clean, 1 invariant violation, 2 configuration error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "themis/error.hpp"
#include "themis/harness.hpp"

namespace {

constexpr int kExitClean = 0;
constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) themis::fail(themis::ErrorCode::kConfigError, path + ": cannot open");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) themis::fail(themis::ErrorCode::kConfigError, path + ": cannot write");
  out << text;
}

int cmd_run(const std::string& scenario_path, std::optional<std::uint64_t> seed,
            const std::string& out, const std::string& blocks, const std::string& timings) {
  auto scenario = themis::load_scenario(scenario_path);
  if (seed) scenario.seed = *seed;
  const auto run = themis::run_scenario(scenario);
  const auto report = themis::report_json(run);
  if (out.empty() || out == "-") {
    std::cout << report;
  } else {
    write_file(out, report);
  }
  if (!blocks.empty()) {
    std::ofstream b(blocks, std::ios::binary);
    if (!b) themis::fail(themis::ErrorCode::kConfigError, blocks + ": cannot write");
    themis::write_block_logs(b, run);
  }
  if (!timings.empty()) write_file(timings, themis::timings_json(run));
  for (const auto& inv : run.invariants) {
    std::cerr << (inv.ok ? "ok   " : "FAIL ") << inv.name;
    if (!inv.ok) std::cerr << ": " << inv.detail;
    std::cerr << "\n";
  }
  return run.exit_code();
}

int cmd_bench(const themis::BenchConfig& config, const std::string& json_out) {
  const auto result = themis::run_bench(config);
  std::cout << themis::bench_table(result);
  if (!json_out.empty()) write_file(json_out, themis::bench_json(result));
  return kExitClean;
}

int cmd_verify(const std::string& report_path, const std::string& blocks_path) {
  const auto report = read_file(report_path);
  std::ifstream blocks(blocks_path, std::ios::binary);
  if (!blocks) themis::fail(themis::ErrorCode::kConfigError, blocks_path + ": cannot open");
  const auto v = themis::verify_run(report, blocks);
  for (const auto& s : v.violations) std::cout << "violation: " << s << "\n";
  std::cout << (v.clean() ? "clean" : "violations found") << " (" << v.blocks << " blocks, "
            << v.users << " users)\n";
  return v.clean() ? kExitClean : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"themis: privacy-preserving ad campaign simulator"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "execute a scenario end to end");
  std::string scenario, out, blocks, timings;
  std::optional<std::uint64_t> seed;
  run->add_option("--scenario", scenario, "scenario TOML file")->required();
  run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--out", out, "report path (default: stdout)");
  run->add_option("--blocks", blocks, "write the block log (JSON lines)");
  run->add_option("--timings", timings, "write wall-clock timings (JSON)");

  auto* bench = app.add_subcommand("bench", "time operations and multi-chain throughput");
  themis::BenchConfig bc;
  std::string bench_out;
  bench->add_option("--catalog", bc.catalogs, "catalog sizes")->delimiter(',');
  bench->add_option("--users", bc.users, "user counts")->delimiter(',');
  bench->add_option("--chains", bc.chains, "chain counts")->delimiter(',');
  bench->add_option("--reps", bc.repetitions, "repetitions per timing and per throughput cell")
      ->check(CLI::PositiveNumber);
  bench->add_option("--seed", bc.seed, "seed");
  bench->add_option("--json", bench_out, "also write results as JSON");

  auto* verify = app.add_subcommand("verify-run", "replay a block log and audit a report");
  std::string report_path, blocks_path;
  verify->add_option("--report", report_path, "report JSON")->required();
  verify->add_option("--blocks", blocks_path, "block log")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitClean : kExitConfig;
  }

  try {
    if (*run) return cmd_run(scenario, seed, out, blocks, timings);
    if (*bench) return cmd_bench(bc, bench_out);
    if (*verify) return cmd_verify(report_path, blocks_path);
  } catch (const themis::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == themis::ErrorCode::kConfigError ? kExitConfig : kExitViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitConfig;
}
