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

// Scenario loading, end-to-end campaign runs, audit replay and benchmarks.
//
// Scenario files are TOML:
//
//   name = "strawman"          # optional
//   seed = 7
//   catalog_size = 3           # N
//   epoch_blocks = 16          # campaign length after initialisation
//   reward_cap = 10000         # per-period cap on a payment request
//   chains = 1                 # independent chains; users are dealt round-robin
//   cf_mode = "honest"         # honest | underpay | divert
//   cf_deviation = 5           # tokens short-paid (underpay) or diverted (divert)
//
//   [users]
//   count = 1
//   max_interactions = 3       # counts drawn uniformly from [0, max_interactions]
//   vectors = [[3, 0, 2]]      # optional explicit vectors, one per user
//
//   [pool]
//   k = 1                      # decryption threshold
//   nu = 1                     # expected winners
//   draw_pool = 1              # registrants D
//   vrf_space = 4294967296     # p, optional
//   epsilon = "beacon-1"       # optional lottery seed, defaults to one derived from seed
//
//   [[advertiser]]             # explicit advertisers...
//   ads = [0, 1, 2]
//   policies = [4, 20, 12]
//   fee = 10
//   impressions = [10, 10, 10] # optional
//
//   [advertisers]              # ...or generated ones (not both)
//   count = 3
//   policy_min = 1
//   policy_max = 20
//   fee = 10
//
// Default impressions per ad: users.count * max_interactions (the largest
// explicit count when vectors are given), so honest runs never overspend.

#ifndef THEMIS_HARNESS_HPP_
#define THEMIS_HARNESS_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "themis/actors.hpp"

namespace themis {

struct AdvertiserSpec {
  std::vector<std::uint32_t> ads;
  std::vector<std::uint64_t> policies;
  std::vector<std::uint64_t> impressions;  // empty: default
  std::uint64_t fee = 0;
};

struct AdvertiserGen {
  std::uint32_t count = 0;
  std::uint64_t policy_min = 1;
  std::uint64_t policy_max = 20;
  std::uint64_t fee = 10;
};

struct Scenario {
  std::string name = "scenario";
  std::uint64_t seed = 1;
  std::uint32_t catalog_size = 0;
  std::uint64_t epoch_blocks = 16;
  std::uint64_t reward_cap = kDefaultRewardCap;
  std::uint32_t chains = 1;
  CfMode cf_mode = CfMode::kHonest;
  std::uint64_t cf_deviation = 1;

  std::uint32_t users = 0;
  std::uint64_t max_interactions = 3;
  std::vector<std::vector<std::uint64_t>> vectors;  // explicit, optional

  PoolParams pool{1, 1, 1, 1ull << 32};
  std::string epsilon;  // empty: derived from seed

  std::vector<AdvertiserSpec> advertisers;
  std::optional<AdvertiserGen> generated;

  /// Throws kConfigError listing every problem as "field.path: message".
  void validate() const;
};

/// Parses TOML text; `source` names the input in error messages.
Scenario parse_scenario(std::string_view text, std::string_view source = "<string>");
Scenario load_scenario(const std::filesystem::path& path);

/// Advertisers after generation (deterministic in the seed) with default
/// impressions filled in.
std::vector<AdvertiserSpec> resolve_advertisers(const Scenario& s);
/// Interaction vectors for every user (explicit or drawn from the seed).
std::vector<std::vector<std::uint64_t>> resolve_interactions(const Scenario& s);

// ---- campaign runner --------------------------------------------------------------------

struct UserResult {
  std::uint32_t id = 0;
  std::uint32_t chain = 0;
  std::uint64_t oracle = 0;     // plaintext dot product
  std::uint64_t recovered = 0;  // decrypted aggregate
  bool requested = false;
  std::uint64_t paid = 0;       // amount of the note received
  bool complained = false;
  std::string ephemeral_pk;
  std::string payout;
  std::string error;  // first failure, if any
};

struct AdvertiserResult {
  std::uint32_t id = 0;
  std::uint32_t chain = 0;
  std::uint64_t staked = 0;
  std::uint64_t spent = 0;
  std::uint64_t refunded = 0;
  std::uint64_t fee = 0;
  std::uint64_t debt = 0;
  std::uint64_t shortfall = 0;
  std::string audit;
  std::string audit_detail;
};

struct ComplaintResult {
  std::string kind;  // "user" | "advertiser"
  bool validated = false;
  std::string subject;
  std::uint64_t height = 0;
};

/// Wall-clock samples in seconds, per operation class.
struct Timings {
  std::vector<double> interaction_encryption;
  std::vector<double> request_generation;
  std::vector<double> aggregate_computation;
  std::vector<double> settlement;
  double chain_seconds = 0;  // total mining time of the claim and request blocks
};

struct ChainRun {
  std::uint32_t index = 0;
  std::optional<Chain> chain;
  Deployment deployment;
  std::vector<std::uint64_t> policies;  // per ad, escrowed for audits
  std::vector<UserAgent> users;
  std::vector<UserResult> user_results;
  std::vector<AdvertiserResult> advertiser_results;
  std::vector<ComplaintResult> complaints;
  PoolSetup pool;
  SettlementReport settlement;
  std::vector<std::string> violations;
  Timings timings;
};

struct Invariant {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct RunResult {
  Scenario scenario;
  std::vector<ChainRun> chains;
  std::vector<Invariant> invariants;

  bool clean() const;
  int exit_code() const { return clean() ? 0 : 1; }
};

RunResult run_scenario(const Scenario& scenario);

/// Deterministic report (no wall-clock data), pretty-printed JSON.
std::string report_json(const RunResult& run);
/// Timing breakdown: median/min/max per operation class and per chain.
std::string timings_json(const RunResult& run);
void write_block_logs(std::ostream& out, const RunResult& run);

// ---- audit replay ---------------------------------------------------------------------

struct VerifyResult {
  std::vector<std::string> violations;
  std::size_t blocks = 0;
  std::size_t users = 0;

  bool clean() const { return violations.empty(); }
};

/// Replays the block log and checks the report against it, recomputing each
/// reward from the escrowed plaintexts. Throws kConfigError on unreadable
/// input.
VerifyResult verify_run(std::string_view report_text, std::istream& block_log);

// ---- benchmark --------------------------------------------------------------------------

struct BenchConfig {
  std::vector<std::uint32_t> catalogs{64, 128, 256};
  std::vector<std::uint32_t> users{10, 30, 60, 100};
  std::vector<std::uint32_t> chains{1, 2, 3};
  std::uint32_t repetitions = 5;
  std::uint64_t seed = 1;
};

struct OpTiming {
  std::string op;
  std::uint32_t catalog = 0;
  double median = 0, min = 0, max = 0;
};

struct ThroughputRow {
  std::uint32_t catalog = 0;
  std::uint32_t users = 0;
  std::uint32_t chains = 0;
  std::vector<double> chain_seconds;  // per chain, run one after another
  double makespan = 0;                // max over chains: chains run in parallel
  double users_per_day = 0;
  double ratio = 0;                   // vs. the one-chain row, when present
};

struct BenchResult {
  std::vector<OpTiming> ops;
  std::vector<ThroughputRow> throughput;
};

BenchResult run_bench(const BenchConfig& config);
/// Measures one throughput cell: users dealt across `chains` campaigns. Each
/// chain's time is the median over `repetitions` runs.
ThroughputRow measure_throughput(std::uint32_t catalog, std::uint32_t users,
                                 std::uint32_t chains, std::uint64_t seed,
                                 std::uint32_t repetitions = 1);
std::string bench_json(const BenchResult& result);
std::string bench_table(const BenchResult& result);

/// Median / min / max of a sample set (zeros when empty).
struct Summary {
  double median = 0, min = 0, max = 0;
};
Summary summarize(std::vector<double> samples);

}  // namespace themis

#endif  // THEMIS_HARNESS_HPP_
