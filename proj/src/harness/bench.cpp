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

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "campaign.hpp"
#include "themis/error.hpp"

namespace themis {

namespace {

// One advertiser buys the whole catalog; a 1-of-1 pool keeps setup cheap so the
// measurements are dominated by the per-user work.
detail::CampaignConfig bench_campaign(std::uint32_t catalog, std::uint64_t seed) {
  Scenario s;
  s.name = "bench";
  s.seed = seed;
  s.catalog_size = catalog;
  s.reward_cap = kRewardBound;
  s.users = 1;
  s.max_interactions = 3;
  AdvertiserGen gen;
  gen.count = 1;
  s.generated = gen;
  return detail::campaign_config(s);
}

std::vector<std::uint64_t> random_vector(std::uint32_t n, Rng rng) {
  std::vector<std::uint64_t> v(n);
  for (auto& x : v) x = rng.range(0, 3);
  return v;
}

}  // namespace

ThroughputRow measure_throughput(std::uint32_t catalog, std::uint32_t users,
                                 std::uint32_t chains, std::uint64_t seed,
                                 std::uint32_t repetitions) {
  require(chains > 0 && repetitions > 0, ErrorCode::kConfigError,
          "throughput needs at least one chain and one repetition");
  ThroughputRow row;
  row.catalog = catalog;
  row.users = users;
  row.chains = chains;
  const auto base = bench_campaign(catalog, seed);
  const Rng vec_rng = Rng(seed).fork("bench-users");
  // Chains are measured one after another on this host; the row reports the
  // makespan they would have if each ran on its own validator set.
  std::vector<std::vector<double>> samples(chains);
  for (std::uint32_t rep = 0; rep < repetitions; ++rep) {
    auto ledgers = multi_chain(chains, detail::campaign_genesis(base), campaign_registry());
    for (std::uint32_t c = 0; c < chains; ++c) {
      auto config = base;
      for (std::uint32_t u = c; u < users; u += chains) {
        config.users.emplace_back(u, random_vector(catalog, vec_rng.fork("user", u)));
      }
      detail::Campaign campaign(config, std::move(ledgers[c]), c);
      const bool ok = campaign.setup() && campaign.claims() && campaign.requests();
      require(ok, ErrorCode::kInvalidArgument,
              "bench campaign failed: " + (campaign.result().violations.empty()
                                               ? std::string("?")
                                               : campaign.result().violations.front()));
      samples[c].push_back(campaign.result().timings.chain_seconds);
    }
  }
  for (auto& s : samples) row.chain_seconds.push_back(summarize(std::move(s)).median);
  row.makespan = *std::max_element(row.chain_seconds.begin(), row.chain_seconds.end());
  row.users_per_day = row.makespan > 0 ? users / row.makespan * 86400.0 : 0;
  return row;
}

BenchResult run_bench(const BenchConfig& config) {
  BenchResult result;
  if (std::none_of(config.users.begin(), config.users.end(),
                   [](std::uint32_t u) { return u > 0; })) {
    return result;  // nothing to measure
  }
  for (const auto n : config.catalogs) {
    Timings all;
    for (std::uint32_t rep = 0; rep < config.repetitions; ++rep) {
      auto c = bench_campaign(n, config.seed + rep);
      c.users.emplace_back(0, random_vector(n, Rng(config.seed + rep).fork("bench-op")));
      auto ledgers = multi_chain(1, detail::campaign_genesis(c), campaign_registry());
      detail::Campaign campaign(c, std::move(ledgers[0]), 0);
      const bool ok = campaign.setup() && campaign.claims() && campaign.requests() &&
                      campaign.analytics() && campaign.settle();
      require(ok, ErrorCode::kInvalidArgument, "bench campaign failed");
      const auto& t = campaign.result().timings;
      auto add = [](std::vector<double>& to, const std::vector<double>& from) {
        to.insert(to.end(), from.begin(), from.end());
      };
      add(all.interaction_encryption, t.interaction_encryption);
      add(all.request_generation, t.request_generation);
      add(all.aggregate_computation, t.aggregate_computation);
      add(all.settlement, t.settlement);
    }
    const std::pair<const char*, const std::vector<double>*> ops[] = {
        {"interaction_encryption", &all.interaction_encryption},
        {"request_generation", &all.request_generation},
        {"aggregate_computation", &all.aggregate_computation},
        {"settlement", &all.settlement}};
    for (const auto& [name, samples] : ops) {
      const auto s = summarize(*samples);
      result.ops.push_back({name, n, s.median, s.min, s.max});
    }
  }
  for (const auto n : config.catalogs) {
    for (const auto u : config.users) {
      if (u == 0) continue;
      double single = 0;
      for (const auto c : config.chains) {
        auto row = measure_throughput(n, u, c, config.seed, config.repetitions);
        if (c == 1) single = row.users_per_day;
        row.ratio = single > 0 ? row.users_per_day / single : 0;
        result.throughput.push_back(std::move(row));
      }
    }
  }
  return result;
}

std::string bench_json(const BenchResult& r) {
  using nlohmann::json;
  json ops = json::array();
  for (const auto& o : r.ops) {
    ops.push_back({{"op", o.op}, {"catalog", o.catalog}, {"median", o.median},
                   {"min", o.min}, {"max", o.max}});
  }
  json rows = json::array();
  for (const auto& t : r.throughput) {
    rows.push_back({{"catalog", t.catalog}, {"users", t.users}, {"chains", t.chains},
                    {"chain_seconds", t.chain_seconds}, {"makespan", t.makespan},
                    {"users_per_day", t.users_per_day}, {"ratio", t.ratio}});
  }
  return json{{"operations", ops}, {"throughput", rows}}.dump(2) + "\n";
}

std::string bench_table(const BenchResult& r) {
  std::ostringstream out;
  char line[160];
  out << "operation                 N    median(ms)  min(ms)  max(ms)\n";
  for (const auto& o : r.ops) {
    std::snprintf(line, sizeof line, "%-24s %4u %11.3f %8.3f %8.3f\n", o.op.c_str(), o.catalog,
                  o.median * 1e3, o.min * 1e3, o.max * 1e3);
    out << line;
  }
  out << "\n   N  users  chains  makespan(s)  users/day     ratio\n";
  for (const auto& t : r.throughput) {
    std::snprintf(line, sizeof line, "%4u %6u %7u %12.4f %10.0f %9.2f\n", t.catalog, t.users,
                  t.chains, t.makespan, t.users_per_day, t.ratio);
    out << line;
  }
  return out.str();
}

}  // namespace themis
