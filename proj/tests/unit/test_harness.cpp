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

#include "support.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "themis/harness.hpp"

using namespace themis;

namespace {

const std::string kScenarios = THEMIS_SCENARIO_DIR;

std::string config_error(std::string_view text) {
  try {
    parse_scenario(text, "t.toml");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfigError);
    return e.what();
  }
  FAIL_CHECK("scenario accepted");
  return {};
}

constexpr std::string_view kMinimal = R"(
catalog_size = 3
[users]
count = 1
vectors = [[3, 0, 2]]
[pool]
k = 1
nu = 1
draw_pool = 1
[[advertiser]]
ads = [0, 1, 2]
policies = [4, 20, 12]
fee = 10
)";

std::string logs_of(const RunResult& run) {
  std::ostringstream out;
  write_block_logs(out, run);
  return out.str();
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("scenario parsing: defaults and resolution") {
  const auto s = parse_scenario(kMinimal);
  CHECK(s.catalog_size == 3);
  CHECK(s.epoch_blocks == 16);
  CHECK(s.chains == 1);
  CHECK(s.cf_mode == CfMode::kHonest);
  const auto advs = resolve_advertisers(s);
  REQUIRE(advs.size() == 1);
  CHECK(advs[0].impressions == std::vector<std::uint64_t>{3, 3, 3});
  CHECK(resolve_interactions(s) == std::vector<std::vector<std::uint64_t>>{{3, 0, 2}});
}

TEST_CASE("scenario errors carry field paths") {
  CHECK(config_error("catalog_size = 3\n[users]\ncount = 1\n").find("advertiser") !=
        std::string::npos);
  std::string text(kMinimal);
  CHECK(config_error(text + "bogus = 1\n").find("bogus: unknown field") != std::string::npos);
  auto bad_len = text;
  bad_len.replace(bad_len.find("[3, 0, 2]"), 9, "[3, 0]");
  CHECK(config_error(bad_len).find("users.vectors[0]: length 2") != std::string::npos);
  auto bad_pool = text;
  bad_pool.replace(bad_pool.find("nu = 1"), 6, "nu = 2");
  CHECK(config_error(bad_pool).find("pool:") != std::string::npos);
  auto neg = text;
  neg.replace(neg.find("fee = 10"), 8, "fee = -1");
  CHECK(config_error(neg).find("advertiser[0].fee") != std::string::npos);
  auto overlap = text + "[[advertiser]]\nads = [2]\npolicies = [1]\n";
  CHECK(config_error(overlap).find("advertiser[1].ads: ad 2 already assigned") !=
        std::string::npos);
  CHECK(config_error("catalog_size = [").find("t.toml:1:") != std::string::npos);
  // top-level keys must precede the first table
  CHECK(config_error("cf_mode = \"sneaky\"\n" + text).find("cf_mode") != std::string::npos);
  CHECK_ERROR(load_scenario("/nonexistent/x.toml"), ErrorCode::kConfigError);
}

TEST_CASE("generated advertisers cover the catalog and are seed-deterministic") {
  const auto s = parse_scenario(R"(
seed = 5
catalog_size = 10
[users]
count = 4
[pool]
k = 1
nu = 1
draw_pool = 1
[advertisers]
count = 3
)");
  const auto a = resolve_advertisers(s);
  CHECK(a.size() == 3);
  std::vector<int> seen(10, 0);
  for (const auto& adv : a) {
    for (auto ad : adv.ads) seen[ad]++;
    for (auto p : adv.policies) CHECK((p >= 1 && p <= 20));
  }
  CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  CHECK(resolve_advertisers(s)[1].policies == a[1].policies);
  CHECK(resolve_interactions(s) == resolve_interactions(s));
}

TEST_CASE("strawman scenario pays 36 and reports are byte-identical per seed") {
  const auto s = load_scenario(kScenarios + "/strawman.toml");
  const auto r1 = run_scenario(s);
  const auto r2 = run_scenario(s);
  CHECK(r1.clean());
  CHECK(r1.exit_code() == 0);
  REQUIRE(r1.chains.size() == 1);
  REQUIRE(r1.chains[0].user_results.size() == 1);
  const auto& u = r1.chains[0].user_results[0];
  CHECK(u.oracle == 36);
  CHECK(u.recovered == 36);
  CHECK(u.paid == 36);
  CHECK(report_json(r1) == report_json(r2));
  CHECK(logs_of(r1) == logs_of(r2));
  auto other = s;
  other.seed = s.seed + 1;
  CHECK(report_json(run_scenario(other)) != report_json(r1));
}

TEST_CASE("underpay and divert are detected") {
  const auto under = run_scenario(load_scenario(kScenarios + "/underpay.toml"));
  CHECK(under.clean());
  const auto rep = nlohmann::json::parse(report_json(under));
  const auto& ch = rep["chains"][0];
  CHECK(ch["campaign"]["status"] == "failed");
  CHECK(ch["campaign"]["fees_paid"] == false);
  REQUIRE(ch["complaints"].size() == 1);
  CHECK(ch["complaints"][0]["kind"] == "user");
  CHECK(ch["complaints"][0]["validated"] == true);

  const auto div = run_scenario(load_scenario(kScenarios + "/divert.toml"));
  CHECK(div.clean());
  std::size_t flagged = 0;
  for (const auto& c : div.chains[0].complaints) flagged += c.kind == "advertiser" && c.validated;
  CHECK(flagged == 1);
}

TEST_CASE("verify-run: clean, mutated block, injected oracle mismatch") {
  const auto run = run_scenario(load_scenario(kScenarios + "/underpay.toml"));
  const auto report = report_json(run);
  const auto logs = logs_of(run);
  {
    std::istringstream in(logs);
    const auto v = verify_run(report, in);
    CHECK(v.clean());
    CHECK(v.users == 4);
  }
  {
    auto mutated = logs;
    const auto pos = mutated.find("\"function\":\"StoreFunds\"");
    REQUIRE(pos != std::string::npos);
    const auto args = mutated.rfind("\"args\":\"", pos);
    REQUIRE(args != std::string::npos);
    auto& c = mutated[args + 8];
    c = c == '0' ? '1' : '0';
    std::istringstream in(mutated);
    const auto v = verify_run(report, in);
    CHECK_FALSE(v.clean());
  }
  {
    auto j = nlohmann::json::parse(report);
    auto& x = j["escrow"]["interactions"]["2"];
    x[0] = x[0].get<std::uint64_t>() + 1;
    std::istringstream in(logs);
    const auto v = verify_run(j.dump(), in);
    REQUIRE_FALSE(v.clean());
    bool named = false;
    for (const auto& s : v.violations) named = named || s.rfind("user 2:", 0) == 0;
    CHECK(named);
  }
  {
    std::istringstream in(logs);
    CHECK_ERROR(verify_run("{not json", in), ErrorCode::kConfigError);
  }
}

TEST_CASE("multi-chain runs equal single-chain runs of each partition") {
  const auto s = load_scenario(kScenarios + "/multichain.toml");
  const auto multi = run_scenario(s);
  CHECK(multi.clean());
  const auto vectors = resolve_interactions(s);
  for (std::uint32_t c = 0; c < s.chains; ++c) {
    auto part = s;
    part.chains = 1;
    part.vectors.clear();
    for (std::uint32_t u = c; u < vectors.size(); u += s.chains) part.vectors.push_back(vectors[u]);
    part.users = static_cast<std::uint32_t>(part.vectors.size());
    const auto single = run_scenario(part);
    CHECK(single.clean());
    const auto& a = multi.chains[c];
    const auto& b = single.chains[0];
    REQUIRE(a.user_results.size() == b.user_results.size());
    for (std::size_t i = 0; i < a.user_results.size(); ++i) {
      CHECK(a.user_results[i].paid == b.user_results[i].paid);
      CHECK(a.user_results[i].oracle == b.user_results[i].oracle);
    }
    const auto* fa = a.chain->view<FundContract>(a.deployment.fsc);
    const auto* fb = b.chain->view<FundContract>(b.deployment.fsc);
    CHECK(fa->aggr_clicks() == fb->aggr_clicks());
    // stakes differ (default impressions scale with the user count), spend must not
    for (std::size_t i = 0; i < a.advertiser_results.size(); ++i) {
      CHECK(a.advertiser_results[i].spent == b.advertiser_results[i].spent);
      CHECK(a.advertiser_results[i].staked - a.advertiser_results[i].refunded ==
            a.advertiser_results[i].spent + a.advertiser_results[i].fee);
    }
  }
}

TEST_CASE("summaries and bench shape") {
  const auto s = summarize({3, 1, 2, 10});
  CHECK(s.median == doctest::Approx(2.5));
  CHECK(s.min == 1);
  CHECK(s.max == 10);
  CHECK(summarize({}).median == 0);

  BenchConfig none;
  none.users = {0};
  const auto empty = run_bench(none);
  CHECK(empty.ops.empty());
  CHECK(empty.throughput.empty());

  BenchConfig tiny;
  tiny.catalogs = {8};
  tiny.users = {4};
  tiny.chains = {1, 2};
  tiny.repetitions = 1;
  const auto r = run_bench(tiny);
  CHECK(r.ops.size() == 4);
  REQUIRE(r.throughput.size() == 2);
  CHECK(r.throughput[0].ratio == doctest::Approx(1.0));
  CHECK(r.throughput[1].chain_seconds.size() == 2);
  CHECK(bench_table(r).find("users/day") != std::string::npos);
  CHECK(nlohmann::json::parse(bench_json(r))["throughput"].size() == 2);
}

}  // TEST_SUITE
