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

// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
// Tolerances are fixed here and never read from the environment.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "themis/dkg.hpp"
#include "themis/error.hpp"
#include "themis/harness.hpp"
#include "themis/proofs.hpp"

using namespace themis;

namespace {

// ---- pinned tolerances ----
constexpr std::size_t kE2eScenarios = 20;
constexpr double kE2eSecondsPerScenario = 60.0;
constexpr std::size_t kHomomorphismSamples = 1000;
constexpr std::uint64_t kHomomorphismBound = 1u << 16;
constexpr std::size_t kProofSamples = 200;
constexpr std::uint32_t kThresholdMaxN = 6;
constexpr std::uint64_t kLotteryD = 1000;
constexpr std::uint64_t kLotteryNu = 50;
constexpr std::size_t kLotterySeeds = 100;
constexpr std::size_t kLotteryMinWithin = 95;
constexpr double kLotterySigmas = 3.0;
constexpr std::uint32_t kPerfCatalog = 256;
constexpr std::uint32_t kPerfReps = 3;
constexpr double kEncryptSeconds = 1.0;
constexpr double kRequestSeconds = 5.0;
constexpr std::uint32_t kScaleCatalog = 64;
constexpr std::uint32_t kScaleUsers = 30;
constexpr std::uint32_t kScaleReps = 7;
constexpr double kScaleMinRatio = 2.5;

const std::string kScenarios = THEMIS_SCENARIO_DIR;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string logs_of(const RunResult& run) {
  std::ostringstream out;
  write_block_logs(out, run);
  return out.str();
}

std::string fmt(const char* f, double a, double b = 0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

// 1 ---------------------------------------------------------------------------------------
Outcome end_to_end() {
  double slowest = 0;
  std::size_t users = 0;
  for (std::size_t i = 0; i < kE2eScenarios; ++i) {
    Scenario s;
    s.name = "e2e-" + std::to_string(i);
    s.seed = 1000 + i;
    s.catalog_size = 64;
    s.users = 20;
    s.pool = {5, 3, 50, 1ull << 32};
    AdvertiserGen gen;
    gen.count = 3;
    s.generated = gen;
    s.validate();

    const auto t0 = std::chrono::steady_clock::now();
    const auto run = run_scenario(s);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    slowest = std::max(slowest, secs);
    const auto tag = "scenario seed " + std::to_string(s.seed) + ": ";
    if (secs >= kE2eSecondsPerScenario) return {false, tag + fmt("took %.1f s", secs)};
    if (run.chains.size() != 1) return {false, tag + "expected one chain"};

    const auto advs = resolve_advertisers(s);
    const auto xs = resolve_interactions(s);
    std::vector<std::uint64_t> policy(s.catalog_size, 0);
    std::vector<std::uint32_t> owner(s.catalog_size, 0);
    for (std::uint32_t a = 0; a < advs.size(); ++a) {
      for (std::size_t j = 0; j < advs[a].ads.size(); ++j) {
        policy[advs[a].ads[j]] = advs[a].policies[j];
        owner[advs[a].ads[j]] = a;
      }
    }
    const auto& ch = run.chains[0];
    if (ch.user_results.size() != xs.size()) return {false, tag + "user count"};
    std::vector<std::uint64_t> totals(s.catalog_size, 0);
    std::vector<std::uint64_t> owed(advs.size(), 0);
    for (const auto& u : ch.user_results) {
      const auto& x = xs.at(u.id);
      std::uint64_t oracle = 0;
      for (std::size_t j = 0; j < x.size(); ++j) {
        oracle += policy[j] * x[j];
        owed[owner[j]] += policy[j] * x[j];
        totals[j] += x[j];
      }
      if (u.paid != oracle) {
        return {false, tag + "user " + std::to_string(u.id) + " paid " + std::to_string(u.paid) +
                           ", oracle " + std::to_string(oracle)};
      }
      ++users;
    }
    const auto* fsc = ch.chain->view<FundContract>(ch.deployment.fsc);
    if (fsc == nullptr || fsc->aggr_clicks() != totals) {
      return {false, tag + "analytics totals differ from element-wise sums"};
    }
    for (const auto& a : ch.advertiser_results) {
      if (a.spent != owed.at(a.id) || a.staked != a.spent + a.refunded + a.fee) {
        return {false, tag + "advertiser " + std::to_string(a.id) + " stake " +
                           std::to_string(a.staked) + " != payouts " + std::to_string(a.spent) +
                           " + refund " + std::to_string(a.refunded) + " + fee " +
                           std::to_string(a.fee) + " (owed " + std::to_string(owed.at(a.id)) +
                           ")"};
      }
    }
    if (!run.clean()) return {false, tag + "invariant violation"};
  }
  return {true, std::to_string(kE2eScenarios) + " scenarios, " + std::to_string(users) +
                    " users exact, slowest " + fmt("%.1f s", slowest)};
}

// 2 ---------------------------------------------------------------------------------------
Outcome strawman() {
  const auto s = load_scenario(kScenarios + "/strawman.toml");
  const auto run = run_scenario(s);
  const auto advs = resolve_advertisers(s);
  const auto xs = resolve_interactions(s);
  std::vector<std::uint64_t> policy(s.catalog_size, 0);
  for (const auto& a : advs) {
    for (std::size_t j = 0; j < a.ads.size(); ++j) policy[a.ads[j]] = a.policies[j];
  }
  std::uint64_t oracle = 0;
  for (std::size_t j = 0; j < policy.size(); ++j) oracle += policy[j] * xs[0][j];
  const auto paid = run.chains.at(0).user_results.at(0).paid;
  const bool ok = run.clean() && oracle == 36 && paid == oracle;
  return {ok, "oracle " + std::to_string(oracle) + ", paid on-chain " + std::to_string(paid)};
}

// 3 ---------------------------------------------------------------------------------------
Outcome homomorphism() {
  Rng rng(std::uint64_t{3});
  const auto kp = keygen(rng);
  std::size_t add_ok = 0, mul_ok = 0;
  for (std::size_t i = 0; i < kHomomorphismSamples; ++i) {
    const auto m1 = rng.uniform(kHomomorphismBound), m2 = rng.uniform(kHomomorphismBound);
    const auto sum = encrypt(kp.pk, m1, rng) + encrypt(kp.pk, m2, rng);
    add_ok += recover_plaintext(decrypt(kp.sk, sum), 2 * kHomomorphismBound) == m1 + m2;
  }
  for (std::size_t i = 0; i < kHomomorphismSamples; ++i) {
    const auto k = rng.uniform(kHomomorphismBound), m = rng.uniform(kHomomorphismBound);
    const auto ct = scalar_mul_ciphertext(k, encrypt(kp.pk, m, rng));
    // exact in the exponent; a full 2^32 recovery per sample costs ~0.3 s
    mul_ok += decrypt(kp.sk, ct) == Point::base_mul(k * m);
  }
  const bool ok = add_ok == kHomomorphismSamples && mul_ok == kHomomorphismSamples;
  return {ok, "additive " + std::to_string(add_ok) + "/" + std::to_string(kHomomorphismSamples) +
                  ", scalar " + std::to_string(mul_ok) + "/" +
                  std::to_string(kHomomorphismSamples)};
}

// 4 ---------------------------------------------------------------------------------------
Outcome proofs() {
  Rng rng(std::uint64_t{4});
  const auto one = Scalar::from_u64(1);
  const auto& g = Point::generator();
  std::size_t dec_ok = 0, dec_rej = 0, vrf_ok = 0, vrf_rej = 0;
  for (std::size_t i = 0; i < kProofSamples; ++i) {
    const auto kp = keygen(rng);
    const auto m = rng.uniform(1u << 20);
    const auto ct = encrypt(kp.pk, m, rng);
    const auto mg = Point::base_mul(m);
    auto proof = prove_decryption(kp, ct, mg, rng);
    dec_ok += verify_decryption(kp.pk, ct, mg, proof);
    switch (i % 4) {
      case 0: proof.a1 += g; break;
      case 1: proof.a2 += g; break;
      case 2: proof.challenge += one; break;
      default: proof.response += one; break;
    }
    dec_rej += !verify_decryption(kp.pk, ct, mg, proof);
  }
  const std::uint64_t p = 1ull << 32;
  for (std::size_t i = 0; i < kProofSamples; ++i) {
    const auto kp = vrf_keygen(rng);
    Bytes seed(16);
    rng.fill(seed);
    auto out = vrf_eval(kp.sk, seed, p);
    vrf_ok += vrf_verify(kp.pk, seed, out, p);
    switch (i % 4) {
      case 0: out.rand = (out.rand + 1) % p; break;
      case 1: out.proof.gamma += g; break;
      case 2: out.proof.challenge += one; break;
      default: out.proof.response += one; break;
    }
    vrf_rej += !vrf_verify(kp.pk, seed, out, p);
  }
  const auto n = kProofSamples;
  const bool ok = dec_ok == n && dec_rej == n && vrf_ok == n && vrf_rej == n;
  auto frac = [n](std::size_t c) { return std::to_string(c) + "/" + std::to_string(n); };
  return {ok, "decryption verify " + frac(dec_ok) + " reject " + frac(dec_rej) + ", vrf verify " +
                  frac(vrf_ok) + " reject " + frac(vrf_rej)};
}

// 5 ---------------------------------------------------------------------------------------
void for_each_subset(std::uint32_t n, std::uint32_t size,
                     const std::function<void(const std::vector<std::uint32_t>&)>& fn) {
  std::vector<std::uint32_t> idx(size);
  for (std::uint32_t i = 0; i < size; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int i = static_cast<int>(size) - 1;
    while (i >= 0 && idx[i] == n - size + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (auto j = static_cast<std::uint32_t>(i) + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Bytes encode(const ThresholdPublicKey& tpk) {
  ByteWriter w;
  w << tpk;
  return std::move(w).take();
}

Outcome threshold() {
  Rng rng(std::uint64_t{5});
  std::size_t configs = 0, good = 0, bad = 0;
  for (std::uint32_t n = 1; n <= kThresholdMaxN; ++n) {
    for (std::uint32_t k = 1; k <= n; ++k) {
      ++configs;
      std::vector<ParticipantId> ids;
      for (std::uint32_t i = 1; i <= n; ++i) ids.push_back(i);
      SyncChannel channel;
      const auto dkg = dkg_run(ids, k, channel, rng);
      const auto tag = "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": ";
      if (dkg.views.size() != n) return {false, tag + "missing participant views"};
      const auto ref = encode(dkg.tpk);
      for (const auto& [id, view] : dkg.views) {
        if (encode(view) != ref) return {false, tag + "pk_T differs at participant " +
                                                    std::to_string(id)};
      }
      const auto m = rng.uniform(1u << 16);
      const auto ct = encrypt(dkg.tpk.pk, m, rng);
      const auto target = Point::base_mul(m);
      std::vector<PartialDecryption> partials;
      for (auto id : ids) partials.push_back(partial_decrypt(dkg.shares.at(id), ct, rng));

      bool all = true;
      for_each_subset(n, k, [&](const std::vector<std::uint32_t>& s) {
        std::vector<PartialDecryption> pick;
        for (auto i : s) pick.push_back(partials[i]);
        all = all && combine_partials(dkg.tpk, pick, ct) == target;
        ++good;
      });
      if (!all) return {false, tag + "a k-subset failed to reconstruct"};
      if (k < 2) continue;
      for_each_subset(n, k - 1, [&](const std::vector<std::uint32_t>& s) {
        std::vector<PartialDecryption> pick;
        std::vector<ParticipantId> who;
        for (auto i : s) {
          pick.push_back(partials[i]);
          who.push_back(partials[i].index);
        }
        bool refused = false;
        try {
          combine_partials(dkg.tpk, pick, ct);
        } catch (const Error& e) {
          refused = e.code() == ErrorCode::kInsufficientShares;
        }
        // interpolating anyway must not land on the plaintext either
        const auto lambda = lagrange_at_zero(who);
        Point acc = Point::identity();
        for (std::size_t j = 0; j < pick.size(); ++j) acc += lambda[j] * pick[j].share_point;
        all = all && refused && ct.c2 - acc != target;
        ++bad;
      });
      if (!all) return {false, tag + "a (k-1)-subset reconstructed"};
    }
  }
  return {true, std::to_string(configs) + " (n,k) configs, " + std::to_string(good) +
                    " k-subsets reconstruct, " + std::to_string(bad) + " (k-1)-subsets fail"};
}

// 6 ---------------------------------------------------------------------------------------
Outcome lottery() {
  const PoolParams pp{kLotteryNu, 1, kLotteryD, 1ull << 32};
  const auto thr = max_draw(pp);
  const double q = static_cast<double>(kLotteryNu) / kLotteryD;
  const double mean = kLotteryD * q;
  const double sigma = std::sqrt(kLotteryD * q * (1 - q));
  std::size_t within = 0;
  std::uint64_t lo = UINT64_MAX, hi = 0;
  for (std::size_t s = 0; s < kLotterySeeds; ++s) {
    Rng rng(Rng(std::uint64_t{6}).fork("lottery", s));
    Bytes epsilon(32);
    rng.fill(epsilon);
    std::uint64_t wins = 0;
    for (std::uint64_t j = 0; j < kLotteryD; ++j) {
      const auto kp = vrf_keygen(rng);
      wins += draw_winner(vrf_eval(kp.sk, epsilon, pp.p).rand, thr);
    }
    lo = std::min(lo, wins);
    hi = std::max(hi, wins);
    within += std::abs(static_cast<double>(wins) - mean) <= kLotterySigmas * sigma;
  }
  return {within >= kLotteryMinWithin,
          std::to_string(within) + "/" + std::to_string(kLotterySeeds) +
              " runs within 3 sigma (" + fmt("%.1f +- %.1f", mean, kLotterySigmas * sigma) +
              "), winners ranged " + std::to_string(lo) + ".." + std::to_string(hi)};
}

// 7 ---------------------------------------------------------------------------------------
Outcome misbehaviour() {
  const auto us = load_scenario(kScenarios + "/underpay.toml");
  const auto ds = load_scenario(kScenarios + "/divert.toml");
  if (us.cf_mode != CfMode::kUnderpay || ds.cf_mode != CfMode::kDivert) {
    return {false, "bundled scenarios have the wrong cf_mode"};
  }
  const auto u1 = run_scenario(us), u2 = run_scenario(us);
  const auto d1 = run_scenario(ds), d2 = run_scenario(ds);
  const bool deterministic = report_json(u1) == report_json(u2) &&
                             report_json(d1) == report_json(d2);

  std::size_t user_complaints = 0;
  bool failed = true, withheld = true;
  for (const auto& c : u1.chains) {
    for (const auto& k : c.complaints) user_complaints += k.kind == "user" && k.validated;
    const auto* f = c.chain->view<FundContract>(c.deployment.fsc);
    failed = failed && f->status() == CampaignStatus::kFailed;
    withheld = withheld && !f->fees_paid();
  }
  std::size_t flagged = 0;
  for (const auto& c : d1.chains) {
    for (const auto& k : c.complaints) flagged += k.kind == "advertiser" && k.validated;
  }
  const bool ok = deterministic && user_complaints == 1 && failed && withheld && flagged >= 1;
  return {ok, "underpay: " + std::to_string(user_complaints) + " validated user complaint(s), " +
                  (failed ? "status failed" : "status active") + ", fees " +
                  (withheld ? "withheld" : "paid") + "; divert: " + std::to_string(flagged) +
                  " validated refund claim(s); " +
                  (deterministic ? "deterministic" : "NOT deterministic")};
}

// 8 ---------------------------------------------------------------------------------------
Outcome performance() {
  BenchConfig c;
  c.catalogs = {kPerfCatalog};
  c.users = {1};
  c.chains = {1};
  c.repetitions = kPerfReps;
  const auto r = run_bench(c);
  double enc = -1, req = -1;
  for (const auto& o : r.ops) {
    if (o.op == "interaction_encryption") enc = o.median;
    if (o.op == "request_generation") req = o.median;
  }
  const bool ok = enc >= 0 && req >= 0 && enc <= kEncryptSeconds && req <= kRequestSeconds;
  return {ok, "N=256 encryption " + fmt("%.3f s (<= %.1f)", enc, kEncryptSeconds) +
                  ", request " + fmt("%.3f s (<= %.1f)", req, kRequestSeconds)};
}

// 9 ---------------------------------------------------------------------------------------
Outcome scaling() {
  // warm-up: lazily built recovery tables would otherwise be charged to the first row
  measure_throughput(kScaleCatalog, 3, 1, 8);
  // 1-chain and 3-chain runs alternate so a burst of host noise hits both sides of
  // a pair; the verdict uses the median pair ratio
  std::vector<double> ratios, one_span, three_span;
  for (std::uint32_t r = 0; r < kScaleReps; ++r) {
    const auto one = measure_throughput(kScaleCatalog, kScaleUsers, 1, 9);
    const auto three = measure_throughput(kScaleCatalog, kScaleUsers, 3, 9);
    ratios.push_back(one.users_per_day > 0 ? three.users_per_day / one.users_per_day : 0);
    one_span.push_back(one.makespan);
    three_span.push_back(three.makespan);
  }
  const auto ratio = summarize(ratios);
  return {ratio.median >= kScaleMinRatio,
          fmt("3-chain / 1-chain throughput %.2fx (>= %.1f)", ratio.median, kScaleMinRatio) +
              fmt(", pairs %.2f..%.2f", ratio.min, ratio.max) +
              fmt(", makespan %.2f s vs %.2f s", summarize(three_span).median,
                  summarize(one_span).median)};
}

// 10 --------------------------------------------------------------------------------------
Outcome audit() {
  const char* all[] = {"strawman", "honest", "multichain", "underpay", "divert"};
  const char* honest[] = {"strawman", "honest", "multichain"};
  for (const char* name : all) {
    const auto s = load_scenario(kScenarios + "/" + name + ".toml");
    const auto a = run_scenario(s), b = run_scenario(s);
    if (report_json(a) != report_json(b) || logs_of(a) != logs_of(b)) {
      return {false, std::string(name) + ": reports differ between identical runs"};
    }
  }
  std::string mutated_report, mutated_log;
  for (const char* name : honest) {
    const auto run = run_scenario(load_scenario(kScenarios + "/" + name + ".toml"));
    const auto report = report_json(run);
    const auto logs = logs_of(run);
    std::istringstream in(logs);
    const auto v = verify_run(report, in);
    if (!v.clean()) return {false, std::string(name) + ": verify-run: " + v.violations.front()};
    if (mutated_log.empty()) {
      mutated_report = report;
      mutated_log = logs;
    }
  }
  // flip one hex digit inside the arguments of the first ComputeAggregate call
  const auto at = mutated_log.find("\"function\":\"ComputeAggregate\"");
  const auto args = at == std::string::npos ? at : mutated_log.rfind("\"args\":\"", at);
  if (args == std::string::npos) return {false, "no ComputeAggregate call to mutate"};
  auto& c = mutated_log[args + 8];
  c = c == '0' ? '1' : '0';
  std::istringstream in(mutated_log);
  const auto v = verify_run(mutated_report, in);
  if (v.clean()) return {false, "verify-run accepted a mutated block log"};
  return {true, "5 scenarios byte-identical, 3 honest verify clean, mutated log rejected (" +
                    v.violations.front() + ")"};
}

}  // namespace

int main() {
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"end-to-end correctness", end_to_end},
      {"strawman reward 36", strawman},
      {"homomorphism suite", homomorphism},
      {"proof soundness", proofs},
      {"threshold suite", threshold},
      {"lottery calibration", lottery},
      {"misbehaviour detection", misbehaviour},
      {"desk-scale performance", performance},
      {"multi-chain scaling", scaling},
      {"determinism and audit", audit},
  };
  int failed = 0;
  int n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2d %-24s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", n, name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%d criteria passed\n", n - failed, n);
  return failed == 0 ? 0 : 1;
}
