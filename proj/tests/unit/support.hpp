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

#ifndef THEMIS_TESTS_SUPPORT_HPP_
#define THEMIS_TESTS_SUPPORT_HPP_

#include <doctest.h>

#include <optional>

#include "themis/actors.hpp"
#include "themis/error.hpp"

// Checks that `expr` throws themis::Error with the given code.
#define CHECK_ERROR(expr, expected)                                             \
  do {                                                                          \
    try {                                                                       \
      (void)(expr);                                                             \
      FAIL_CHECK("expected " << themis::error_name(expected) << ", no throw");  \
    } catch (const themis::Error& e_) {                                         \
      CHECK_MESSAGE(e_.code() == (expected), "got " << themis::error_name(e_.code())); \
    }                                                                           \
  } while (0)

namespace themis::test {

struct AdSpec {
  std::vector<std::uint32_t> ads;
  std::vector<std::uint64_t> policies;
  std::vector<std::uint64_t> impressions;
  std::uint64_t fee = 10;
};

/// A campaign assembled straight from the actor drivers, one phase at a time,
/// so tests can interleave hand-made transactions.
class World {
 public:
  World(std::uint32_t catalog, std::vector<AdSpec> specs, PoolParams pool = {1, 1, 1, 1ull << 32},
        std::uint64_t epoch = 16, std::uint64_t cap = kDefaultRewardCap, std::uint64_t seed = 42)
      : rng_(seed), catalog_(catalog), pool_(pool), epoch_(epoch), cap_(cap) {
    auto r = rng_.fork("cf");
    cf = FacilitatorAgent::create(r);
    GenesisConfig g;
    g.chain_id = "test";
    g.validator_seed = {1, 2, 3};
    for (std::uint32_t i = 0; i < specs.size(); ++i) {
      auto ar = rng_.fork("adv", i);
      AdvertiserAgent a;
      a.id = i;
      a.key = keygen(ar);
      a.account = Address::from_public_key(a.key.pk);
      a.ads = specs[i].ads;
      a.policies = specs[i].policies;
      a.impressions = specs[i].impressions;
      a.fee = specs[i].fee;
      g.balances[a.account] = a.stake() + 1000;  // headroom for wrong-stake tests
      advs.push_back(a);
    }
    policies.assign(catalog, 0);
    for (const auto& a : advs) {
      for (std::size_t j = 0; j < a.ads.size(); ++j) policies[a.ads[j]] = a.policies[j];
    }
    for (std::uint32_t j = 0; j < pool.draw_pool; ++j) {
      auto pr = rng_.fork("participant", j);
      parts.push_back(PoolParticipant::create(j, pr));
    }
    chain.emplace(g, campaign_registry());
  }

  Rng& rng() { return rng_; }

  void deploy() {
    d = cf_deploy(*chain, cf, catalog_, cap_, pool_, epoch_);
    mine_ok();
  }
  void publish(const std::map<std::uint32_t, std::uint64_t>& overrides = {}) {
    for (auto& a : advs) advertiser_handshake(a, cf);
    cf_publish_campaign(*chain, cf, d, advs, rng_, overrides);
    mine_ok();
  }
  void form_pool() {
    pool_register(*chain, parts, d.psc);
    mine_ok();
    const Bytes eps{'e', 'p', 's'};
    pool = pool_form(*chain, cf, d, parts, eps, rng_);
  }
  void stake() {
    for (const auto& a : advs) advertiser_setup(*chain, a, d);
    mine_ok();
  }
  /// deploy, publish, pool, stake.
  void setup() {
    deploy();
    publish();
    form_pool();
    stake();
  }

  UserAgent user(std::uint32_t id, std::vector<std::uint64_t> x) {
    UserAgent u;
    u.id = id;
    u.interactions = std::move(x);
    auto r = rng_.fork("user", id);
    u.start_period(r);
    return u;
  }

  void claim(const UserAgent& u) {
    user_claim(*chain, u, d.psc, tpk(), rng_);
  }

  // ---- phases over `users` ----
  UserAgent& add_user(std::vector<std::uint64_t> x) {
    users.push_back(user(static_cast<std::uint32_t>(users.size()), std::move(x)));
    return users.back();
  }
  void claims() {
    for (const auto& u : users) claim(u);
    mine_ok();
  }
  void requests() {
    for (const auto& u : users) user_request_payment(*chain, u, d.psc, rng_);
    mine_ok();
  }
  void analytics() {
    pool_freeze(*chain, parts, d);
    mine_ok();
    pool_post_partials(*chain, parts, d, psc().threshold_key()->k, rng_);
    mine_ok();
  }
  SettlementReport settle() {
    auto report = cf_run(*chain, cf, d, rng_);
    mine_ok();
    return report;
  }
  void wait_epoch() {
    while (chain->height() < fsc().start_height() + fsc().epoch()) chain->mine_block();
  }
  void close() {
    wait_epoch();
    if (fsc().closed()) return;
    chain->submit(cf.account, d.fsc, "RefundAdvertisers", calls::refund_advertisers());
    mine_ok();
  }
  /// Runs a whole honest-path campaign for the given vectors.
  void run(const std::vector<std::vector<std::uint64_t>>& vectors) {
    setup();
    for (const auto& x : vectors) add_user(x);
    claims();
    requests();
    analytics();
    settle();
    close();
  }
  const NoteOpening& opening_for(const UserAgent& u) const {
    const NoteOpening* found = nullptr;
    for (const auto& o : cf.openings) {
      if (o.recipient == u.payout) found = &o;
    }
    REQUIRE(found != nullptr);
    return *found;
  }

  const Point& tpk() const { return psc().threshold_key()->pk; }

  const Block& mine() { return chain->mine_block(); }
  void mine_ok() {
    const auto& b = chain->mine_block();
    for (std::size_t i = 0; i < b.receipts.size(); ++i) {
      INFO(b.txs[i].function << ": " << b.receipts[i].error << " " << b.receipts[i].detail);
      REQUIRE(b.receipts[i].ok);
    }
  }
  /// Mines and returns the receipt of `tx`.
  const Receipt& result(const Hash32& tx) {
    chain->mine_block();
    return receipt_of(*chain, tx);
  }

  const PolicyContract& psc() const { return *chain->view<PolicyContract>(d.psc); }
  const FundContract& fsc() const { return *chain->view<FundContract>(d.fsc); }
  const ConfidentialPool& conf() const { return *chain->view<ConfidentialPool>(d.conf_pool); }
  Scalar validator_sk() const {
    return ValidatorKeys::derive(chain->genesis().validator_seed).tx_key.sk;
  }

  FacilitatorAgent cf;
  std::vector<AdvertiserAgent> advs;
  std::vector<PoolParticipant> parts;
  std::vector<UserAgent> users;
  std::optional<Chain> chain;
  Deployment d;
  PoolSetup pool;
  std::vector<std::uint64_t> policies;

 private:
  Rng rng_;
  std::uint32_t catalog_;
  PoolParams pool_;
  std::uint64_t epoch_;
  std::uint64_t cap_;
};

/// One advertiser buying ads 0..2 at [4, 20, 12].
inline World strawman_world(std::uint64_t seed = 42) {
  return World(3, {{{0, 1, 2}, {4, 20, 12}, {10, 10, 10}, 10}}, {1, 1, 1, 1ull << 32}, 16,
               kDefaultRewardCap, seed);
}

}  // namespace themis::test

#endif  // THEMIS_TESTS_SUPPORT_HPP_
