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

#include "campaign.hpp"

#include <algorithm>
#include <set>

#include "themis/error.hpp"

namespace themis {
namespace detail {

using Clock = std::chrono::steady_clock;

CampaignConfig campaign_config(const Scenario& s) {
  CampaignConfig c;
  c.seed = s.seed;
  c.catalog_size = s.catalog_size;
  c.epoch_blocks = s.epoch_blocks;
  c.reward_cap = s.reward_cap;
  c.pool = s.pool;
  if (s.epsilon.empty()) {
    ByteWriter w;
    w.u64(s.seed);
    const auto h = hash32("themis/v1/harness-epsilon", w.data());
    c.epsilon.assign(h.begin(), h.end());
  } else {
    c.epsilon.assign(s.epsilon.begin(), s.epsilon.end());
  }
  c.mode = s.cf_mode;
  c.deviation = s.cf_deviation;
  c.advertisers = resolve_advertisers(s);
  return c;
}

namespace {

AdvertiserAgent make_advertiser(const CampaignConfig& c, std::uint32_t i) {
  auto rng = Rng(c.seed).fork("advertiser", i);
  const auto& entry = c.advertisers[i];
  AdvertiserAgent a;
  a.id = i;
  a.key = keygen(rng);
  a.account = Address::from_public_key(a.key.pk);
  a.ads = entry.ads;
  a.policies = entry.policies;
  a.impressions = entry.impressions;
  a.fee = entry.fee;
  return a;
}

}  // namespace

bool contains(ByteView hay, ByteView needle) {
  if (needle.empty() || needle.size() > hay.size()) return false;
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

GenesisConfig campaign_genesis(const CampaignConfig& c) {
  GenesisConfig g;
  g.chain_id = "themis-" + std::to_string(c.seed);
  ByteWriter w;
  w.str("validator").u64(c.seed);
  g.validator_seed = std::move(w).take();
  for (std::uint32_t i = 0; i < c.advertisers.size(); ++i) {
    const auto a = make_advertiser(c, i);
    g.balances[a.account] += a.stake();
  }
  return g;
}

Campaign::Campaign(const CampaignConfig& config, Chain chain, std::uint32_t index)
    : config_(config), rng_(Rng(config.seed).fork("chain", index)) {
  auto cf_rng = Rng(config.seed).fork("cf");
  cf_ = FacilitatorAgent::create(cf_rng);
  cf_.mode = config.mode;
  cf_.deviation = config.deviation;
  for (std::uint32_t i = 0; i < config.advertisers.size(); ++i) {
    advs_.push_back(make_advertiser(config, i));
  }
  for (std::uint32_t j = 0; j < config.pool.draw_pool; ++j) {
    auto r = rng_.fork("participant", j);
    participants_.push_back(PoolParticipant::create(j, r));
  }
  out_.index = index;
  out_.chain.emplace(std::move(chain));
  for (const auto& [id, vec] : config.users) {
    UserAgent u;
    u.id = id;
    u.interactions = vec;
    auto r = Rng(config.seed).fork("user", id);
    u.start_period(r);
    out_.users.push_back(std::move(u));
    UserResult res;
    res.id = id;
    res.chain = index;
    res.ephemeral_pk = to_hex(out_.users.back().ephemeral.pk.bytes());
    res.payout = out_.users.back().payout.hex();
    out_.user_results.push_back(std::move(res));
  }
}

void Campaign::violation(const std::string& what) {
  out_.violations.push_back("chain " + std::to_string(out_.index) + ": " + what);
}

const PolicyContract& Campaign::psc() const {
  const auto* p = out_.chain->view<PolicyContract>(out_.deployment.psc);
  require(p != nullptr, ErrorCode::kUnknownContract, "psc");
  return *p;
}

const FundContract& Campaign::fsc() const {
  const auto* f = out_.chain->view<FundContract>(out_.deployment.fsc);
  require(f != nullptr, ErrorCode::kUnknownContract, "fsc");
  return *f;
}

bool Campaign::check_block(const Block& block, std::string_view step) {
  bool ok = true;
  for (std::size_t i = 0; i < block.receipts.size(); ++i) {
    const auto& r = block.receipts[i];
    if (r.ok) continue;
    ok = false;
    violation(std::string(step) + ": " + block.txs[i].function + " failed: " + r.error +
              (r.detail.empty() ? "" : " (" + r.detail + ")"));
  }
  return ok;
}

bool Campaign::mine_checked(std::string_view step) {
  return check_block(chain().mine_block(), step);
}

bool Campaign::setup() {
  auto& ch = chain();
  out_.deployment = cf_deploy(ch, cf_, config_.catalog_size, config_.reward_cap, config_.pool,
                              config_.epoch_blocks);
  if (!mine_checked("deploy")) return false;

  out_.policies.assign(config_.catalog_size, 0);
  for (auto& a : advs_) {
    advertiser_handshake(a, cf_);
    for (std::size_t j = 0; j < a.ads.size(); ++j) out_.policies[a.ads[j]] = a.policies[j];
  }
  auto pub_rng = rng_.fork("publish");
  cf_publish_campaign(ch, cf_, out_.deployment, advs_, pub_rng);
  if (!mine_checked("publish")) return false;

  pool_register(ch, participants_, out_.deployment.psc);
  if (!mine_checked("pool registration")) return false;
  try {
    auto pool_rng = rng_.fork("pool");
    out_.pool = pool_form(ch, cf_, out_.deployment, participants_, config_.epsilon, pool_rng);
  } catch (const Error& e) {
    violation(std::string("pool formation: ") + std::string(error_name(e.code())) + ": " +
              e.what());
    return false;
  }

  for (const auto& a : advs_) {
    try {
      advertiser_setup(ch, a, out_.deployment);
    } catch (const Error& e) {
      violation("advertiser " + std::to_string(a.id) + " setup: " +
                std::string(error_name(e.code())) + ": " + e.what());
      return false;
    }
  }
  if (!mine_checked("staking")) return false;
  if (!fsc().initialized()) {
    violation("campaign not initialised after staking");
    return false;
  }
  return true;
}

bool Campaign::claims() {
  auto& ch = chain();
  const auto pk_t = psc().threshold_key()->pk;
  std::vector<Hash32> txs;
  for (std::size_t u = 0; u < out_.users.size(); ++u) {
    auto r = rng_.fork("claim", out_.users[u].id);
    const auto t0 = Clock::now();
    txs.push_back(user_claim(ch, out_.users[u], out_.deployment.psc, pk_t, r));
    out_.timings.interaction_encryption.push_back(seconds_since(t0));
  }
  const auto t0 = Clock::now();
  const auto& block = ch.mine_block();
  const double dt = seconds_since(t0);
  out_.timings.chain_seconds += dt;
  if (!txs.empty()) {
    out_.timings.aggregate_computation.push_back(dt / static_cast<double>(txs.size()));
  }
  for (std::size_t u = 0; u < txs.size(); ++u) {
    const auto& rc = receipt_of(ch, txs[u]);
    if (!rc.ok && out_.user_results[u].error.empty()) {
      out_.user_results[u].error = "claim: " + rc.error;
    }
  }
  return check_block(block, "claims");
}

bool Campaign::requests() {
  auto& ch = chain();
  std::vector<std::pair<std::size_t, Hash32>> txs;
  for (std::size_t u = 0; u < out_.users.size(); ++u) {
    auto& res = out_.user_results[u];
    res.oracle = dot_product(out_.policies, out_.users[u].interactions);
    if (!res.error.empty()) continue;
    auto r = rng_.fork("request", out_.users[u].id);
    try {
      const auto t0 = Clock::now();
      const auto sub = user_request_payment(ch, out_.users[u], out_.deployment.psc, r);
      out_.timings.request_generation.push_back(seconds_since(t0));
      res.recovered = sub.amount;
      txs.emplace_back(u, sub.tx);
    } catch (const Error& e) {
      res.error = "request: " + std::string(error_name(e.code()));
      violation("user " + std::to_string(res.id) + " request: " + e.what());
    }
  }
  const auto t0 = Clock::now();
  const auto& block = ch.mine_block();
  out_.timings.chain_seconds += seconds_since(t0);
  for (const auto& [u, tx] : txs) {
    const auto& rc = receipt_of(ch, tx);
    if (rc.ok) {
      out_.user_results[u].requested = true;
    } else if (out_.user_results[u].error.empty()) {
      out_.user_results[u].error = "request: " + rc.error;
    }
  }
  return check_block(block, "payment requests");
}

bool Campaign::analytics() {
  auto& ch = chain();
  pool_freeze(ch, participants_, out_.deployment);
  if (!mine_checked("freeze analytics")) return false;
  auto r = rng_.fork("partials");
  pool_post_partials(ch, participants_, out_.deployment, config_.pool.k, r);
  if (!mine_checked("post partials")) return false;
  if (!fsc().analytics_done()) {
    violation("analytics not finalised after k partials");
    return false;
  }
  return true;
}

bool Campaign::settle() {
  auto& ch = chain();
  auto r = rng_.fork("settle");
  const auto t0 = Clock::now();
  out_.settlement = cf_run(ch, cf_, out_.deployment, r);
  const bool ok = mine_checked("settlement");
  out_.timings.settlement.push_back(seconds_since(t0));
  return ok;
}

bool Campaign::complaints() {
  auto& ch = chain();
  for (std::size_t u = 0; u < out_.users.size(); ++u) {
    auto& res = out_.user_results[u];
    if (!res.requested) continue;
    const auto& user = out_.users[u];
    const NoteOpening* opening = nullptr;
    for (const auto& o : cf_.openings) {
      if (o.recipient == user.payout) opening = &o;
    }
    if (opening == nullptr) {
      violation("user " + std::to_string(res.id) + " received no note opening");
      continue;
    }
    res.paid = opening->amount;
    try {
      if (auto tx = user_check_payment(ch, user, out_.deployment, *opening, res.recovered)) {
        complaint_tx_[*tx] = u;
      }
    } catch (const Error& e) {
      violation("user " + std::to_string(res.id) + " payment check: " + e.what());
      continue;
    }
    user_redeem(ch, user, out_.deployment, *opening);
  }
  const auto& block = ch.mine_block();
  for (const auto& [tx, u] : complaint_tx_) {
    const auto& rc = receipt_of(ch, tx);
    out_.user_results[u].complained = rc.ok;
  }
  return check_block(block, "user checks");
}

bool Campaign::close() {
  auto& ch = chain();
  const auto end = fsc().start_height() + fsc().epoch();
  while (ch.height() < end) ch.mine_block();
  if (fsc().closed()) return true;
  ch.submit(cf_.account, out_.deployment.fsc, "RefundAdvertisers", calls::refund_advertisers());
  if (!mine_checked("refunds")) return false;
  if (!fsc().closed()) {
    violation("campaign still open after RefundAdvertisers");
    return false;
  }
  return true;
}

bool Campaign::audits() {
  auto& ch = chain();
  bool filed = false;
  out_.advertiser_results.clear();
  for (const auto& a : advs_) {
    AdvertiserResult res;
    res.id = a.id;
    res.chain = out_.index;
    const auto audit = advertiser_audit(ch, a, out_.deployment);
    res.audit = std::string(audit_verdict_name(audit.verdict));
    res.audit_detail = audit.detail;
    filed = filed || audit.complaint_tx.has_value();
    out_.advertiser_results.push_back(std::move(res));
  }
  if (!filed) return true;
  return mine_checked("advertiser audits");
}

void Campaign::collect() {
  if (!out_.chain) return;
  const auto* f = out_.chain->view<FundContract>(out_.deployment.fsc);
  if (f == nullptr) return;
  for (auto& res : out_.advertiser_results) {
    const auto it = f->advertisers().find(res.id);
    if (it == f->advertisers().end()) continue;
    const auto& rec = it->second;
    res.staked = rec.staked ? rec.stake : 0;
    res.spent = rec.spent;
    res.refunded = rec.refund;
    res.fee = rec.fee;
    res.debt = rec.debt;
    res.shortfall = rec.shortfall;
  }
  out_.complaints.clear();
  for (const auto& c : f->complaints()) {
    ComplaintResult r;
    r.kind = c.kind == ComplaintKind::kUser ? "user" : "advertiser";
    r.validated = c.validated;
    r.height = c.height;
    r.subject = c.kind == ComplaintKind::kUser ? to_hex(c.user_pk.bytes())
                                               : "advertiser " + std::to_string(c.advertiser);
    out_.complaints.push_back(std::move(r));
  }
}

void Campaign::run_all() {
  try {
    const bool done = setup() && claims() && requests() && analytics() && settle() &&
                      complaints() && close();
    if (done) audits();
  } catch (const Error& e) {
    violation("aborted: " + std::string(error_name(e.code())) + ": " + e.what());
  }
  collect();
}

}  // namespace detail

// ---- invariants ----------------------------------------------------------------------------

namespace {

struct Check {
  Invariant inv;
  explicit Check(std::string name) { inv.name = std::move(name); }
  void fail(const std::string& why) {
    if (inv.ok) inv.detail = why;
    else inv.detail += "; " + why;
    inv.ok = false;
  }
};

std::string chain_tag(const ChainRun& c) { return "chain " + std::to_string(c.index); }

Invariant check_completed(const RunResult& run) {
  Check c("harness.run_completed");
  for (const auto& ch : run.chains) {
    for (const auto& v : ch.violations) c.fail(v);
  }
  return c.inv;
}

Invariant check_aggregates(const RunResult& run) {
  Check c("contracts.aggregate_correctness");
  for (const auto& ch : run.chains) {
    for (const auto& u : ch.user_results) {
      if (!u.requested) {
        c.fail("user " + std::to_string(u.id) + " has no payment request");
      } else if (u.recovered != u.oracle) {
        c.fail("user " + std::to_string(u.id) + ": recovered " + std::to_string(u.recovered) +
               " != oracle " + std::to_string(u.oracle));
      }
    }
    if (!ch.chain) continue;
    const auto* f = ch.chain->view<FundContract>(ch.deployment.fsc);
    if (f == nullptr) continue;
    std::map<std::string, std::uint64_t> oracle;
    for (const auto& u : ch.user_results) oracle[u.payout] = u.oracle;
    for (const auto& r : f->requests()) {
      const auto it = oracle.find(r.payout.hex());
      if (it == oracle.end()) {
        c.fail(chain_tag(ch) + ": request from unknown payout " + r.payout.hex());
      } else if (it->second != r.amount) {
        c.fail(chain_tag(ch) + ": request " + std::to_string(r.amount) + " != oracle " +
               std::to_string(it->second));
      }
    }
  }
  return c.inv;
}

Invariant check_analytics(const RunResult& run) {
  Check c("actors.analytics_exactness");
  for (const auto& ch : run.chains) {
    if (!ch.chain) continue;
    const auto* f = ch.chain->view<FundContract>(ch.deployment.fsc);
    if (f == nullptr || !f->analytics_done()) {
      c.fail(chain_tag(ch) + ": analytics not finalised");
      continue;
    }
    std::vector<std::uint64_t> expect(ch.policies.size(), 0);
    for (const auto& u : ch.users) {
      for (std::size_t i = 0; i < u.interactions.size() && i < expect.size(); ++i) {
        expect[i] += u.interactions[i];
      }
    }
    if (f->aggr_clicks() != expect) c.fail(chain_tag(ch) + ": aggregate clicks differ");
  }
  return c.inv;
}

Invariant check_conservation(const RunResult& run) {
  Check c("ledger.token_conservation");
  for (const auto& ch : run.chains) {
    if (!ch.chain) continue;
    const auto& st = ch.chain->state();
    if (st.total_balance() != st.minted) {
      c.fail(chain_tag(ch) + ": balances " + std::to_string(st.total_balance()) +
             " != minted " + std::to_string(st.minted));
    }
  }
  return c.inv;
}

Invariant check_escrow(const RunResult& run) {
  Check c("contracts.escrow_conservation");
  for (const auto& ch : run.chains) {
    if (!ch.chain) continue;
    const auto* f = ch.chain->view<FundContract>(ch.deployment.fsc);
    if (f == nullptr) continue;
    u128 staked = 0, refunds = 0;
    for (const auto& [id, a] : f->advertisers()) {
      if (a.staked) staked += a.stake;
      refunds += a.refund;
    }
    const u128 fees = f->fees_paid() ? f->fees_total() : 0;
    const u128 out = static_cast<u128>(f->settled_total()) + refunds + fees +
                     ch.chain->balance(ch.deployment.fsc);
    if (staked != out) {
      c.fail(chain_tag(ch) + ": staked " + std::to_string(static_cast<std::uint64_t>(staked)) +
             " != settled + refunds + fees + escrow " +
             std::to_string(static_cast<std::uint64_t>(out)));
    }
  }
  return c.inv;
}

Invariant check_advertisers(const RunResult& run) {
  Check c("contracts.advertiser_balance");
  for (const auto& ch : run.chains) {
    if (!ch.chain) continue;
    const auto* f = ch.chain->view<FundContract>(ch.deployment.fsc);
    if (f == nullptr || !f->closed() || f->status() != CampaignStatus::kActive) continue;
    std::uint64_t spent = 0;
    for (const auto& [id, a] : f->advertisers()) {
      spent += a.spent;
      const u128 lhs = static_cast<u128>(a.spent) + a.refund + a.fee;
      const u128 rhs = static_cast<u128>(a.stake) + a.debt;
      if (lhs != rhs) c.fail(chain_tag(ch) + ": advertiser " + std::to_string(id) + " unbalanced");
    }
    std::uint64_t paid = 0;
    for (const auto& u : ch.user_results) paid += u.paid;
    if (spent != paid) {
      c.fail(chain_tag(ch) + ": spent " + std::to_string(spent) + " != paid to users " +
             std::to_string(paid));
    }
  }
  return c.inv;
}

Invariant check_mode(const RunResult& run) {
  Check c("harness.cf_mode_outcome");
  for (const auto& ch : run.chains) {
    if (!ch.chain) continue;
    const auto* f = ch.chain->view<FundContract>(ch.deployment.fsc);
    if (f == nullptr) {
      c.fail(chain_tag(ch) + ": no fsc");
      continue;
    }
    std::size_t user_valid = 0, adv_valid = 0;
    for (const auto& k : ch.complaints) {
      if (!k.validated) continue;
      (k.kind == "user" ? user_valid : adv_valid)++;
    }
    const bool failed = f->status() == CampaignStatus::kFailed;
    const bool any_paid = std::any_of(ch.user_results.begin(), ch.user_results.end(),
                                      [](const UserResult& u) { return u.recovered > 0; });
    switch (run.scenario.cf_mode) {
      case CfMode::kHonest:
        if (user_valid + adv_valid != 0) c.fail(chain_tag(ch) + ": validated complaint");
        if (failed) c.fail(chain_tag(ch) + ": campaign failed");
        if (!f->fees_paid()) c.fail(chain_tag(ch) + ": fees not paid");
        break;
      case CfMode::kUnderpay:
        if (!any_paid) break;  // nothing to short-pay
        if (user_valid != 1) {
          c.fail(chain_tag(ch) + ": " + std::to_string(user_valid) + " validated user complaints");
        }
        if (!failed) c.fail(chain_tag(ch) + ": campaign not failed");
        if (f->fees_paid()) c.fail(chain_tag(ch) + ": fees paid despite failure");
        break;
      case CfMode::kDivert:
        if (adv_valid != 1) {
          c.fail(chain_tag(ch) + ": " + std::to_string(adv_valid) +
                 " validated advertiser complaints");
        }
        if (!failed) c.fail(chain_tag(ch) + ": campaign not failed");
        break;
    }
  }
  return c.inv;
}

Invariant check_unlinkability(const RunResult& run) {
  Check c("actors.unlinkability");
  std::set<std::string> pks, payouts;
  for (const auto& ch : run.chains) {
    for (const auto& u : ch.user_results) {
      if (!pks.insert(u.ephemeral_pk).second) c.fail("reused ephemeral key " + u.ephemeral_pk);
      if (!payouts.insert(u.payout).second) c.fail("reused payout " + u.payout);
      if (u.ephemeral_pk == u.payout) c.fail("payout equals ephemeral key");
    }
  }
  for (const auto& ch : run.chains) {
    for (std::size_t u = 0; u < ch.users.size(); ++u) {
      if (ch.users[u].claim_account() == ch.users[u].payout) {
        c.fail("user " + std::to_string(ch.users[u].id) + " claims from the payout address");
      }
    }
  }
  return c.inv;
}

// Plaintext that must never reach the public record: interaction vectors in
// claim arguments, policy plaintexts in StorePolicy, and the ephemeral key in a
// payment request (it would link claim and payout).
Invariant check_privacy(const RunResult& run) {
  Check c("ledger.privacy_probe");
  for (const auto& ch : run.chains) {
    if (!ch.chain) continue;
    std::vector<Bytes> vectors;
    std::vector<Bytes> pks;
    for (const auto& u : ch.users) {
      if (std::count_if(u.interactions.begin(), u.interactions.end(),
                        [](std::uint64_t x) { return x != 0; }) >= 2) {
        ByteWriter w;
        for (auto x : u.interactions) w.u64(x);
        vectors.push_back(w.data());
      }
      pks.emplace_back(u.ephemeral.pk.bytes().begin(), u.ephemeral.pk.bytes().end());
    }
    std::vector<Bytes> policies;
    for (std::uint32_t i = 0; i < ch.policies.size(); ++i) {
      policies.push_back(policy_plaintext(i, ch.policies[i]));
    }
    for (const auto& b : ch.chain->blocks()) {
      for (std::size_t t = 0; t < b.txs.size(); ++t) {
        const auto& tx = b.txs[t];
        const auto where = chain_tag(ch) + " block " + std::to_string(b.height) + " " + tx.function;
        const std::vector<ByteView> surfaces{tx.args, b.receipts[t].output};
        for (const auto& s : surfaces) {
          if (tx.function == "ComputeAggregate") {
            for (const auto& v : vectors) {
              if (detail::contains(s, v)) c.fail(where + ": interaction vector in clear");
            }
          }
          if (tx.function == "StorePolicy") {
            for (const auto& p : policies) {
              if (detail::contains(s, p)) c.fail(where + ": policy in clear");
            }
          }
          if (tx.function == "PaymentRequest") {
            if (tx.privacy != Privacy::kPrivateInput) c.fail(where + ": public payment request");
            for (const auto& pk : pks) {
              if (detail::contains(s, pk)) c.fail(where + ": ephemeral key in clear");
            }
          }
        }
      }
    }
  }
  return c.inv;
}

}  // namespace

bool RunResult::clean() const {
  return std::all_of(invariants.begin(), invariants.end(),
                     [](const Invariant& i) { return i.ok; });
}

RunResult run_scenario(const Scenario& scenario) {
  scenario.validate();
  RunResult run;
  run.scenario = scenario;
  auto config = detail::campaign_config(scenario);
  const auto vectors = resolve_interactions(scenario);

  auto chains = multi_chain(scenario.chains, detail::campaign_genesis(config), campaign_registry());
  for (std::uint32_t c = 0; c < scenario.chains; ++c) {
    auto cc = config;
    for (std::uint32_t u = c; u < vectors.size(); u += scenario.chains) {
      cc.users.emplace_back(u, vectors[u]);
    }
    detail::Campaign campaign(cc, std::move(chains[c]), c);
    campaign.run_all();
    run.chains.push_back(std::move(campaign.result()));
  }

  run.invariants = {check_completed(run),   check_aggregates(run),  check_analytics(run),
                    check_conservation(run), check_escrow(run),      check_advertisers(run),
                    check_mode(run),        check_unlinkability(run), check_privacy(run)};
  return run;
}

}  // namespace themis
