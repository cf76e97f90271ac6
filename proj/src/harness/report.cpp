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
#include <ostream>

#include <json.hpp>

#include "themis/block_log.hpp"
#include "themis/harness.hpp"

namespace themis {

using nlohmann::json;

Summary summarize(std::vector<double> samples) {
  Summary s;
  if (samples.empty()) return s;
  std::sort(samples.begin(), samples.end());
  const auto n = samples.size();
  s.median = n % 2 ? samples[n / 2] : (samples[n / 2 - 1] + samples[n / 2]) / 2;
  s.min = samples.front();
  s.max = samples.back();
  return s;
}

namespace {

json scenario_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["seed"] = s.seed;
  j["catalog_size"] = s.catalog_size;
  j["epoch_blocks"] = s.epoch_blocks;
  j["reward_cap"] = s.reward_cap;
  j["chains"] = s.chains;
  j["cf_mode"] = std::string(cf_mode_name(s.cf_mode));
  j["cf_deviation"] = s.cf_deviation;
  j["users"] = s.users;
  j["pool"] = {{"k", s.pool.k}, {"nu", s.pool.n}, {"draw_pool", s.pool.draw_pool},
               {"vrf_space", s.pool.p}};
  return j;
}

json chain_json(const ChainRun& c) {
  json j;
  j["index"] = c.index;
  j["violations"] = c.violations;
  j["deployment"] = {{"conf_pool", c.deployment.conf_pool.hex()},
                     {"psc", c.deployment.psc.hex()},
                     {"fsc", c.deployment.fsc.hex()}};
  if (c.chain) {
    const auto& ch = *c.chain;
    j["chain_id"] = ch.genesis().chain_id;
    j["height"] = ch.height();
    j["state_hash"] = to_hex(ch.state_hash());
    j["head_hash"] = ch.blocks().empty() ? std::string() : to_hex(ch.blocks().back().hash());
    if (const auto* f = ch.view<FundContract>(c.deployment.fsc)) {
      j["campaign"] = {{"initialized", f->initialized()},
                       {"status", f->status() == CampaignStatus::kActive ? "active" : "failed"},
                       {"closed", f->closed()},
                       {"fees_paid", f->fees_paid()},
                       {"settled_total", f->settled_total()},
                       {"aggr_clicks", f->aggr_clicks()},
                       {"escrow_balance", ch.balance(c.deployment.fsc)}};
    }
  }
  json pool;
  pool["attempts"] = c.pool.attempts;
  pool["members"] = c.pool.members;
  pool["pk_t"] = to_hex(c.pool.tpk.pk.bytes());
  pool["dkg_complaints"] = c.pool.dkg_complaints.size();
  j["pool"] = pool;
  j["settlement"] = {{"tau", c.settlement.tau},
                     {"requested", c.settlement.requested},
                     {"notes", c.settlement.notes}};
  json users = json::array();
  for (const auto& u : c.user_results) {
    users.push_back({{"id", u.id},
                     {"oracle", u.oracle},
                     {"recovered", u.recovered},
                     {"requested", u.requested},
                     {"paid", u.paid},
                     {"complained", u.complained},
                     {"ephemeral_pk", u.ephemeral_pk},
                     {"payout", u.payout},
                     {"error", u.error}});
  }
  j["users"] = users;
  json advs = json::array();
  for (const auto& a : c.advertiser_results) {
    advs.push_back({{"id", a.id},
                    {"staked", a.staked},
                    {"spent", a.spent},
                    {"refunded", a.refunded},
                    {"fee", a.fee},
                    {"debt", a.debt},
                    {"shortfall", a.shortfall},
                    {"audit", a.audit},
                    {"audit_detail", a.audit_detail}});
  }
  j["advertisers"] = advs;
  json complaints = json::array();
  for (const auto& k : c.complaints) {
    complaints.push_back({{"kind", k.kind},
                          {"validated", k.validated},
                          {"subject", k.subject},
                          {"height", k.height}});
  }
  j["complaints"] = complaints;
  return j;
}

}  // namespace

std::string report_json(const RunResult& run) {
  json j;
  j["version"] = 1;
  j["scenario"] = scenario_json(run.scenario);
  j["clean"] = run.clean();
  json inv = json::array();
  for (const auto& i : run.invariants) {
    inv.push_back({{"name", i.name}, {"ok", i.ok}, {"detail", i.detail}});
  }
  j["invariants"] = inv;
  json chains = json::array();
  for (const auto& c : run.chains) chains.push_back(chain_json(c));
  j["chains"] = chains;

  // Plaintexts held in escrow so an auditor can recompute every reward.
  json escrow;
  escrow["policies"] = run.chains.empty() ? std::vector<std::uint64_t>{}
                                          : run.chains.front().policies;
  json interactions = json::object();
  for (const auto& c : run.chains) {
    for (const auto& u : c.users) interactions[std::to_string(u.id)] = u.interactions;
  }
  escrow["interactions"] = interactions;
  j["escrow"] = escrow;
  return j.dump(2) + "\n";
}

std::string timings_json(const RunResult& run) {
  auto summary = [](const std::vector<double>& v) {
    const auto s = summarize(v);
    return json{{"median", s.median}, {"min", s.min}, {"max", s.max}, {"samples", v.size()}};
  };
  Timings all;
  json chains = json::array();
  for (const auto& c : run.chains) {
    const auto& t = c.timings;
    chains.push_back({{"index", c.index},
                      {"chain_seconds", t.chain_seconds},
                      {"users", c.users.size()}});
    auto append = [](std::vector<double>& to, const std::vector<double>& from) {
      to.insert(to.end(), from.begin(), from.end());
    };
    append(all.interaction_encryption, t.interaction_encryption);
    append(all.request_generation, t.request_generation);
    append(all.aggregate_computation, t.aggregate_computation);
    append(all.settlement, t.settlement);
  }
  json j;
  j["operations"] = {{"interaction_encryption", summary(all.interaction_encryption)},
                     {"request_generation", summary(all.request_generation)},
                     {"aggregate_computation", summary(all.aggregate_computation)},
                     {"settlement", summary(all.settlement)}};
  j["chains"] = chains;
  return j.dump(2) + "\n";
}

void write_block_logs(std::ostream& out, const RunResult& run) {
  for (const auto& c : run.chains) {
    if (c.chain) write_block_log(out, *c.chain, c.index);
  }
}

}  // namespace themis
