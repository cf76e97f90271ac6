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

#include <istream>

#include <json.hpp>

#include "themis/block_log.hpp"
#include "themis/error.hpp"
#include "themis/harness.hpp"

namespace themis {

using nlohmann::json;

namespace {

std::vector<std::uint64_t> column_sums(const std::vector<std::vector<std::uint64_t>>& rows,
                                       std::size_t n) {
  std::vector<std::uint64_t> out(n, 0);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size() && i < n; ++i) out[i] += r[i];
  }
  return out;
}

}  // namespace

VerifyResult verify_run(std::string_view report_text, std::istream& block_log) {
  json report;
  try {
    report = json::parse(report_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kConfigError, std::string("report: ") + e.what());
  }
  std::map<std::uint32_t, ChainLog> log;
  try {
    log = read_block_log(block_log);
  } catch (const Error& e) {
    fail(ErrorCode::kConfigError, std::string("block log: ") + e.what());
  }

  VerifyResult out;
  auto& v = out.violations;
  std::map<std::uint32_t, Chain> replayed;
  for (auto& s : replay_block_log(log, campaign_registry(), &replayed)) v.push_back(std::move(s));
  for (const auto& [i, c] : log) out.blocks += c.blocks.size();
  if (!v.empty()) return out;

  try {
    const auto policies = report.at("escrow").at("policies").get<std::vector<std::uint64_t>>();
    const auto& escrow_users = report.at("escrow").at("interactions");
    const auto& chains = report.at("chains");
    if (chains.size() != replayed.size()) {
      v.push_back("report lists " + std::to_string(chains.size()) + " chains, log has " +
                  std::to_string(replayed.size()));
    }
    for (const auto& rc : chains) {
      const auto idx = rc.at("index").get<std::uint32_t>();
      const std::string tag = "chain " + std::to_string(idx) + ": ";
      const auto it = replayed.find(idx);
      if (it == replayed.end()) {
        v.push_back(tag + "missing from block log");
        continue;
      }
      const Chain& chain = it->second;
      if (rc.at("state_hash").get<std::string>() != to_hex(chain.state_hash())) {
        v.push_back(tag + "state hash differs from report");
      }
      if (rc.at("height").get<std::uint64_t>() != chain.height()) {
        v.push_back(tag + "height differs from report");
      }
      const auto fsc_addr = Address::from_hex(rc.at("deployment").at("fsc").get<std::string>());
      const auto psc_addr = Address::from_hex(rc.at("deployment").at("psc").get<std::string>());
      const auto* fsc = chain.view<FundContract>(fsc_addr);
      const auto* psc = chain.view<PolicyContract>(psc_addr);
      if (fsc == nullptr || psc == nullptr) {
        v.push_back(tag + "campaign contracts missing");
        continue;
      }

      // Policies as the validators see them, through the escrowed key.
      const auto keys = ValidatorKeys::derive(chain.genesis().validator_seed);
      try {
        if (psc->policy_values(keys.tx_key.sk) != policies) {
          v.push_back(tag + "on-chain policies differ from escrow");
        }
      } catch (const Error& e) {
        v.push_back(tag + "policies unreadable: " + e.what());
      }

      std::map<std::string, const RequestRecord*> by_payout;
      for (const auto& r : fsc->requests()) by_payout[r.payout.hex()] = &r;
      std::vector<std::vector<std::uint64_t>> vectors;
      for (const auto& u : rc.at("users")) {
        ++out.users;
        const auto id = u.at("id").get<std::uint32_t>();
        const std::string who = "user " + std::to_string(id) + ": ";
        const auto key = std::to_string(id);
        if (!escrow_users.contains(key)) {
          v.push_back(who + "no escrowed interactions");
          continue;
        }
        const auto x = escrow_users.at(key).get<std::vector<std::uint64_t>>();
        vectors.push_back(x);
        const auto oracle = dot_product(policies, x);
        const auto r = by_payout.find(u.at("payout").get<std::string>());
        if (r == by_payout.end()) {
          v.push_back(who + "no payment request on chain (oracle " + std::to_string(oracle) + ")");
        } else if (r->second->amount != oracle) {
          v.push_back(who + "requested " + std::to_string(r->second->amount) + ", oracle " +
                      std::to_string(oracle));
        }
        if (u.at("oracle").get<std::uint64_t>() != oracle) {
          v.push_back(who + "report oracle differs from recomputation");
        }
      }
      if (fsc->analytics_done() &&
          fsc->aggr_clicks() != column_sums(vectors, psc->catalog_size())) {
        v.push_back(tag + "aggregate clicks differ from escrowed interactions");
      }

      const auto& st = chain.state();
      if (st.total_balance() != st.minted) v.push_back(tag + "token conservation violated");
      u128 staked = 0, refunds = 0;
      for (const auto& [id, a] : fsc->advertisers()) {
        if (a.staked) staked += a.stake;
        refunds += a.refund;
      }
      const u128 accounted = static_cast<u128>(fsc->settled_total()) + refunds +
                             (fsc->fees_paid() ? fsc->fees_total() : 0) +
                             chain.balance(fsc_addr);
      if (staked != accounted) v.push_back(tag + "escrow conservation violated");
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::kConfigError, std::string("report: ") + e.what());
  }
  return out;
}

}  // namespace themis
