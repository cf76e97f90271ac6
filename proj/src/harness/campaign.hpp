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

#ifndef THEMIS_SRC_HARNESS_CAMPAIGN_HPP_
#define THEMIS_SRC_HARNESS_CAMPAIGN_HPP_

#include <chrono>

#include "themis/harness.hpp"

namespace themis::detail {

struct CampaignConfig {
  std::uint64_t seed = 1;
  std::uint32_t catalog_size = 0;
  std::uint64_t epoch_blocks = 16;
  std::uint64_t reward_cap = kDefaultRewardCap;
  PoolParams pool;
  Bytes epsilon;
  CfMode mode = CfMode::kHonest;
  std::uint64_t deviation = 1;
  std::vector<AdvertiserSpec> advertisers;
  /// (user id, interaction vector) for the users on this chain.
  std::vector<std::pair<std::uint32_t, std::vector<std::uint64_t>>> users;
};

CampaignConfig campaign_config(const Scenario& s);
GenesisConfig campaign_genesis(const CampaignConfig& c);
bool contains(ByteView hay, ByteView needle);

/// One campaign on one chain, driven phase by phase. A phase returns false
/// after recording a violation when the campaign cannot continue.
class Campaign {
 public:
  Campaign(const CampaignConfig& config, Chain chain, std::uint32_t index);

  bool setup();
  bool claims();
  bool requests();
  bool analytics();
  bool settle();
  bool complaints();
  bool close();
  bool audits();
  void collect();

  /// All phases in order.
  void run_all();

  ChainRun& result() { return out_; }
  Chain& chain() { return *out_.chain; }

 private:
  bool check_block(const Block& block, std::string_view step);
  bool mine_checked(std::string_view step);
  void violation(const std::string& what);
  const PolicyContract& psc() const;
  const FundContract& fsc() const;

  const CampaignConfig& config_;
  Rng rng_;
  FacilitatorAgent cf_;
  std::vector<AdvertiserAgent> advs_;
  std::vector<PoolParticipant> participants_;
  std::map<Hash32, std::size_t> complaint_tx_;  // tx -> user position
  ChainRun out_;
};

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace themis::detail

#endif  // THEMIS_SRC_HARNESS_CAMPAIGN_HPP_
