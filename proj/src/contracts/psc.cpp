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

#include "codec.hpp"
#include "themis/contracts.hpp"
#include "themis/error.hpp"

namespace themis {

using detail::read_seq;
using detail::write_seq;

PolicyContract::PolicyContract(Address cf, Point cf_pk, std::uint32_t catalog_size,
                               std::uint64_t cap, PoolParams pool)
    : cf_(cf),
      cf_pk_(cf_pk),
      catalog_size_(catalog_size),
      cap_(cap),
      enc_policies_(catalog_size),
      pool_(pool) {}

void PolicyContract::require_cf(const CallContext& ctx) const {
  require(ctx.sender() == cf_, ErrorCode::kNotCF, ctx.sender().hex());
}

bool PolicyContract::campaign_initialized(const CallContext& ctx) const {
  if (!fsc_) return false;
  const auto* fsc = ctx.view<FundContract>(*fsc_);
  return fsc != nullptr && fsc->initialized();
}

std::uint64_t PolicyContract::policy_value(std::uint32_t index,
                                           const Scalar& validator_sk) const {
  require(index < catalog_size_, ErrorCode::kIndexOutOfRange, std::to_string(index));
  require(enc_keys_.size() == catalog_size_, ErrorCode::kPolicyMissing, "campaign keys");
  require(enc_policies_[index].has_value(), ErrorCode::kPolicyMissing,
          "slot " + std::to_string(index));
  const Bytes key_bytes = hybrid_decrypt(validator_sk, enc_keys_[index]);
  ByteReader kr(key_bytes);
  const auto key = read_symmetric_key(kr);
  kr.expect_done();
  return parse_policy_plaintext(sym_decrypt(key, *enc_policies_[index]), index);
}

std::vector<std::uint64_t> PolicyContract::policy_values(const Scalar& validator_sk) const {
  std::vector<std::uint64_t> out(catalog_size_);
  for (std::uint32_t i = 0; i < catalog_size_; ++i) out[i] = policy_value(i, validator_sk);
  return out;
}

Bytes PolicyContract::lottery_seed() const {
  if (attempt_ == 0) return epsilon_;
  ByteWriter w;
  w.bytes(epsilon_).u32(attempt_);
  const auto h = hash32("themis/v1/lottery-redraw", w.data());
  return Bytes(h.begin(), h.end());
}

const PoolCandidate* PolicyContract::member(ParticipantId index) const {
  if (index == 0 || index > members_.size()) return nullptr;
  return &candidates_[members_[index - 1]];
}

Bytes PolicyContract::call(CallContext& ctx, std::string_view function, ByteReader& args) {
  if (function == "LinkFsc") {
    require_cf(ctx);
    const auto addr = read_address(args);
    require(!fsc_.has_value(), ErrorCode::kAlreadyInitialized, "fsc already linked");
    const auto* fsc = ctx.view<FundContract>(addr);
    require(fsc != nullptr && fsc->psc() == ctx.self(), ErrorCode::kUnknownContract,
            "not an fsc for this psc: " + addr.hex());
    fsc_ = addr;
    return {};
  }

  if (function == "StorePolicy") {
    const auto index = args.u32();
    auto ct = read_sym_ciphertext(args);
    require_cf(ctx);
    require(!campaign_initialized(ctx), ErrorCode::kAlreadyInitialized, "campaign running");
    require(index < catalog_size_, ErrorCode::kIndexOutOfRange, std::to_string(index));
    enc_policies_[index] = std::move(ct);
    return {};
  }

  if (function == "StoreEncryptedKeys") {
    auto keys = read_seq(args, read_hybrid_ciphertext);
    const auto sig = read_signature(args);
    require(verify_sig(cf_pk_, enc_keys_message(ctx.self(), keys), sig, kEncKeysSigDomain),
            ErrorCode::kBadSignature, "campaign keys");
    require(!campaign_initialized(ctx), ErrorCode::kAlreadyInitialized, "campaign running");
    require(keys.size() == catalog_size_, ErrorCode::kLengthMismatch,
            std::to_string(keys.size()) + " keys for " + std::to_string(catalog_size_) +
                " ads");
    enc_keys_ = std::move(keys);
    return {};
  }

  if (function == "ComputeAggregate") {
    const auto user_pk = read_point(args);
    auto enc_vec = read_seq(args, read_ciphertext);
    auto enc_vec_prime = read_seq(args, read_ciphertext);
    require(campaign_initialized(ctx), ErrorCode::kNotInitialized, "campaign not started");
    require(!ctx.view<FundContract>(*fsc_)->analytics_frozen(), ErrorCode::kAnalyticsFrozen);
    require(enc_vec.size() == catalog_size_ && enc_vec_prime.size() == catalog_size_,
            ErrorCode::kLengthMismatch,
            std::to_string(enc_vec.size()) + "/" + std::to_string(enc_vec_prime.size()) +
                " for " + std::to_string(catalog_size_) + " ads");
    require(!user_pk.is_identity(), ErrorCode::kInvalidArgument, "identity user key");
    require(!aggregates_.contains(user_pk), ErrorCode::kAlreadyClaimed, "aggregate exists");
    const auto policies = policy_values(ctx.validator().tx_key.sk);
    const auto agg = weighted_sum(policies, enc_vec);
    agg_sigs_[user_pk] = sign(ctx.validator().aggregate_key.sk,
                              aggregate_message(ctx.self(), user_pk, agg),
                              kAggregateSigDomain);
    aggregates_[user_pk] = agg;
    reported_.push_back(std::move(enc_vec_prime));
    ctx.emit("aggregate");
    return {};
  }

  if (function == "GetAggregate") {
    const auto user_pk = read_point(args);
    auto it = aggregates_.find(user_pk);
    require(it != aggregates_.end(), ErrorCode::kUnknownUser, "no aggregate");
    ByteWriter w;
    w << it->second << agg_sigs_.at(user_pk);
    return std::move(w).take();
  }

  if (function == "PaymentRequest") {
    const auto msg = read_payment_request(args);
    auto it = aggregates_.find(msg.user_pk);
    require(it != aggregates_.end(), ErrorCode::kUnknownUser, "no aggregate");
    require(!requested_.contains(msg.user_pk), ErrorCode::kDuplicateRequest,
            "already requested this period");
    require(verify_sig(ctx.validator().aggregate_key.pk,
                       aggregate_message(ctx.self(), msg.user_pk, it->second),
                       msg.reward_signature, kAggregateSigDomain),
            ErrorCode::kBadSignature, "reward signature");
    require(verify_decryption(msg.user_pk, it->second, Point::base_mul(msg.amount), msg.proof),
            ErrorCode::kBadProof, "decryption proof");
    require(msg.amount <= cap_, ErrorCode::kCapExceeded,
            std::to_string(msg.amount) + " > " + std::to_string(cap_));
    requested_.insert(msg.user_pk);
    ByteWriter w;
    w << msg.user_pk << msg.payout;
    w.u64(msg.amount);
    ctx.call(*fsc_, "BufferPaymentRequest", w.data());
    ctx.emit("payment-request");
    return {};
  }

  if (function == "RegisterCandidate") {
    const auto vrf_pk = read_point(args);
    const auto member_pk = read_point(args);
    require(registration_open_, ErrorCode::kInvalidArgument, "registration closed");
    for (const auto& c : candidates_) {
      require(c.vrf_pk != vrf_pk, ErrorCode::kInvalidArgument, "vrf key registered twice");
    }
    candidates_.push_back({ctx.sender(), vrf_pk, member_pk});
    ByteWriter w;
    w.u32(static_cast<std::uint32_t>(candidates_.size() - 1));
    return std::move(w).take();
  }

  if (function == "CloseRegistration") {
    auto epsilon = args.bytes();
    require_cf(ctx);
    require(registration_open_, ErrorCode::kInvalidArgument, "registration closed");
    require(!epsilon.empty(), ErrorCode::kInvalidArgument, "empty lottery seed");
    pool_.draw_pool = candidates_.size();
    pool_.validate();
    epsilon_ = std::move(epsilon);
    registration_open_ = false;
    return {};
  }

  if (function == "SubmitLotteryTicket") {
    const auto candidate = args.u32();
    const auto ticket = read_vrf_output(args);
    require(!registration_open_, ErrorCode::kPoolNotReady, "registration still open");
    require(members_.empty(), ErrorCode::kAlreadyInitialized, "pool already formed");
    require(candidate < candidates_.size(), ErrorCode::kIndexOutOfRange,
            std::to_string(candidate));
    const auto& c = candidates_[candidate];
    require(c.account == ctx.sender(), ErrorCode::kNotAuthorized, ctx.sender().hex());
    require(vrf_verify(c.vrf_pk, lottery_seed(), ticket, pool_.p), ErrorCode::kBadProof,
            "vrf ticket");
    require(draw_winner(ticket.rand, max_draw(pool_)), ErrorCode::kLotteryLost);
    winners_.insert(candidate);
    return {};
  }

  if (function == "CloseLottery") {
    require_cf(ctx);
    require(!registration_open_, ErrorCode::kPoolNotReady, "registration still open");
    require(members_.empty(), ErrorCode::kAlreadyInitialized, "pool already formed");
    ByteWriter w;
    if (winners_.size() < pool_.k) {
      ++attempt_;
      winners_.clear();
      ctx.emit("lottery:redraw:" + std::to_string(attempt_));
      w.boolean(false);
    } else {
      members_.assign(winners_.begin(), winners_.end());
      ctx.emit("lottery:closed:" + std::to_string(members_.size()));
      w.boolean(true);
    }
    return std::move(w).take();
  }

  if (function == "PublishThresholdKey") {
    const auto index = args.u32();
    auto tpk = read_threshold_public_key(args);
    require(!members_.empty(), ErrorCode::kPoolNotReady, "lottery not closed");
    const auto* m = member(index);
    require(m != nullptr, ErrorCode::kIndexOutOfRange, "member " + std::to_string(index));
    require(m->account == ctx.sender(), ErrorCode::kNotAuthorized, ctx.sender().hex());
    require(!tpk_.has_value(), ErrorCode::kAlreadyInitialized, "pk_T already published");
    require(tpk.k == pool_.k, ErrorCode::kInvalidArgument, "threshold differs from pool");
    for (const auto& [other, submitted] : tpk_submissions_) {
      require(submitted == tpk, ErrorCode::kDkgDisagreement,
              "member " + std::to_string(index) + " vs " + std::to_string(other));
    }
    tpk_submissions_[index] = std::move(tpk);
    if (tpk_submissions_.size() == members_.size()) {
      tpk_ = tpk_submissions_.begin()->second;
      ctx.emit("pool:pk_T");
    }
    return {};
  }

  fail(ErrorCode::kUnknownFunction, std::string(function));
}

void PolicyContract::encode_state(ByteWriter& w) const {
  w << cf_ << cf_pk_;
  w.u32(catalog_size_).u64(cap_).boolean(fsc_.has_value());
  if (fsc_) w << *fsc_;
  w.u32(catalog_size_);
  for (const auto& slot : enc_policies_) {
    w.boolean(slot.has_value());
    if (slot) w << *slot;
  }
  write_seq(w, enc_keys_);
  w.u32(static_cast<std::uint32_t>(aggregates_.size()));
  for (const auto& [pk, ct] : aggregates_) w << pk << ct << agg_sigs_.at(pk);
  w.u32(static_cast<std::uint32_t>(reported_.size()));
  for (const auto& v : reported_) write_seq(w, v);
  w.u32(static_cast<std::uint32_t>(requested_.size()));
  for (const auto& pk : requested_) w << pk;

  w.u64(pool_.n).u64(pool_.k).u64(pool_.draw_pool).u64(pool_.p);
  w.u32(static_cast<std::uint32_t>(candidates_.size()));
  for (const auto& c : candidates_) w << c.account << c.vrf_pk << c.member_pk;
  w.boolean(registration_open_).bytes(epsilon_).u32(attempt_);
  w.u32(static_cast<std::uint32_t>(winners_.size()));
  for (auto i : winners_) w.u32(i);
  write_seq(w, members_);
  w.u32(static_cast<std::uint32_t>(tpk_submissions_.size()));
  for (const auto& [i, tpk] : tpk_submissions_) w.u32(i) << tpk;
  w.boolean(tpk_.has_value());
  if (tpk_) w << *tpk_;
}

}  // namespace themis
