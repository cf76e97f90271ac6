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
#include <set>

#include "codec.hpp"
#include "themis/contracts.hpp"
#include "themis/error.hpp"

namespace themis {

using detail::read_seq;
using detail::write_seq;

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  require(a <= UINT64_MAX - b, ErrorCode::kInvalidArgument, "token amount overflow");
  return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  const u128 p = static_cast<u128>(a) * b;
  require(p <= UINT64_MAX, ErrorCode::kInvalidArgument, "token amount overflow");
  return static_cast<std::uint64_t>(p);
}

}  // namespace

FundContract::FundContract(Address cf, Point cf_pk, Address psc, Address pool,
                           std::uint64_t epoch)
    : cf_(cf), cf_pk_(cf_pk), psc_(psc), pool_(pool), epoch_(epoch) {}

std::uint64_t FundContract::fees_total() const {
  std::uint64_t sum = 0;
  for (const auto& [id, adv] : advs_) sum += adv.fee;
  return sum;
}

std::uint64_t FundContract::pending_total() const {
  std::uint64_t sum = 0;
  for (const auto& r : requests_) {
    if (!r.paid) sum += r.amount;
  }
  return sum;
}

bool FundContract::all_requests_paid() const {
  return std::all_of(requests_.begin(), requests_.end(),
                     [](const RequestRecord& r) { return r.paid; });
}

void FundContract::require_cf(const CallContext& ctx) const {
  require(ctx.sender() == cf_, ErrorCode::kNotCF, ctx.sender().hex());
}

void FundContract::require_open() const {
  require(init_, ErrorCode::kNotInitialized, "campaign not started");
  require(status_ != CampaignStatus::kFailed, ErrorCode::kCampaignFailed);
  require(!closed_, ErrorCode::kCampaignClosed);
}

const PolicyContract& FundContract::policy(const CallContext& ctx) const {
  const auto* psc = ctx.view<PolicyContract>(psc_);
  require(psc != nullptr, ErrorCode::kUnknownContract, psc_.hex());
  return *psc;
}

std::uint64_t FundContract::required_stake(const CallContext& ctx,
                                           const AdvertiserRecord& adv) const {
  const auto& psc = policy(ctx);
  std::uint64_t budget = 0;
  for (std::size_t j = 0; j < adv.ads.size(); ++j) {
    const auto value = psc.policy_value(adv.ads[j], ctx.validator().tx_key.sk);
    budget = checked_add(budget, checked_mul(adv.impressions[j], value));
  }
  return checked_add(budget, adv.fee);
}

bool FundContract::epoch_elapsed(const CallContext& ctx) const {
  return init_ && ctx.height() >= start_height_ + epoch_;
}

void FundContract::pay_fees(CallContext& ctx) {
  if (fees_paid_) return;
  ctx.pay(cf_, fees_total());
  fees_paid_ = true;
  ctx.emit("fees:paid");
}

void FundContract::close(CallContext& ctx) {
  if (status_ == CampaignStatus::kActive && all_requests_paid()) pay_fees(ctx);
  const auto policies = policy(ctx).policy_values(ctx.validator().tx_key.sk);
  for (auto& [id, adv] : advs_) {
    std::uint64_t spent = 0;
    for (auto ad : adv.ads) spent = checked_add(spent, checked_mul(policies[ad], aggr_clicks_[ad]));
    adv.spent = spent;
    const auto used = checked_add(spent, adv.fee);
    std::uint64_t due = 0;
    if (used <= adv.stake) {
      due = adv.stake - used;
    } else {
      adv.debt = used - adv.stake;
      ctx.emit("payment-requested:" + std::to_string(id));
    }
    adv.refund = std::min(due, ctx.balance(ctx.self()));
    adv.shortfall = due - adv.refund;
    ctx.pay(adv.account, adv.refund);
  }
  closed_ = true;
  ctx.emit("campaign:closed");
}

void FundContract::maybe_close(CallContext& ctx) {
  if (!closed_ && analytics_done_ && all_requests_paid() && epoch_elapsed(ctx)) close(ctx);
}

Bytes FundContract::call(CallContext& ctx, std::string_view function, ByteReader& args) {
  if (function == "StoreAdvId") {
    AdvertiserRecord adv;
    adv.id = args.u32();
    adv.account = read_address(args);
    adv.ads = read_seq(args, detail::read_u32);
    adv.impressions = read_seq(args, detail::read_u64);
    adv.fee = args.u64();
    require_cf(ctx);
    require(!init_, ErrorCode::kAlreadyInitialized, "campaign running");
    require(!advs_.contains(adv.id), ErrorCode::kInvalidArgument,
            "advertiser " + std::to_string(adv.id) + " exists");
    require(adv.ads.size() == adv.impressions.size(), ErrorCode::kLengthMismatch,
            "ads vs impressions");
    require(!adv.ads.empty(), ErrorCode::kInvalidArgument, "advertiser without ads");
    const auto n = policy(ctx).catalog_size();
    std::set<std::uint32_t> taken;
    for (const auto& [id, other] : advs_) taken.insert(other.ads.begin(), other.ads.end());
    for (auto ad : adv.ads) {
      require(ad < n, ErrorCode::kIndexOutOfRange, "ad " + std::to_string(ad));
      require(taken.insert(ad).second, ErrorCode::kInvalidArgument,
              "ad " + std::to_string(ad) + " assigned twice");
    }
    advs_.emplace(adv.id, std::move(adv));
    return {};
  }

  if (function == "StoreFunds") {
    const auto id = args.u32();
    const auto amount = args.u64();
    require(!init_, ErrorCode::kAlreadyInitialized, "campaign running");
    auto it = advs_.find(id);
    require(it != advs_.end(), ErrorCode::kUnknownAdvertiser, std::to_string(id));
    auto& adv = it->second;
    require(adv.account == ctx.sender(), ErrorCode::kNotAuthorized, ctx.sender().hex());
    require(!adv.staked, ErrorCode::kAlreadyStaked, std::to_string(id));
    const auto required = required_stake(ctx, adv);
    require(amount == required, ErrorCode::kWrongStakeAmount,
            std::to_string(amount) + " != " + std::to_string(required));
    ctx.pull_from_sender(amount);
    adv.stake = amount;
    adv.staked = true;
    if (std::all_of(advs_.begin(), advs_.end(), [](const auto& e) { return e.second.staked; })) {
      init_ = true;
      start_height_ = ctx.height();
      aggr_clicks_.assign(policy(ctx).catalog_size(), 0);
      ctx.emit("campaign:init");
    }
    return {};
  }

  if (function == "BufferPaymentRequest") {
    RequestRecord req;
    req.user_pk = read_point(args);
    req.payout = read_address(args);
    req.amount = args.u64();
    require(ctx.sender() == psc_, ErrorCode::kNotAuthorized, "only the psc buffers requests");
    require_open();
    for (const auto& r : requests_) {
      require(r.payout != req.payout && r.user_pk != req.user_pk, ErrorCode::kDuplicateRequest,
              req.payout.hex());
    }
    requests_.push_back(req);
    return {};
  }

  if (function == "StoreAggrClicks") {
    const auto index = args.u32();
    const auto totals = read_seq(args, detail::read_u64);
    const auto sig = read_signature(args);
    const auto* m = policy(ctx).member(index);
    require(m != nullptr, ErrorCode::kBadSignature, "no pool member " + std::to_string(index));
    require(verify_sig(m->member_pk, aggr_clicks_message(ctx.self(), totals, aggr_seq_), sig,
                       kAggrClicksSigDomain),
            ErrorCode::kBadSignature, "aggregate clicks");
    require(init_, ErrorCode::kNotInitialized, "campaign not started");
    require(!closed_, ErrorCode::kCampaignClosed);
    require(totals.size() == aggr_clicks_.size(), ErrorCode::kLengthMismatch, "totals");
    for (std::size_t i = 0; i < totals.size(); ++i) {
      aggr_clicks_[i] = checked_add(aggr_clicks_[i], totals[i]);
    }
    ++aggr_seq_;
    return {};
  }

  if (function == "FreezeAnalytics") {
    require(init_, ErrorCode::kNotInitialized, "campaign not started");
    require(!frozen_, ErrorCode::kAnalyticsFrozen);
    const auto& psc = policy(ctx);
    bool allowed = ctx.sender() == cf_;
    for (std::uint32_t i = 1; !allowed && psc.member(i) != nullptr; ++i) {
      allowed = psc.member(i)->account == ctx.sender();
    }
    require(allowed, ErrorCode::kNotAuthorized, ctx.sender().hex());
    enc_totals_.assign(psc.catalog_size(), zero_ciphertext());
    for (const auto& vec : psc.reported_vectors()) {
      for (std::size_t i = 0; i < vec.size(); ++i) enc_totals_[i] = enc_totals_[i] + vec[i];
    }
    frozen_ = true;
    ctx.emit("analytics:frozen");
    return {};
  }

  if (function == "PostPartials") {
    const auto index = args.u32();
    auto partials = read_seq(args, read_partial_decryption);
    require(frozen_, ErrorCode::kAnalyticsPending, "analytics not frozen");
    const auto& psc = policy(ctx);
    require(psc.threshold_key().has_value(), ErrorCode::kPoolNotReady, "no pk_T");
    const auto& tpk = *psc.threshold_key();
    const auto* m = psc.member(index);
    require(m != nullptr && m->account == ctx.sender(), ErrorCode::kNotAuthorized,
            ctx.sender().hex());
    require(partials.size() == enc_totals_.size(), ErrorCode::kLengthMismatch, "partials");
    require(!partials_.contains(index), ErrorCode::kAlreadyClaimed,
            "member " + std::to_string(index) + " already posted");
    for (std::size_t i = 0; i < partials.size(); ++i) {
      require(partials[i].index == index, ErrorCode::kInvalidArgument, "partial index");
      require(verify_partial(tpk, enc_totals_[i], partials[i]), ErrorCode::kInvalidShareProof,
              "ad " + std::to_string(i));
    }
    partials_.emplace(index, std::move(partials));
    if (!analytics_done_ && partials_.size() >= tpk.k) {
      std::vector<PartialDecryption> column;
      for (std::size_t i = 0; i < enc_totals_.size(); ++i) {
        column.clear();
        for (const auto& [member, ps] : partials_) column.push_back(ps[i]);
        const auto point = combine_partials(tpk, column, enc_totals_[i]);
        aggr_clicks_[i] = checked_add(aggr_clicks_[i], recover_plaintext(point, kAnalyticsBound));
      }
      analytics_done_ = true;
      ctx.emit("analytics:combined");
      maybe_close(ctx);
    }
    return {};
  }

  if (function == "SettlementRequest") {
    const auto tau = args.u64();
    const auto sig = read_signature(args);
    require(verify_sig(cf_pk_, settlement_message(ctx.self(), tau, settlement_seq_), sig,
                       kSettlementSigDomain),
            ErrorCode::kBadSignature, "settlement");
    require_open();
    const auto escrow = ctx.balance(ctx.self());
    require(tau <= escrow, ErrorCode::kOverdraw,
            std::to_string(tau) + " > escrow " + std::to_string(escrow));
    ++settlement_seq_;
    settled_ += tau;
    ctx.pay(cf_, tau);
    return {};
  }

  if (function == "PaymentProcessed") {
    const auto ref = args.array<32>();
    const auto payout = read_address(args);
    require_cf(ctx);
    auto it = std::find_if(requests_.begin(), requests_.end(),
                           [&](const RequestRecord& r) { return r.payout == payout; });
    require(it != requests_.end(), ErrorCode::kUnknownAddress, payout.hex());
    const auto* note = ctx.view<ConfidentialPool>(pool_)->note(ref);
    require(note != nullptr && note->recipient == payout, ErrorCode::kUnknownTxRef,
            to_hex(ref));
    if (it->paid) return {};
    for (const auto& r : requests_) {
      require(!r.paid || r.tx_ref != ref, ErrorCode::kDuplicateTxRef, to_hex(ref));
    }
    it->paid = true;
    it->tx_ref = ref;
    maybe_close(ctx);
    return {};
  }

  if (function == "RaiseComplaint") {
    const auto user_pk = read_point(args);
    const auto ref = args.array<32>();
    const auto blinding = read_scalar(args);
    const auto amount = args.u64();
    auto it = std::find_if(requests_.begin(), requests_.end(),
                           [&](const RequestRecord& r) { return r.user_pk == user_pk; });
    require(it != requests_.end(), ErrorCode::kUnknownUser, "no request for this key");
    const auto* note = ctx.view<ConfidentialPool>(pool_)->note(ref);
    require(note != nullptr && note->recipient == it->payout, ErrorCode::kUnknownTxRef,
            to_hex(ref));
    require(open_verify(note->commitment, blinding, amount), ErrorCode::kBadOpening,
            to_hex(ref));
    ComplaintRecord rec;
    rec.kind = ComplaintKind::kUser;
    rec.height = ctx.height();
    rec.user_pk = user_pk;
    rec.tx_ref = ref;
    rec.validated = amount != it->amount;
    complaints_.push_back(rec);
    if (rec.validated) {
      status_ = CampaignStatus::kFailed;
      ctx.emit("complaint:user:validated");
    } else {
      ctx.emit("complaint:user:rejected");
    }
    ByteWriter w;
    w.boolean(rec.validated);
    return std::move(w).take();
  }

  if (function == "RefundAdvertisers") {
    require(init_, ErrorCode::kNotInitialized, "campaign not started");
    require(!closed_, ErrorCode::kCampaignClosed);
    require(epoch_elapsed(ctx), ErrorCode::kCampaignActive,
            "epoch ends at height " + std::to_string(start_height_ + epoch_));
    require(analytics_done_, ErrorCode::kAnalyticsPending);
    close(ctx);
    return {};
  }

  if (function == "PayProcessingFees") {
    require(status_ != CampaignStatus::kFailed, ErrorCode::kCampaignFailed);
    require(init_ && all_requests_paid(), ErrorCode::kCampaignActive, "payments outstanding");
    pay_fees(ctx);
    return {};
  }

  if (function == "ClaimInsufficientRefund") {
    const auto id = args.u32();
    auto it = advs_.find(id);
    require(it != advs_.end(), ErrorCode::kUnknownAdvertiser, std::to_string(id));
    require(closed_, ErrorCode::kRefundsNotExecuted);
    const auto& adv = it->second;
    const u128 accounted = static_cast<u128>(adv.spent) + adv.refund + adv.fee;
    const u128 expected = static_cast<u128>(adv.stake) + adv.debt;
    ComplaintRecord rec;
    rec.kind = ComplaintKind::kAdvertiser;
    rec.height = ctx.height();
    rec.advertiser = id;
    rec.validated = accounted != expected;
    complaints_.push_back(rec);
    if (rec.validated) {
      status_ = CampaignStatus::kFailed;
      ctx.emit("complaint:advertiser:validated");
    } else {
      ctx.emit("complaint:advertiser:rejected");
    }
    ByteWriter w;
    w.boolean(rec.validated);
    return std::move(w).take();
  }

  fail(ErrorCode::kUnknownFunction, std::string(function));
}

void FundContract::encode_state(ByteWriter& w) const {
  w << cf_ << cf_pk_ << psc_ << pool_;
  w.u64(epoch_).boolean(init_).u64(start_height_).u8(static_cast<std::uint8_t>(status_));
  w.boolean(closed_).boolean(fees_paid_).u64(settled_).u64(settlement_seq_).u64(aggr_seq_);
  w.u32(static_cast<std::uint32_t>(advs_.size()));
  for (const auto& [id, a] : advs_) {
    w.u32(id) << a.account;
    write_seq(w, a.ads);
    write_seq(w, a.impressions);
    w.u64(a.fee).u64(a.stake).boolean(a.staked).u64(a.spent).u64(a.refund).u64(a.debt).u64(
        a.shortfall);
  }
  w.u32(static_cast<std::uint32_t>(requests_.size()));
  for (const auto& r : requests_) {
    w << r.user_pk << r.payout;
    w.u64(r.amount).boolean(r.paid).fixed(r.tx_ref);
  }
  w.boolean(frozen_).boolean(analytics_done_);
  write_seq(w, enc_totals_);
  w.u32(static_cast<std::uint32_t>(partials_.size()));
  for (const auto& [i, ps] : partials_) {
    w.u32(i);
    write_seq(w, ps);
  }
  write_seq(w, aggr_clicks_);
  w.u32(static_cast<std::uint32_t>(complaints_.size()));
  for (const auto& c : complaints_) {
    w.u8(static_cast<std::uint8_t>(c.kind)).u64(c.height).boolean(c.validated);
    w << c.user_pk;
    w.fixed(c.tx_ref).u32(c.advertiser);
  }
}

}  // namespace themis
