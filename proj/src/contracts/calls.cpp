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

#include "codec.hpp"
#include "themis/contracts.hpp"
#include "themis/error.hpp"

namespace themis {

using detail::write_seq;

Bytes aggregate_message(const Address& psc, const Point& user_pk, const Ciphertext& agg) {
  ByteWriter w;
  w << psc << user_pk << agg;
  return std::move(w).take();
}

Bytes enc_keys_message(const Address& psc, const std::vector<HybridCiphertext>& keys) {
  ByteWriter w;
  w << psc;
  write_seq(w, keys);
  return std::move(w).take();
}

Bytes settlement_message(const Address& fsc, std::uint64_t tau, std::uint64_t sequence) {
  ByteWriter w;
  w << fsc;
  w.u64(tau).u64(sequence);
  return std::move(w).take();
}

Bytes aggr_clicks_message(const Address& fsc, std::span<const std::uint64_t> totals,
                          std::uint64_t sequence) {
  ByteWriter w;
  w << fsc;
  write_seq(w, totals);
  w.u64(sequence);
  return std::move(w).take();
}

Bytes policy_plaintext(std::uint32_t index, std::uint64_t value) {
  ByteWriter w;
  w.u32(index).u64(value);
  return std::move(w).take();
}

std::uint64_t parse_policy_plaintext(ByteView plain, std::uint32_t expected_index) {
  ByteReader r(plain);
  const auto index = r.u32();
  const auto value = r.u64();
  r.expect_done();
  require(index == expected_index, ErrorCode::kInvalidEncoding,
          "policy slot " + std::to_string(index) + " stored at " +
              std::to_string(expected_index));
  return value;
}

ByteWriter& operator<<(ByteWriter& w, const PaymentRequestMsg& m) {
  w << m.user_pk;
  w.u64(m.amount);
  return w << m.reward_signature << m.proof << m.payout;
}

PaymentRequestMsg read_payment_request(ByteReader& r) {
  PaymentRequestMsg m;
  m.user_pk = read_point(r);
  m.amount = r.u64();
  m.reward_signature = read_signature(r);
  m.proof = read_dleq_proof(r);
  m.payout = read_address(r);
  return m;
}

namespace {

PoolParams read_pool_params(ByteReader& r) {
  PoolParams p;
  p.n = r.u64();
  p.k = r.u64();
  p.draw_pool = r.u64();
  p.p = r.u64();
  return p;
}

}  // namespace

void register_campaign_contracts(ContractRegistry& registry) {
  registry.add(std::string(kConfPoolKind), [](CallContext&, ByteReader&) {
    return std::make_unique<ConfidentialPool>();
  });
  registry.add(std::string(kPscKind), [](CallContext& ctx, ByteReader& r) {
    const auto cf_pk = read_point(r);
    const auto size = r.u32();
    const auto cap = r.u64();
    const auto pool = read_pool_params(r);
    require(Address::from_public_key(cf_pk) == ctx.sender(), ErrorCode::kNotCF,
            "deployer does not own the CF key");
    require(size >= 1, ErrorCode::kInvalidArgument, "empty catalog");
    pool.validate();
    return std::make_unique<PolicyContract>(ctx.sender(), cf_pk, size, cap, pool);
  });
  registry.add(std::string(kFscKind), [](CallContext& ctx, ByteReader& r) {
    const auto cf_pk = read_point(r);
    const auto psc = read_address(r);
    const auto pool = read_address(r);
    const auto epoch = r.u64();
    require(Address::from_public_key(cf_pk) == ctx.sender(), ErrorCode::kNotCF,
            "deployer does not own the CF key");
    const auto* policy = ctx.view<PolicyContract>(psc);
    require(policy != nullptr, ErrorCode::kUnknownContract, "psc " + psc.hex());
    require(policy->cf() == ctx.sender(), ErrorCode::kNotCF, "psc has another CF");
    require(ctx.view<ConfidentialPool>(pool) != nullptr, ErrorCode::kUnknownContract,
            "conf-pool " + pool.hex());
    require(epoch >= 1, ErrorCode::kInvalidArgument, "epoch must be at least one block");
    return std::make_unique<FundContract>(ctx.sender(), cf_pk, psc, pool, epoch);
  });
}

std::shared_ptr<const ContractRegistry> campaign_registry() {
  static const auto registry = [] {
    auto r = std::make_shared<ContractRegistry>();
    register_campaign_contracts(*r);
    return std::shared_ptr<const ContractRegistry>(std::move(r));
  }();
  return registry;
}

namespace calls {

namespace {
Bytes done(ByteWriter& w) { return std::move(w).take(); }
}  // namespace

Bytes deploy_conf_pool() { return {}; }

Bytes deploy_psc(const Point& cf_pk, std::uint32_t catalog_size, std::uint64_t cap,
                 const PoolParams& pool) {
  ByteWriter w;
  w << cf_pk;
  w.u32(catalog_size).u64(cap).u64(pool.n).u64(pool.k).u64(pool.draw_pool).u64(pool.p);
  return done(w);
}

Bytes deploy_fsc(const Point& cf_pk, const Address& psc, const Address& pool,
                 std::uint64_t epoch) {
  ByteWriter w;
  w << cf_pk << psc << pool;
  w.u64(epoch);
  return done(w);
}

Bytes settle(std::uint64_t tau, const SettlementBatch& batch) {
  ByteWriter w;
  w.u64(tau) << batch;
  return done(w);
}

Bytes redeem(const TxRef& ref, const Scalar& blinding, std::uint64_t amount) {
  ByteWriter w;
  w.fixed(ref) << blinding;
  w.u64(amount);
  return done(w);
}

Bytes link_fsc(const Address& fsc) {
  ByteWriter w;
  w << fsc;
  return done(w);
}

Bytes store_policy(std::uint32_t index, const SymCiphertext& enc_policy) {
  ByteWriter w;
  w.u32(index) << enc_policy;
  return done(w);
}

Bytes store_encrypted_keys(const std::vector<HybridCiphertext>& keys, const Signature& sig) {
  ByteWriter w;
  write_seq(w, keys);
  w << sig;
  return done(w);
}

Bytes compute_aggregate(const Point& user_pk, std::span<const Ciphertext> enc_vec,
                        std::span<const Ciphertext> enc_vec_prime) {
  ByteWriter w;
  w << user_pk;
  write_seq(w, enc_vec);
  write_seq(w, enc_vec_prime);
  return done(w);
}

Bytes get_aggregate(const Point& user_pk) {
  ByteWriter w;
  w << user_pk;
  return done(w);
}

Bytes payment_request(const PaymentRequestMsg& msg) {
  ByteWriter w;
  w << msg;
  return done(w);
}

Bytes register_candidate(const Point& vrf_pk, const Point& member_pk) {
  ByteWriter w;
  w << vrf_pk << member_pk;
  return done(w);
}

Bytes close_registration(ByteView epsilon) {
  ByteWriter w;
  w.bytes(epsilon);
  return done(w);
}

Bytes submit_lottery_ticket(std::uint32_t candidate, const VrfOutput& ticket) {
  ByteWriter w;
  w.u32(candidate) << ticket;
  return done(w);
}

Bytes close_lottery() { return {}; }

Bytes publish_threshold_key(ParticipantId member, const ThresholdPublicKey& tpk) {
  ByteWriter w;
  w.u32(member) << tpk;
  return done(w);
}

Bytes store_adv_id(std::uint32_t id, const Address& account,
                   std::span<const std::uint32_t> ads,
                   std::span<const std::uint64_t> impressions, std::uint64_t fee) {
  ByteWriter w;
  w.u32(id) << account;
  write_seq(w, ads);
  write_seq(w, impressions);
  w.u64(fee);
  return done(w);
}

Bytes store_funds(std::uint32_t id, std::uint64_t amount) {
  ByteWriter w;
  w.u32(id).u64(amount);
  return done(w);
}

Bytes store_aggr_clicks(ParticipantId member, std::span<const std::uint64_t> totals,
                        const Signature& sig) {
  ByteWriter w;
  w.u32(member);
  write_seq(w, totals);
  w << sig;
  return done(w);
}

Bytes freeze_analytics() { return {}; }

Bytes post_partials(ParticipantId member, std::span<const PartialDecryption> partials) {
  ByteWriter w;
  w.u32(member);
  write_seq(w, partials);
  return done(w);
}

Bytes settlement_request(std::uint64_t tau, const Signature& sig) {
  ByteWriter w;
  w.u64(tau) << sig;
  return done(w);
}

Bytes payment_processed(const TxRef& ref, const Address& payout) {
  ByteWriter w;
  w.fixed(ref) << payout;
  return done(w);
}

Bytes raise_complaint(const Point& user_pk, const TxRef& ref, const Scalar& blinding,
                      std::uint64_t amount) {
  ByteWriter w;
  w << user_pk;
  w.fixed(ref) << blinding;
  w.u64(amount);
  return done(w);
}

Bytes refund_advertisers() { return {}; }
Bytes pay_processing_fees() { return {}; }

Bytes claim_insufficient_refund(std::uint32_t id) {
  ByteWriter w;
  w.u32(id);
  return done(w);
}

std::pair<Ciphertext, Signature> parse_aggregate(ByteView output) {
  ByteReader r(output);
  auto ct = read_ciphertext(r);
  auto sig = read_signature(r);
  r.expect_done();
  return {ct, sig};
}

}  // namespace calls

}  // namespace themis
