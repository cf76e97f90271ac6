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

// Campaign contracts executed natively by the ledger.
//
//   PolicyContract (kind "psc")        encrypted policies and keys, reward
//                                      aggregates, payment requests, and the
//                                      consensus-pool lottery and pk_T.
//   FundContract (kind "fsc")          advertiser escrow, buffered payment
//                                      requests, analytics, settlement,
//                                      complaints and refunds.
//   ConfidentialPool (kind "conf-pool") committed-value notes created by
//                                      settlement batches.
//
// Argument encodings for every function are produced by the helpers in
// namespace `calls`; contracts reject trailing bytes.

#ifndef THEMIS_CONTRACTS_HPP_
#define THEMIS_CONTRACTS_HPP_

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "themis/confidential_pay.hpp"
#include "themis/ledger.hpp"
#include "themis/proofs.hpp"
#include "themis/signature.hpp"
#include "themis/threshold.hpp"

namespace themis {

inline constexpr std::string_view kConfPoolKind = "conf-pool";
inline constexpr std::string_view kPscKind = "psc";
inline constexpr std::string_view kFscKind = "fsc";

inline constexpr std::uint64_t kDefaultRewardCap = 10000;

inline constexpr std::string_view kAggregateSigDomain = "themis/v1/aggregate-signature";
inline constexpr std::string_view kEncKeysSigDomain = "themis/v1/sig/enc-keys";
inline constexpr std::string_view kSettlementSigDomain = "themis/v1/sig/settlement";
inline constexpr std::string_view kAggrClicksSigDomain = "themis/v1/sig/aggr-clicks";

/// Message signed by the aggregate key for a stored aggregate.
Bytes aggregate_message(const Address& psc, const Point& user_pk, const Ciphertext& agg);
/// Message signed by the CF over the encrypted campaign keys.
Bytes enc_keys_message(const Address& psc, const std::vector<HybridCiphertext>& keys);
/// Message signed by the CF to withdraw tau; `sequence` prevents replays.
Bytes settlement_message(const Address& fsc, std::uint64_t tau, std::uint64_t sequence);
/// Message signed by a pool member over a per-ad totals update.
Bytes aggr_clicks_message(const Address& fsc, std::span<const std::uint64_t> totals,
                          std::uint64_t sequence);

/// Plaintext of an encrypted policy slot: the slot index is bound in.
Bytes policy_plaintext(std::uint32_t index, std::uint64_t value);
std::uint64_t parse_policy_plaintext(ByteView plain, std::uint32_t expected_index);

/// The payment request E = [Dec.Agg, proof, Addr] plus the key it is for.
struct PaymentRequestMsg {
  Point user_pk;
  std::uint64_t amount = 0;
  Signature reward_signature;
  DecryptionProof proof;
  Address payout;

  friend bool operator==(const PaymentRequestMsg&, const PaymentRequestMsg&) = default;
};

ByteWriter& operator<<(ByteWriter& w, const PaymentRequestMsg& m);
PaymentRequestMsg read_payment_request(ByteReader& r);

// ---- confidential pool -----------------------------------------------------------

struct NoteRecord {
  Address recipient;
  Commitment commitment;
  bool redeemed = false;
};

/// Holds the tokens backing outstanding notes; its balance is the
/// confidential supply.
class ConfidentialPool final : public Contract {
 public:
  std::string_view kind() const override { return kConfPoolKind; }
  Bytes call(CallContext& ctx, std::string_view function, ByteReader& args) override;
  void encode_state(ByteWriter& w) const override;
  std::unique_ptr<Contract> clone() const override {
    return std::make_unique<ConfidentialPool>(*this);
  }

  const NoteRecord* note(const TxRef& ref) const;
  const std::map<TxRef, NoteRecord>& notes() const { return notes_; }

 private:
  std::map<TxRef, NoteRecord> notes_;
};

// ---- PSC ---------------------------------------------------------------------------

struct PoolCandidate {
  Address account;
  Point vrf_pk;
  Point member_pk;  // signs analytics updates
};

class PolicyContract final : public Contract {
 public:
  PolicyContract(Address cf, Point cf_pk, std::uint32_t catalog_size, std::uint64_t cap,
                 PoolParams pool);

  std::string_view kind() const override { return kPscKind; }
  Bytes call(CallContext& ctx, std::string_view function, ByteReader& args) override;
  void encode_state(ByteWriter& w) const override;
  std::unique_ptr<Contract> clone() const override {
    return std::make_unique<PolicyContract>(*this);
  }

  std::uint32_t catalog_size() const { return catalog_size_; }
  const Address& cf() const { return cf_; }
  const Point& cf_pk() const { return cf_pk_; }
  std::uint64_t reward_cap() const { return cap_; }
  const std::optional<Address>& fsc() const { return fsc_; }

  const std::vector<std::optional<SymCiphertext>>& enc_policies() const {
    return enc_policies_;
  }
  const std::vector<HybridCiphertext>& enc_keys() const { return enc_keys_; }
  /// Validator-side decryption of slot i. Errors: kPolicyMissing,
  /// kAuthenticationFailure.
  std::uint64_t policy_value(std::uint32_t index, const Scalar& validator_sk) const;
  std::vector<std::uint64_t> policy_values(const Scalar& validator_sk) const;

  const std::map<Point, Ciphertext>& aggregates() const { return aggregates_; }
  const std::map<Point, Signature>& aggregate_signatures() const { return agg_sigs_; }
  const std::vector<std::vector<Ciphertext>>& reported_vectors() const { return reported_; }
  const std::set<Point>& requested() const { return requested_; }

  const PoolParams& pool_params() const { return pool_; }
  const std::vector<PoolCandidate>& candidates() const { return candidates_; }
  bool registration_open() const { return registration_open_; }
  std::uint32_t lottery_attempt() const { return attempt_; }
  /// VRF input of the current draw: epsilon, then hash(epsilon || attempt).
  Bytes lottery_seed() const;
  const std::set<std::uint32_t>& winners() const { return winners_; }
  /// Candidate positions (0-based) of pool members; member index i (1-based)
  /// is members()[i-1].
  const std::vector<std::uint32_t>& members() const { return members_; }
  const PoolCandidate* member(ParticipantId index) const;
  const std::optional<ThresholdPublicKey>& threshold_key() const { return tpk_; }

 private:
  void require_cf(const CallContext& ctx) const;
  bool campaign_initialized(const CallContext& ctx) const;

  Address cf_;
  Point cf_pk_;
  std::uint32_t catalog_size_;
  std::uint64_t cap_;
  std::optional<Address> fsc_;

  std::vector<std::optional<SymCiphertext>> enc_policies_;
  std::vector<HybridCiphertext> enc_keys_;
  std::map<Point, Ciphertext> aggregates_;
  std::map<Point, Signature> agg_sigs_;
  std::vector<std::vector<Ciphertext>> reported_;
  std::set<Point> requested_;

  PoolParams pool_;
  std::vector<PoolCandidate> candidates_;
  bool registration_open_ = true;
  Bytes epsilon_;
  std::uint32_t attempt_ = 0;
  std::set<std::uint32_t> winners_;
  std::vector<std::uint32_t> members_;
  std::map<ParticipantId, ThresholdPublicKey> tpk_submissions_;
  std::optional<ThresholdPublicKey> tpk_;
};

// ---- FSC ---------------------------------------------------------------------------

struct AdvertiserRecord {
  std::uint32_t id = 0;
  Address account;
  std::vector<std::uint32_t> ads;
  std::vector<std::uint64_t> impressions;
  std::uint64_t fee = 0;
  std::uint64_t stake = 0;  // amount escrowed
  bool staked = false;
  // Filled at close.
  std::uint64_t spent = 0;
  std::uint64_t refund = 0;
  std::uint64_t debt = 0;       // spent beyond the stake, requested from the advertiser
  std::uint64_t shortfall = 0;  // refund owed but missing from escrow
};

struct RequestRecord {
  Point user_pk;
  Address payout;
  std::uint64_t amount = 0;
  bool paid = false;
  TxRef tx_ref{};
};

enum class CampaignStatus : std::uint8_t { kActive = 0, kFailed = 1 };

enum class ComplaintKind : std::uint8_t { kUser = 0, kAdvertiser = 1 };

struct ComplaintRecord {
  ComplaintKind kind = ComplaintKind::kUser;
  std::uint64_t height = 0;
  bool validated = false;
  Point user_pk;               // user complaints
  TxRef tx_ref{};              // user complaints
  std::uint32_t advertiser = 0;  // advertiser complaints
};

class FundContract final : public Contract {
 public:
  FundContract(Address cf, Point cf_pk, Address psc, Address pool, std::uint64_t epoch);

  std::string_view kind() const override { return kFscKind; }
  Bytes call(CallContext& ctx, std::string_view function, ByteReader& args) override;
  void encode_state(ByteWriter& w) const override;
  std::unique_ptr<Contract> clone() const override {
    return std::make_unique<FundContract>(*this);
  }

  bool initialized() const { return init_; }
  std::uint64_t start_height() const { return start_height_; }
  std::uint64_t epoch() const { return epoch_; }
  CampaignStatus status() const { return status_; }
  bool closed() const { return closed_; }
  bool fees_paid() const { return fees_paid_; }
  std::uint64_t fees_total() const;
  std::uint64_t settled_total() const { return settled_; }
  std::uint64_t settlement_sequence() const { return settlement_seq_; }
  std::uint64_t aggr_clicks_sequence() const { return aggr_seq_; }
  const Address& psc() const { return psc_; }
  const Address& conf_pool() const { return pool_; }

  const std::map<std::uint32_t, AdvertiserRecord>& advertisers() const { return advs_; }
  const std::vector<RequestRecord>& requests() const { return requests_; }
  std::uint64_t pending_total() const;
  bool all_requests_paid() const;

  bool analytics_frozen() const { return frozen_; }
  bool analytics_done() const { return analytics_done_; }
  const std::vector<Ciphertext>& encrypted_totals() const { return enc_totals_; }
  const std::map<ParticipantId, std::vector<PartialDecryption>>& partials() const {
    return partials_;
  }
  const std::vector<std::uint64_t>& aggr_clicks() const { return aggr_clicks_; }
  const std::vector<ComplaintRecord>& complaints() const { return complaints_; }

 private:
  void require_cf(const CallContext& ctx) const;
  void require_open() const;
  const PolicyContract& policy(const CallContext& ctx) const;
  std::uint64_t required_stake(const CallContext& ctx, const AdvertiserRecord& adv) const;
  bool epoch_elapsed(const CallContext& ctx) const;
  void pay_fees(CallContext& ctx);
  void close(CallContext& ctx);
  void maybe_close(CallContext& ctx);

  Address cf_;
  Point cf_pk_;
  Address psc_;
  Address pool_;
  std::uint64_t epoch_;

  bool init_ = false;
  std::uint64_t start_height_ = 0;
  CampaignStatus status_ = CampaignStatus::kActive;
  bool closed_ = false;
  bool fees_paid_ = false;
  std::uint64_t settled_ = 0;
  std::uint64_t settlement_seq_ = 0;
  std::uint64_t aggr_seq_ = 0;

  std::map<std::uint32_t, AdvertiserRecord> advs_;
  std::vector<RequestRecord> requests_;

  bool frozen_ = false;
  bool analytics_done_ = false;
  std::vector<Ciphertext> enc_totals_;
  std::map<ParticipantId, std::vector<PartialDecryption>> partials_;
  std::vector<std::uint64_t> aggr_clicks_;
  std::vector<ComplaintRecord> complaints_;
};

/// Registers the three campaign contract kinds.
void register_campaign_contracts(ContractRegistry& registry);
std::shared_ptr<const ContractRegistry> campaign_registry();

// ---- argument encoders -------------------------------------------------------------

namespace calls {

// deployment
Bytes deploy_conf_pool();
Bytes deploy_psc(const Point& cf_pk, std::uint32_t catalog_size, std::uint64_t cap,
                 const PoolParams& pool);
Bytes deploy_fsc(const Point& cf_pk, const Address& psc, const Address& pool,
                 std::uint64_t epoch);

// conf-pool
Bytes settle(std::uint64_t tau, const SettlementBatch& batch);
Bytes redeem(const TxRef& ref, const Scalar& blinding, std::uint64_t amount);

// psc
Bytes link_fsc(const Address& fsc);
Bytes store_policy(std::uint32_t index, const SymCiphertext& enc_policy);
Bytes store_encrypted_keys(const std::vector<HybridCiphertext>& keys, const Signature& sig);
Bytes compute_aggregate(const Point& user_pk, std::span<const Ciphertext> enc_vec,
                        std::span<const Ciphertext> enc_vec_prime);
Bytes get_aggregate(const Point& user_pk);
Bytes payment_request(const PaymentRequestMsg& msg);
Bytes register_candidate(const Point& vrf_pk, const Point& member_pk);
Bytes close_registration(ByteView epsilon);
Bytes submit_lottery_ticket(std::uint32_t candidate, const VrfOutput& ticket);
Bytes close_lottery();
Bytes publish_threshold_key(ParticipantId member, const ThresholdPublicKey& tpk);

// fsc
Bytes store_adv_id(std::uint32_t id, const Address& account,
                   std::span<const std::uint32_t> ads,
                   std::span<const std::uint64_t> impressions, std::uint64_t fee);
Bytes store_funds(std::uint32_t id, std::uint64_t amount);
Bytes store_aggr_clicks(ParticipantId member, std::span<const std::uint64_t> totals,
                        const Signature& sig);
Bytes freeze_analytics();
Bytes post_partials(ParticipantId member, std::span<const PartialDecryption> partials);
Bytes settlement_request(std::uint64_t tau, const Signature& sig);
Bytes payment_processed(const TxRef& ref, const Address& payout);
Bytes raise_complaint(const Point& user_pk, const TxRef& ref, const Scalar& blinding,
                      std::uint64_t amount);
Bytes refund_advertisers();
Bytes pay_processing_fees();
Bytes claim_insufficient_refund(std::uint32_t id);

/// Decodes the output of GetAggregate.
std::pair<Ciphertext, Signature> parse_aggregate(ByteView output);

}  // namespace calls

}  // namespace themis

#endif  // THEMIS_CONTRACTS_HPP_
