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

// Protocol drivers for users, advertisers, the campaign facilitator (CF) and
// consensus-pool participants. Drivers only submit transactions; the caller
// mines blocks between steps that depend on each other's effects, except for
// pool_form which has to iterate lottery rounds and mines as it goes.

#ifndef THEMIS_ACTORS_HPP_
#define THEMIS_ACTORS_HPP_

#include <map>
#include <optional>
#include <vector>

#include "themis/contracts.hpp"
#include "themis/dkg.hpp"

namespace themis {

// ---- users ---------------------------------------------------------------------------

struct Deployment {
  Address conf_pool;
  Address psc;
  Address fsc;
};

struct UserAgent {
  std::uint32_t id = 0;
  std::vector<std::uint64_t> interactions;
  std::uint32_t period = 0;
  KeyPair ephemeral;  // fresh each payout period
  KeyPair payout_key;  // controls the payout address
  Address payout;

  /// Address the claim is submitted from; derived from the ephemeral key.
  Address claim_account() const { return Address::from_public_key(ephemeral.pk); }
  /// Draws a fresh ephemeral key pair and payout address.
  void start_period(Rng& rng);
};

/// Encrypted claim: EncVec under the ephemeral key, EncVec' under pk_T.
struct EncryptedClaim {
  std::vector<Ciphertext> enc_vec;
  std::vector<Ciphertext> enc_vec_prime;
};

/// Client-side half of user_claim. Errors: kLengthMismatch, kInvalidArgument
/// when the vector exceeds `max_total` interactions.
EncryptedClaim encrypt_interactions(const UserAgent& user, const Point& pk_t, Rng& rng,
                                    std::uint64_t max_total = UINT64_MAX);

Hash32 user_claim(Chain& chain, const UserAgent& user, const Address& psc,
                  const Point& pk_t, Rng& rng);

struct PreparedRequest {
  std::uint64_t amount = 0;
  PaymentRequestMsg msg;
};

/// Fetches the user's aggregate, decrypts it, recovers the amount and builds
/// the proof. Errors: kUnknownUser, kBadSignature, kNoSolutionInBound.
PreparedRequest prepare_payment_request(const Chain& chain, const UserAgent& user,
                                        const Address& psc, Rng& rng);

struct SubmittedRequest {
  std::uint64_t amount = 0;
  Hash32 tx{};
};

/// Builds E and submits it as a private-input transaction from the payout
/// address.
SubmittedRequest user_request_payment(Chain& chain, const UserAgent& user,
                                      const Address& psc, Rng& rng);

struct NoteOpening;

/// Checks the opening received from the CF against the on-chain note. If the
/// note is genuine but pays less than `requested`, submits RaiseComplaint from
/// the payout address and returns its hash.
std::optional<Hash32> user_check_payment(Chain& chain, const UserAgent& user,
                                         const Deployment& d, const NoteOpening& opening,
                                         std::uint64_t requested);

/// Redeems the note into the payout account.
Hash32 user_redeem(Chain& chain, const UserAgent& user, const Deployment& d,
                   const NoteOpening& opening);

// ---- CF --------------------------------------------------------------------------------

enum class CfMode { kHonest, kUnderpay, kDivert };

std::string_view cf_mode_name(CfMode mode);
std::optional<CfMode> parse_cf_mode(std::string_view name);

/// Opening of one settlement note, handed to its recipient off-chain.
struct NoteOpening {
  TxRef tx_ref{};
  Address recipient;
  std::uint64_t amount = 0;
  Scalar blinding;
};

struct FacilitatorAgent {
  KeyPair key;
  Address account;
  Address divert_account;  // CF-controlled address used by the divert mode
  CfMode mode = CfMode::kHonest;
  std::uint64_t deviation = 1;  // tokens short-paid or diverted
  std::map<std::uint32_t, SymmetricKey> advertiser_keys;
  std::vector<NoteOpening> openings;

  static FacilitatorAgent create(Rng& rng);
};

/// Deploys conf-pool, PSC and FSC and links them. Mine once afterwards.
Deployment cf_deploy(Chain& chain, const FacilitatorAgent& cf, std::uint32_t catalog_size,
                     std::uint64_t reward_cap, const PoolParams& pool, std::uint64_t epoch);

struct AdvertiserAgent;

/// Publishes encrypted policies, encrypted campaign keys and advertiser ids.
/// `overrides` replaces the agreed value of an ad (test hook for a CF that
/// swaps a policy).
void cf_publish_campaign(Chain& chain, FacilitatorAgent& cf, const Deployment& d,
                         const std::vector<AdvertiserAgent>& advertisers, Rng& rng,
                         const std::map<std::uint32_t, std::uint64_t>& overrides = {});

struct SettlementReport {
  std::uint64_t tau = 0;
  std::uint64_t requested = 0;  // sum of pending request amounts
  std::size_t notes = 0;
  std::vector<Hash32> txs;
};

/// Settles all pending payment requests: SettlementRequest, Settle and one
/// PaymentProcessed per request, in a single block. Openings are appended to
/// cf.openings.
SettlementReport cf_run(Chain& chain, FacilitatorAgent& cf, const Deployment& d, Rng& rng);

// ---- advertisers -------------------------------------------------------------------------

struct AdvertiserAgent {
  std::uint32_t id = 0;
  KeyPair key;
  Address account;
  std::vector<std::uint32_t> ads;
  std::vector<std::uint64_t> policies;  // agreed value per entry of `ads`
  std::vector<std::uint64_t> impressions;
  std::uint64_t fee = 0;
  SymmetricKey campaign_key;

  std::uint64_t budget() const;
  std::uint64_t stake() const { return budget() + fee; }
};

/// Agrees the campaign key with the CF (DH) and registers it on the CF side.
void advertiser_handshake(AdvertiserAgent& adv, FacilitatorAgent& cf);

/// Verifies every on-chain Enc P[i] of the advertiser's ads decrypts to the
/// agreed value, then stakes budget + fee. Throws kPolicyMismatch before
/// staking otherwise.
Hash32 advertiser_setup(Chain& chain, const AdvertiserAgent& adv, const Deployment& d);

enum class AuditVerdict { kOk, kComplaintRaised, kInvalidShareProof, kAnalyticsMismatch };

std::string_view audit_verdict_name(AuditVerdict v);

struct AuditResult {
  AuditVerdict verdict = AuditVerdict::kOk;
  std::string detail;
  std::vector<std::uint64_t> totals;  // recovered per-ad totals
  std::optional<Hash32> complaint_tx;
};

/// Recomputes the homomorphic sum of EncVec', verifies the partial
/// decryptions, recovers the totals and checks the refund equation for this
/// advertiser, filing ClaimInsufficientRefund on a mismatch.
AuditResult advertiser_audit(Chain& chain, const AdvertiserAgent& adv, const Deployment& d);
/// Same, with an explicit set of partials (member index -> one per ad).
AuditResult advertiser_audit(Chain& chain, const AdvertiserAgent& adv, const Deployment& d,
                             const std::map<ParticipantId, std::vector<PartialDecryption>>&
                                 partials);

// ---- consensus pool ------------------------------------------------------------------------

struct PoolParticipant {
  std::uint32_t id = 0;
  Address account;
  VrfKeyPair vrf;
  KeyPair member_key;
  std::uint32_t candidate = 0;  // position in the PSC candidate list
  ParticipantId member = 0;  // 1-based pool index once selected, else 0
  std::optional<KeyShare> share;

  static PoolParticipant create(std::uint32_t id, Rng& rng);
};

/// Submits RegisterCandidate for every participant, in order.
void pool_register(Chain& chain, std::vector<PoolParticipant>& participants,
                   const Address& psc);

struct PoolSetup {
  std::uint32_t attempts = 0;  // lottery draws run
  std::vector<std::uint32_t> members;  // participant positions
  ThresholdPublicKey tpk;
  std::vector<DkgComplaint> dkg_complaints;
};

/// Closes registration with epsilon, runs lottery draws (re-drawing on too
/// few winners, up to `max_attempts`), runs the DKG among the winners and
/// publishes pk_T. Mines as needed. Throws kInsufficientWinners when every
/// draw fails.
PoolSetup pool_form(Chain& chain, const FacilitatorAgent& cf, const Deployment& d,
                    std::vector<PoolParticipant>& participants, ByteView epsilon, Rng& rng,
                    std::uint32_t max_attempts = 64, const DkgFaults& faults = {});

/// Submits FreezeAnalytics from the first member. Mine before posting.
Hash32 pool_freeze(Chain& chain, const std::vector<PoolParticipant>& participants,
                   const Deployment& d);

/// The first `count` members post partial decryptions of the frozen totals.
std::vector<Hash32> pool_post_partials(Chain& chain,
                                       const std::vector<PoolParticipant>& participants,
                                       const Deployment& d, std::size_t count, Rng& rng);

// ---- helpers -------------------------------------------------------------------------------

/// Plaintext oracle: sum_i policy[i] * interactions[i].
std::uint64_t dot_product(std::span<const std::uint64_t> policy,
                          std::span<const std::uint64_t> interactions);

/// Receipt of a mined transaction; throws kInvalidArgument if it is unknown.
const Receipt& receipt_of(const Chain& chain, const Hash32& tx);

}  // namespace themis

#endif  // THEMIS_ACTORS_HPP_
