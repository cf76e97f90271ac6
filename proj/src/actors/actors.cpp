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

#include "themis/actors.hpp"

#include <algorithm>

#include "themis/error.hpp"

namespace themis {

std::uint64_t dot_product(std::span<const std::uint64_t> policy,
                          std::span<const std::uint64_t> interactions) {
  require(policy.size() == interactions.size(), ErrorCode::kLengthMismatch, "dot product");
  u128 sum = 0;
  for (std::size_t i = 0; i < policy.size(); ++i) {
    sum += static_cast<u128>(policy[i]) * interactions[i];
  }
  require(sum <= UINT64_MAX, ErrorCode::kInvalidArgument, "dot product overflow");
  return static_cast<std::uint64_t>(sum);
}

const Receipt& receipt_of(const Chain& chain, const Hash32& tx) {
  const auto* r = chain.receipt(tx);
  require(r != nullptr, ErrorCode::kInvalidArgument, "no receipt for " + to_hex(tx));
  return *r;
}

namespace {

const PolicyContract& psc_of(const Chain& chain, const Address& addr) {
  const auto* psc = chain.view<PolicyContract>(addr);
  require(psc != nullptr, ErrorCode::kUnknownContract, "psc " + addr.hex());
  return *psc;
}

const FundContract& fsc_of(const Chain& chain, const Address& addr) {
  const auto* fsc = chain.view<FundContract>(addr);
  require(fsc != nullptr, ErrorCode::kUnknownContract, "fsc " + addr.hex());
  return *fsc;
}

// Mines a block and throws the receipt's error if `tx` failed.
void mine_expect_ok(Chain& chain, const Hash32& tx, std::string_view what) {
  if (chain.receipt(tx) == nullptr) chain.mine_block();
  const auto& r = receipt_of(chain, tx);
  if (!r.ok) {
    fail(ErrorCode::kInvalidArgument, std::string(what) + " failed: " + r.detail);
  }
}

}  // namespace

// ---- users ---------------------------------------------------------------------------

void UserAgent::start_period(Rng& rng) {
  ++period;
  ephemeral = keygen(rng);
  payout_key = keygen(rng);
  payout = Address::from_public_key(payout_key.pk);
}

EncryptedClaim encrypt_interactions(const UserAgent& user, const Point& pk_t, Rng& rng,
                                    std::uint64_t max_total) {
  u128 total = 0;
  for (auto c : user.interactions) total += c;
  require(total <= max_total, ErrorCode::kInvalidArgument,
          "user " + std::to_string(user.id) + " exceeds the interaction cap");
  EncryptedClaim claim;
  claim.enc_vec.reserve(user.interactions.size());
  claim.enc_vec_prime.reserve(user.interactions.size());
  for (auto c : user.interactions) {
    claim.enc_vec.push_back(encrypt(user.ephemeral.pk, c, rng));
    claim.enc_vec_prime.push_back(encrypt(pk_t, c, rng));
  }
  return claim;
}

Hash32 user_claim(Chain& chain, const UserAgent& user, const Address& psc,
                  const Point& pk_t, Rng& rng) {
  const auto n = psc_of(chain, psc).catalog_size();
  require(user.interactions.size() == n, ErrorCode::kLengthMismatch,
          "user " + std::to_string(user.id) + ": " + std::to_string(user.interactions.size()) +
              " counts for " + std::to_string(n) + " ads");
  const auto claim = encrypt_interactions(user, pk_t, rng);
  return chain.submit(user.claim_account(), psc, "ComputeAggregate",
                      calls::compute_aggregate(user.ephemeral.pk, claim.enc_vec,
                                               claim.enc_vec_prime));
}

PreparedRequest prepare_payment_request(const Chain& chain, const UserAgent& user,
                                        const Address& psc_addr, Rng& rng) {
  const auto& psc = psc_of(chain, psc_addr);
  auto it = psc.aggregates().find(user.ephemeral.pk);
  require(it != psc.aggregates().end(), ErrorCode::kUnknownUser,
          "user " + std::to_string(user.id));
  const auto& agg = it->second;
  const auto& sig = psc.aggregate_signatures().at(user.ephemeral.pk);
  require(verify_sig(chain.aggregate_public_key(),
                     aggregate_message(psc_addr, user.ephemeral.pk, agg), sig,
                     kAggregateSigDomain),
          ErrorCode::kBadSignature, "aggregate signature");
  const Point plain = decrypt(user.ephemeral.sk, agg);
  PreparedRequest out;
  out.amount = recover_plaintext(plain, kRewardBound);
  out.msg.user_pk = user.ephemeral.pk;
  out.msg.amount = out.amount;
  out.msg.reward_signature = sig;
  out.msg.proof = prove_decryption(user.ephemeral, agg, plain, rng);
  out.msg.payout = user.payout;
  return out;
}

SubmittedRequest user_request_payment(Chain& chain, const UserAgent& user,
                                      const Address& psc, Rng& rng) {
  const auto prepared = prepare_payment_request(chain, user, psc, rng);
  auto wrapped =
      private_wrap(chain.validator_public_key(), calls::payment_request(prepared.msg), rng);
  const auto tx = chain.submit(user.payout, psc, "PaymentRequest", std::move(wrapped),
                               Privacy::kPrivateInput);
  return {prepared.amount, tx};
}

std::optional<Hash32> user_check_payment(Chain& chain, const UserAgent& user,
                                         const Deployment& d, const NoteOpening& opening,
                                         std::uint64_t requested) {
  const auto* pool = chain.view<ConfidentialPool>(d.conf_pool);
  require(pool != nullptr, ErrorCode::kUnknownContract, "conf-pool");
  const auto* note = pool->note(opening.tx_ref);
  require(note != nullptr && note->recipient == user.payout, ErrorCode::kUnknownTxRef,
          to_hex(opening.tx_ref));
  require(open_verify(note->commitment, opening.blinding, opening.amount),
          ErrorCode::kBadOpening, "opening from the CF does not match the note");
  if (opening.amount == requested) return std::nullopt;
  return chain.submit(user.payout, d.fsc, "RaiseComplaint",
                      calls::raise_complaint(user.ephemeral.pk, opening.tx_ref,
                                             opening.blinding, opening.amount));
}

Hash32 user_redeem(Chain& chain, const UserAgent& user, const Deployment& d,
                   const NoteOpening& opening) {
  return chain.submit(user.payout, d.conf_pool, "Redeem",
                      calls::redeem(opening.tx_ref, opening.blinding, opening.amount));
}

// ---- CF ---------------------------------------------------------------------------------

std::string_view cf_mode_name(CfMode mode) {
  switch (mode) {
    case CfMode::kHonest: return "honest";
    case CfMode::kUnderpay: return "underpay";
    case CfMode::kDivert: return "divert";
  }
  return "?";
}

std::optional<CfMode> parse_cf_mode(std::string_view name) {
  for (auto m : {CfMode::kHonest, CfMode::kUnderpay, CfMode::kDivert}) {
    if (cf_mode_name(m) == name) return m;
  }
  return std::nullopt;
}

FacilitatorAgent FacilitatorAgent::create(Rng& rng) {
  FacilitatorAgent cf;
  cf.key = keygen(rng);
  cf.account = Address::from_public_key(cf.key.pk);
  cf.divert_account = Address::from_public_key(keygen(rng).pk);
  return cf;
}

Deployment cf_deploy(Chain& chain, const FacilitatorAgent& cf, std::uint32_t catalog_size,
                     std::uint64_t reward_cap, const PoolParams& pool, std::uint64_t epoch) {
  const auto nonce = chain.next_nonce(cf.account);
  Deployment d;
  d.conf_pool = Address::for_contract(cf.account, nonce);
  d.psc = Address::for_contract(cf.account, nonce + 1);
  d.fsc = Address::for_contract(cf.account, nonce + 2);
  const Address deploy{};
  chain.submit(cf.account, deploy, std::string(kConfPoolKind), calls::deploy_conf_pool());
  chain.submit(cf.account, deploy, std::string(kPscKind),
               calls::deploy_psc(cf.key.pk, catalog_size, reward_cap, pool));
  chain.submit(cf.account, deploy, std::string(kFscKind),
               calls::deploy_fsc(cf.key.pk, d.psc, d.conf_pool, epoch));
  chain.submit(cf.account, d.psc, "LinkFsc", calls::link_fsc(d.fsc));
  return d;
}

void cf_publish_campaign(Chain& chain, FacilitatorAgent& cf, const Deployment& d,
                         const std::vector<AdvertiserAgent>& advertisers, Rng& rng,
                         const std::map<std::uint32_t, std::uint64_t>& overrides) {
  const auto n = psc_of(chain, d.psc).catalog_size();
  std::vector<std::optional<SymmetricKey>> slot_keys(n);
  for (const auto& adv : advertisers) {
    auto kit = cf.advertiser_keys.find(adv.id);
    require(kit != cf.advertiser_keys.end(), ErrorCode::kInvalidArgument,
            "no campaign key for advertiser " + std::to_string(adv.id));
    for (std::size_t j = 0; j < adv.ads.size(); ++j) {
      const auto ad = adv.ads[j];
      require(ad < n, ErrorCode::kIndexOutOfRange, "ad " + std::to_string(ad));
      auto ov = overrides.find(ad);
      const auto value = ov != overrides.end() ? ov->second : adv.policies[j];
      const auto ct = sym_encrypt(kit->second, policy_plaintext(ad, value), rng);
      chain.submit(cf.account, d.psc, "StorePolicy", calls::store_policy(ad, ct));
      slot_keys[ad] = kit->second;
    }
  }
  std::vector<HybridCiphertext> enc_keys;
  enc_keys.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    require(slot_keys[i].has_value(), ErrorCode::kInvalidArgument,
            "ad " + std::to_string(i) + " has no advertiser");
    ByteWriter w;
    w << *slot_keys[i];
    enc_keys.push_back(hybrid_encrypt(chain.validator_public_key(), w.data(), rng));
  }
  const auto sig = sign(cf.key.sk, enc_keys_message(d.psc, enc_keys), kEncKeysSigDomain);
  chain.submit(cf.account, d.psc, "StoreEncryptedKeys", calls::store_encrypted_keys(enc_keys, sig));
  for (const auto& adv : advertisers) {
    chain.submit(cf.account, d.fsc, "StoreAdvId",
                 calls::store_adv_id(adv.id, adv.account, adv.ads, adv.impressions, adv.fee));
  }
}

SettlementReport cf_run(Chain& chain, FacilitatorAgent& cf, const Deployment& d, Rng& rng) {
  const auto& fsc = fsc_of(chain, d.fsc);
  struct Pending {
    Address payout;
    std::uint64_t amount;
  };
  std::vector<Pending> pending;
  SettlementReport report;
  for (const auto& r : fsc.requests()) {
    if (r.paid) continue;
    pending.push_back({r.payout, r.amount});
    report.requested += r.amount;
  }
  if (pending.empty()) return report;

  std::vector<PaymentInstruction> pay;
  for (const auto& p : pending) pay.push_back({p.payout, p.amount, Scalar::random(rng)});
  report.tau = report.requested;
  if (cf.mode == CfMode::kUnderpay) {
    auto victim = std::find_if(pay.begin(), pay.end(),
                               [](const PaymentInstruction& p) { return p.amount > 0; });
    if (victim != pay.end()) {
      const auto delta = std::min(cf.deviation, victim->amount);
      victim->amount -= delta;
      pay.push_back({cf.divert_account, delta, Scalar::random(rng)});
    }
  } else if (cf.mode == CfMode::kDivert) {
    report.tau += cf.deviation;
    pay.push_back({cf.divert_account, cf.deviation, Scalar::random(rng)});
  }
  const auto batch = build_batch(pay, report.tau, rng);
  report.notes = batch.notes.size();

  const auto sig = sign(cf.key.sk, settlement_message(d.fsc, report.tau, fsc.settlement_sequence()),
                        kSettlementSigDomain);
  report.txs.push_back(
      chain.submit(cf.account, d.fsc, "SettlementRequest", calls::settlement_request(report.tau, sig)));
  report.txs.push_back(
      chain.submit(cf.account, d.conf_pool, "Settle", calls::settle(report.tau, batch)));
  for (std::size_t i = 0; i < batch.notes.size(); ++i) {
    const auto& note = batch.notes[i];
    cf.openings.push_back({note.tx_ref, note.recipient, pay[i].amount, pay[i].blinding});
    if (i < pending.size()) {
      report.txs.push_back(chain.submit(cf.account, d.fsc, "PaymentProcessed",
                                        calls::payment_processed(note.tx_ref, note.recipient)));
    }
  }
  return report;
}

// ---- advertisers ---------------------------------------------------------------------------

std::uint64_t AdvertiserAgent::budget() const { return dot_product(impressions, policies); }

void advertiser_handshake(AdvertiserAgent& adv, FacilitatorAgent& cf) {
  adv.campaign_key = dh_agree(adv.key.sk, cf.key.pk);
  cf.advertiser_keys[adv.id] = dh_agree(cf.key.sk, adv.key.pk);
}

Hash32 advertiser_setup(Chain& chain, const AdvertiserAgent& adv, const Deployment& d) {
  const auto& psc = psc_of(chain, d.psc);
  for (std::size_t j = 0; j < adv.ads.size(); ++j) {
    const auto ad = adv.ads[j];
    const std::string where = "advertiser " + std::to_string(adv.id) + " ad " + std::to_string(ad);
    require(ad < psc.catalog_size() && psc.enc_policies()[ad].has_value(),
            ErrorCode::kPolicyMismatch, where + ": no policy on chain");
    std::uint64_t value = 0;
    try {
      value = parse_policy_plaintext(sym_decrypt(adv.campaign_key, *psc.enc_policies()[ad]), ad);
    } catch (const Error& e) {
      fail(ErrorCode::kPolicyMismatch, where + ": " + e.what());
    }
    require(value == adv.policies[j], ErrorCode::kPolicyMismatch,
            where + ": on chain " + std::to_string(value) + ", agreed " +
                std::to_string(adv.policies[j]));
  }
  return chain.submit(adv.account, d.fsc, "StoreFunds", calls::store_funds(adv.id, adv.stake()));
}

std::string_view audit_verdict_name(AuditVerdict v) {
  switch (v) {
    case AuditVerdict::kOk: return "ok";
    case AuditVerdict::kComplaintRaised: return "complaint-raised";
    case AuditVerdict::kInvalidShareProof: return "invalid-share-proof";
    case AuditVerdict::kAnalyticsMismatch: return "analytics-mismatch";
  }
  return "?";
}

AuditResult advertiser_audit(Chain& chain, const AdvertiserAgent& adv, const Deployment& d) {
  return advertiser_audit(chain, adv, d, fsc_of(chain, d.fsc).partials());
}

AuditResult advertiser_audit(Chain& chain, const AdvertiserAgent& adv, const Deployment& d,
                             const std::map<ParticipantId, std::vector<PartialDecryption>>&
                                 partials) {
  const auto& psc = psc_of(chain, d.psc);
  const auto& fsc = fsc_of(chain, d.fsc);
  AuditResult out;
  auto mismatch = [&](std::string detail) {
    out.verdict = AuditVerdict::kAnalyticsMismatch;
    out.detail = std::move(detail);
    return out;
  };
  if (!fsc.analytics_frozen()) return mismatch("analytics not posted");
  std::vector<Ciphertext> sum(psc.catalog_size(), zero_ciphertext());
  for (const auto& vec : psc.reported_vectors()) {
    for (std::size_t i = 0; i < vec.size(); ++i) sum[i] = sum[i] + vec[i];
  }
  if (sum != fsc.encrypted_totals()) return mismatch("encrypted totals differ from sum");
  if (!psc.threshold_key()) return mismatch("no pk_T");
  const auto& tpk = *psc.threshold_key();
  for (const auto& [member, ps] : partials) {
    bool ok = ps.size() == sum.size();
    for (std::size_t i = 0; ok && i < ps.size(); ++i) {
      ok = ps[i].index == member && verify_partial(tpk, sum[i], ps[i]);
    }
    if (!ok) {
      out.verdict = AuditVerdict::kInvalidShareProof;
      out.detail = "member " + std::to_string(member);
      return out;
    }
  }
  if (partials.size() < tpk.k) return mismatch("fewer than k partial decryptions");
  std::vector<PartialDecryption> column;
  for (std::size_t i = 0; i < sum.size(); ++i) {
    column.clear();
    for (const auto& [member, ps] : partials) column.push_back(ps[i]);
    out.totals.push_back(recover_plaintext(combine_partials(tpk, column, sum[i]), kAnalyticsBound));
  }
  if (out.totals != fsc.aggr_clicks()) return mismatch("on-chain totals differ");
  if (!fsc.closed()) {
    out.detail = "refunds pending";
    return out;
  }
  std::uint64_t spent = 0;
  for (std::size_t j = 0; j < adv.ads.size(); ++j) {
    spent += adv.policies[j] * out.totals[adv.ads[j]];
  }
  const auto& rec = fsc.advertisers().at(adv.id);
  const u128 accounted = static_cast<u128>(spent) + rec.refund + adv.fee;
  const u128 expected = static_cast<u128>(adv.stake()) + rec.debt;
  if (accounted != expected) {
    out.verdict = AuditVerdict::kComplaintRaised;
    out.detail = "spent " + std::to_string(spent) + " + refund " + std::to_string(rec.refund) +
                 " + fee " + std::to_string(adv.fee) + " != stake " + std::to_string(adv.stake());
    out.complaint_tx = chain.submit(adv.account, d.fsc, "ClaimInsufficientRefund",
                                    calls::claim_insufficient_refund(adv.id));
  }
  return out;
}

// ---- consensus pool -----------------------------------------------------------------------

PoolParticipant PoolParticipant::create(std::uint32_t id, Rng& rng) {
  PoolParticipant p;
  p.id = id;
  p.vrf = vrf_keygen(rng);
  p.member_key = keygen(rng);
  p.account = Address::from_public_key(p.member_key.pk);
  return p;
}

void pool_register(Chain& chain, std::vector<PoolParticipant>& participants,
                   const Address& psc) {
  auto next = static_cast<std::uint32_t>(psc_of(chain, psc).candidates().size());
  for (auto& p : participants) {
    p.candidate = next++;
    chain.submit(p.account, psc, "RegisterCandidate",
                 calls::register_candidate(p.vrf.pk, p.member_key.pk));
  }
}

PoolSetup pool_form(Chain& chain, const FacilitatorAgent& cf, const Deployment& d,
                    std::vector<PoolParticipant>& participants, ByteView epsilon, Rng& rng,
                    std::uint32_t max_attempts, const DkgFaults& faults) {
  mine_expect_ok(chain,
                 chain.submit(cf.account, d.psc, "CloseRegistration",
                              calls::close_registration(epsilon)),
                 "CloseRegistration");
  PoolSetup setup;
  for (;;) {
    const auto& psc = psc_of(chain, d.psc);
    if (setup.attempts == max_attempts) {
      fail(ErrorCode::kInsufficientWinners,
           std::to_string(max_attempts) + " draws without " + std::to_string(psc.pool_params().k) +
               " winners");
    }
    ++setup.attempts;
    const auto seed = psc.lottery_seed();
    const auto params = psc.pool_params();
    const auto threshold = max_draw(params);
    for (const auto& p : participants) {
      const auto ticket = vrf_eval(p.vrf.sk, seed, params.p);
      if (draw_winner(ticket.rand, threshold)) {
        chain.submit(p.account, d.psc, "SubmitLotteryTicket",
                     calls::submit_lottery_ticket(p.candidate, ticket));
      }
    }
    const auto close = chain.submit(cf.account, d.psc, "CloseLottery", calls::close_lottery());
    mine_expect_ok(chain, close, "CloseLottery");
    if (receipt_of(chain, close).output == Bytes{1}) break;
  }

  const auto& psc = psc_of(chain, d.psc);
  std::map<std::uint32_t, PoolParticipant*> by_candidate;
  for (auto& p : participants) by_candidate[p.candidate] = &p;
  std::vector<ParticipantId> ids;
  for (std::size_t i = 0; i < psc.members().size(); ++i) {
    auto* p = by_candidate.at(psc.members()[i]);
    p->member = static_cast<ParticipantId>(i + 1);
    ids.push_back(p->member);
    setup.members.push_back(static_cast<std::uint32_t>(p - participants.data()));
  }

  SyncChannel channel;
  Rng dkg_rng = rng.fork("pool-dkg");
  const auto result = dkg_run(ids, static_cast<std::uint32_t>(psc.pool_params().k), channel,
                              dkg_rng, faults);
  setup.tpk = result.tpk;
  setup.dkg_complaints = result.complaints;

  std::vector<Hash32> publishes;
  for (auto idx : setup.members) {
    auto& p = participants[idx];
    if (auto s = result.shares.find(p.member); s != result.shares.end()) p.share = s->second;
    auto v = result.views.find(p.member);
    const auto& view = v != result.views.end() ? v->second : result.tpk;
    publishes.push_back(chain.submit(p.account, d.psc, "PublishThresholdKey",
                                     calls::publish_threshold_key(p.member, view)));
  }
  chain.mine_block();
  for (const auto& tx : publishes) {
    const auto& r = receipt_of(chain, tx);
    if (!r.ok) fail(ErrorCode::kDkgDisagreement, r.detail);
  }
  require(psc_of(chain, d.psc).threshold_key().has_value(), ErrorCode::kDkgDisagreement,
          "pk_T not published");
  return setup;
}

namespace {

std::vector<const PoolParticipant*> members_in_order(
    const std::vector<PoolParticipant>& participants) {
  std::vector<const PoolParticipant*> out;
  for (const auto& p : participants) {
    if (p.member != 0) out.push_back(&p);
  }
  std::sort(out.begin(), out.end(),
            [](const PoolParticipant* a, const PoolParticipant* b) { return a->member < b->member; });
  return out;
}

}  // namespace

Hash32 pool_freeze(Chain& chain, const std::vector<PoolParticipant>& participants,
                   const Deployment& d) {
  const auto members = members_in_order(participants);
  require(!members.empty(), ErrorCode::kPoolNotReady, "no pool members");
  return chain.submit(members.front()->account, d.fsc, "FreezeAnalytics",
                      calls::freeze_analytics());
}

std::vector<Hash32> pool_post_partials(Chain& chain,
                                       const std::vector<PoolParticipant>& participants,
                                       const Deployment& d, std::size_t count, Rng& rng) {
  const auto& totals = fsc_of(chain, d.fsc).encrypted_totals();
  std::vector<Hash32> txs;
  for (const auto* p : members_in_order(participants)) {
    if (txs.size() == count) break;
    if (!p->share) continue;
    std::vector<PartialDecryption> partials;
    partials.reserve(totals.size());
    for (const auto& ct : totals) partials.push_back(partial_decrypt(*p->share, ct, rng));
    txs.push_back(chain.submit(p->account, d.fsc, "PostPartials",
                               calls::post_partials(p->member, partials)));
  }
  return txs;
}

}  // namespace themis
