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

// Pedersen-VSS distributed key generation (two-phase, Gennaro et al. style)
// over a simulated synchronous channel.
//
// Round 1  every dealer i picks secret/blinding polynomials a_i, b_i of degree
//          k-1, broadcasts C_ik = a_ik*G + b_ik*H and privately sends
//          (a_i(j), b_i(j)) to every j.
// Round 2  each j checks a_i(j)*G + b_i(j)*H == sum_k C_ik j^k; failures are
//          broadcast as complaints.
// Round 3  dealers broadcast A_ik = a_ik*G.
// Round 4  each j checks a_i(j)*G == sum_k A_ik j^k.
// A complaint excludes the dealer and the run restarts without it. The joint
// key is pk = sum_i A_i0 and share_j = sum_i a_i(j).

#ifndef THEMIS_DKG_HPP_
#define THEMIS_DKG_HPP_

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "themis/threshold.hpp"

namespace themis {

struct DkgMessage {
  std::uint32_t round = 0;
  ParticipantId from = 0;
  std::optional<ParticipantId> to;  // empty for broadcast
  std::string kind;
  Bytes payload;
};

/// Message transport between DKG participants.
class DkgChannel {
 public:
  virtual ~DkgChannel() = default;

  virtual void broadcast(ParticipantId from, std::string kind, Bytes payload) = 0;
  virtual void send(ParticipantId from, ParticipantId to, std::string kind,
                    Bytes payload) = 0;
  /// Closes the current round; messages become visible afterwards.
  virtual void end_round() = 0;
  /// Everything delivered to `to` (broadcasts plus private messages) in the
  /// last closed round.
  virtual std::vector<DkgMessage> inbox(ParticipantId to) const = 0;
};

/// In-process synchronous broadcast channel that keeps a full transcript.
class SyncChannel : public DkgChannel {
 public:
  void broadcast(ParticipantId from, std::string kind, Bytes payload) override;
  void send(ParticipantId from, ParticipantId to, std::string kind,
            Bytes payload) override;
  void end_round() override;
  std::vector<DkgMessage> inbox(ParticipantId to) const override;

  const std::vector<DkgMessage>& transcript() const { return transcript_; }
  /// One JSON object per line. Private payloads are elided to their length.
  void dump_jsonl(std::ostream& out) const;

 private:
  std::uint32_t round_ = 0;
  std::vector<DkgMessage> pending_;
  std::vector<DkgMessage> delivered_;
  std::vector<DkgMessage> transcript_;
};

/// Test hooks for misbehaving dealers.
struct DkgFaults {
  /// dealer -> recipient whose private sub-share gets corrupted.
  std::map<ParticipantId, ParticipantId> bad_subshare;
  /// dealers that publish a Feldman vector inconsistent with their shares.
  std::vector<ParticipantId> bad_feldman;
};

struct DkgComplaint {
  ParticipantId accuser = 0;
  ParticipantId dealer = 0;
  std::uint32_t attempt = 0;
};

struct DkgResult {
  ThresholdPublicKey tpk;
  std::map<ParticipantId, KeyShare> shares;
  /// pk_T as computed locally by each qualified participant.
  std::map<ParticipantId, ThresholdPublicKey> views;
  std::vector<ParticipantId> excluded;
  std::vector<DkgComplaint> complaints;
  std::uint32_t attempts = 0;
};

/// Runs the DKG among `participants` (distinct, non-zero ids). Dealers that
/// draw a complaint are excluded and the protocol restarts; throws
/// kComplaintAgainstDealer if fewer than k participants remain.
DkgResult dkg_run(const std::vector<ParticipantId>& participants, std::uint32_t k,
                  DkgChannel& channel, Rng& rng, const DkgFaults& faults = {});

}  // namespace themis

#endif  // THEMIS_DKG_HPP_
