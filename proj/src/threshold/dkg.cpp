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

#include "themis/dkg.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "themis/error.hpp"

namespace themis {
namespace {

constexpr const char* kPedersenCommitments = "pedersen-commitments";
constexpr const char* kSubshare = "subshare";
constexpr const char* kComplaint = "complaint";
constexpr const char* kFeldman = "feldman-commitments";

Point eval_commitments(const std::vector<Point>& coeffs, ParticipantId x) {
  const Scalar sx = Scalar::from_u64(x);
  Point acc;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * sx + *it;
  return acc;
}

Scalar eval_poly(const std::vector<Scalar>& coeffs, ParticipantId x) {
  const Scalar sx = Scalar::from_u64(x);
  Scalar acc;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * sx + *it;
  return acc;
}

Bytes encode_points(const std::vector<Point>& pts) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(pts.size()));
  for (const auto& p : pts) w << p;
  return std::move(w).take();
}

std::vector<Point> decode_points(const Bytes& b) {
  ByteReader r(b);
  std::vector<Point> out(r.u32());
  for (auto& p : out) p = read_point(r);
  r.expect_done();
  return out;
}

// One participant's local state for a single DKG attempt.
class Participant {
 public:
  Participant(ParticipantId id, std::uint32_t k, Rng rng, const DkgFaults& faults)
      : id_(id), k_(k), rng_(std::move(rng)), faults_(faults) {}

  ParticipantId id() const { return id_; }

  void deal(DkgChannel& ch, const std::vector<ParticipantId>& peers) {
    secret_.resize(k_);
    blinding_.resize(k_);
    std::vector<Point> commits(k_);
    for (std::uint32_t i = 0; i < k_; ++i) {
      secret_[i] = Scalar::random(rng_);
      blinding_[i] = Scalar::random(rng_);
      commits[i] = Point::base_mul(secret_[i]) + Point::second_generator() * blinding_[i];
    }
    ch.broadcast(id_, kPedersenCommitments, encode_points(commits));
    auto bad = faults_.bad_subshare.find(id_);
    for (auto peer : peers) {
      Scalar s = eval_poly(secret_, peer);
      const Scalar t = eval_poly(blinding_, peer);
      if (bad != faults_.bad_subshare.end() && bad->second == peer) {
        s += Scalar::from_u64(1);
      }
      ByteWriter w;
      w << s << t;
      ch.send(id_, peer, kSubshare, std::move(w).take());
    }
  }

  /// Returns the dealers this participant complains about.
  std::vector<ParticipantId> check_pedersen(DkgChannel& ch) {
    std::vector<ParticipantId> accused;
    for (const auto& m : ch.inbox(id_)) {
      if (m.kind == kPedersenCommitments) {
        pedersen_[m.from] = decode_points(m.payload);
      } else if (m.kind == kSubshare) {
        ByteReader r(m.payload);
        Scalar s = read_scalar(r);
        Scalar t = read_scalar(r);
        subshares_[m.from] = {s, t};
      }
    }
    for (const auto& [dealer, commits] : pedersen_) {
      auto it = subshares_.find(dealer);
      const bool ok = it != subshares_.end() && commits.size() == k_ &&
                      Point::base_mul(it->second.first) +
                              Point::second_generator() * it->second.second ==
                          eval_commitments(commits, id_);
      if (!ok) {
        accused.push_back(dealer);
        ByteWriter w;
        w.u32(dealer);
        ch.broadcast(id_, kComplaint, std::move(w).take());
      }
    }
    return accused;
  }

  void publish_feldman(DkgChannel& ch) {
    std::vector<Point> coeffs(k_);
    for (std::uint32_t i = 0; i < k_; ++i) coeffs[i] = Point::base_mul(secret_[i]);
    const bool corrupt = std::find(faults_.bad_feldman.begin(), faults_.bad_feldman.end(),
                                   id_) != faults_.bad_feldman.end();
    if (corrupt) coeffs[k_ > 1 ? 1 : 0] += Point::generator();
    ch.broadcast(id_, kFeldman, encode_points(coeffs));
  }

  std::vector<ParticipantId> check_feldman(DkgChannel& ch) {
    std::vector<ParticipantId> accused;
    for (const auto& m : ch.inbox(id_)) {
      if (m.kind == kFeldman) feldman_[m.from] = decode_points(m.payload);
    }
    for (const auto& [dealer, commits] : pedersen_) {
      auto it = feldman_.find(dealer);
      const bool ok = it != feldman_.end() && it->second.size() == k_ &&
                      Point::base_mul(subshares_.at(dealer).first) ==
                          eval_commitments(it->second, id_);
      if (!ok) {
        accused.push_back(dealer);
        ByteWriter w;
        w.u32(dealer);
        ch.broadcast(id_, kComplaint, std::move(w).take());
      }
    }
    return accused;
  }

  KeyShare share() const {
    KeyShare ks;
    ks.index = id_;
    for (const auto& [dealer, st] : subshares_) ks.share += st.first;
    ks.commitment = Point::base_mul(ks.share);
    return ks;
  }

  ThresholdPublicKey view() const {
    ThresholdPublicKey tpk;
    tpk.k = k_;
    tpk.verification_vector.assign(k_, Point{});
    for (const auto& [dealer, coeffs] : feldman_) {
      for (std::uint32_t i = 0; i < k_; ++i) tpk.verification_vector[i] += coeffs[i];
    }
    tpk.pk = tpk.verification_vector[0];
    return tpk;
  }

 private:
  ParticipantId id_;
  std::uint32_t k_;
  Rng rng_;
  const DkgFaults& faults_;
  std::vector<Scalar> secret_;
  std::vector<Scalar> blinding_;
  std::map<ParticipantId, std::vector<Point>> pedersen_;
  std::map<ParticipantId, std::vector<Point>> feldman_;
  std::map<ParticipantId, std::pair<Scalar, Scalar>> subshares_;
};

std::set<ParticipantId> collect_complaints(DkgChannel& ch,
                                           const std::vector<ParticipantId>& members,
                                           std::uint32_t attempt,
                                           std::vector<DkgComplaint>& log) {
  std::set<ParticipantId> dealers;
  // Broadcasts reach everyone, so the first member's inbox is complete.
  for (const auto& m : ch.inbox(members.front())) {
    if (m.kind != kComplaint) continue;
    ByteReader r(m.payload);
    const auto dealer = r.u32();
    dealers.insert(dealer);
    log.push_back({m.from, dealer, attempt});
  }
  return dealers;
}

}  // namespace

void SyncChannel::broadcast(ParticipantId from, std::string kind, Bytes payload) {
  pending_.push_back({round_, from, std::nullopt, std::move(kind), std::move(payload)});
}

void SyncChannel::send(ParticipantId from, ParticipantId to, std::string kind,
                       Bytes payload) {
  pending_.push_back({round_, from, to, std::move(kind), std::move(payload)});
}

void SyncChannel::end_round() {
  delivered_ = std::move(pending_);
  pending_.clear();
  transcript_.insert(transcript_.end(), delivered_.begin(), delivered_.end());
  ++round_;
}

std::vector<DkgMessage> SyncChannel::inbox(ParticipantId to) const {
  std::vector<DkgMessage> out;
  for (const auto& m : delivered_) {
    if (!m.to || *m.to == to) out.push_back(m);
  }
  return out;
}

void SyncChannel::dump_jsonl(std::ostream& out) const {
  for (const auto& m : transcript_) {
    nlohmann::json j;
    j["round"] = m.round;
    j["from"] = m.from;
    j["to"] = m.to ? nlohmann::json(*m.to) : nlohmann::json(nullptr);
    j["kind"] = m.kind;
    if (m.to) {
      j["payload_len"] = m.payload.size();
    } else {
      j["payload"] = to_hex(m.payload);
    }
    out << j.dump() << '\n';
  }
}

DkgResult dkg_run(const std::vector<ParticipantId>& participants, std::uint32_t k,
                  DkgChannel& channel, Rng& rng, const DkgFaults& faults) {
  require(k >= 1, ErrorCode::kInvalidArgument, "threshold must be >= 1");
  {
    std::set<ParticipantId> uniq(participants.begin(), participants.end());
    require(uniq.size() == participants.size() && !uniq.contains(0),
            ErrorCode::kInvalidArgument, "participant ids must be distinct and non-zero");
  }

  DkgResult result;
  std::vector<ParticipantId> active = participants;
  for (std::uint32_t attempt = 0;; ++attempt) {
    if (active.size() < k) {
      fail(ErrorCode::kComplaintAgainstDealer,
           std::to_string(active.size()) + " qualified participants left, need " +
               std::to_string(k));
    }
    result.attempts = attempt + 1;

    std::vector<Participant> parts;
    parts.reserve(active.size());
    for (auto id : active) parts.emplace_back(id, k, rng.fork("dkg", (std::uint64_t{attempt} << 32) | id), faults);

    for (auto& p : parts) p.deal(channel, active);
    channel.end_round();

    for (auto& p : parts) p.check_pedersen(channel);
    channel.end_round();
    auto accused = collect_complaints(channel, active, attempt, result.complaints);
    if (accused.empty()) {
      for (auto& p : parts) p.publish_feldman(channel);
      channel.end_round();
      for (auto& p : parts) p.check_feldman(channel);
      channel.end_round();
      accused = collect_complaints(channel, active, attempt, result.complaints);
    }

    if (!accused.empty()) {
      std::erase_if(active, [&](ParticipantId id) { return accused.contains(id); });
      result.excluded.insert(result.excluded.end(), accused.begin(), accused.end());
      continue;
    }

    for (const auto& p : parts) {
      result.shares[p.id()] = p.share();
      result.views[p.id()] = p.view();
    }
    result.tpk = result.views.begin()->second;
    return result;
  }
}

}  // namespace themis
