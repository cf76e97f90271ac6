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

#include "themis/confidential_pay.hpp"

#include "themis/error.hpp"

namespace themis {
namespace {

constexpr std::string_view kBalanceTag = "themis/v1/proof/batch-balance";

Scalar balance_challenge(const std::vector<TransferNote>& notes, std::uint64_t total,
                         const Point& excess, const Point& nonce_commit) {
  Transcript t(kBalanceTag);
  t.append(total).append(static_cast<std::uint64_t>(notes.size()));
  for (const auto& n : notes) {
    t.append(n.tx_ref).append(n.recipient.bytes).append(n.commitment.point);
  }
  return t.append(excess).append(nonce_commit).challenge();
}

Point batch_excess(const std::vector<TransferNote>& notes, std::uint64_t total) {
  Point sum;
  for (const auto& n : notes) sum += n.commitment.point;
  return sum - Point::base_mul(total);
}

}  // namespace

Commitment commit(std::uint64_t amount, const Scalar& blinding, std::uint64_t bound) {
  if (amount >= bound) {
    fail(ErrorCode::kPlaintextOutOfBound,
         std::to_string(amount) + " >= " + std::to_string(bound));
  }
  return {Point::base_mul(amount) + Point::second_generator() * blinding};
}

bool open_verify(const Commitment& c, const Scalar& blinding, std::uint64_t amount) {
  return Point::base_mul(amount) + Point::second_generator() * blinding == c.point;
}

ByteWriter& operator<<(ByteWriter& w, const TransferNote& n) {
  w.fixed(n.tx_ref);
  return w << n.recipient << n.commitment.point;
}

ByteWriter& operator<<(ByteWriter& w, const SettlementBatch& b) {
  w.u32(static_cast<std::uint32_t>(b.notes.size()));
  for (const auto& n : b.notes) w << n;
  return w << b.balance_proof.nonce_commit << b.balance_proof.response;
}

TransferNote read_transfer_note(ByteReader& r) {
  TransferNote n;
  n.tx_ref = r.array<32>();
  n.recipient = read_address(r);
  n.commitment.point = read_point(r);
  return n;
}

SettlementBatch read_settlement_batch(ByteReader& r) {
  SettlementBatch b;
  const auto count = r.u32();
  b.notes.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) b.notes.push_back(read_transfer_note(r));
  b.balance_proof.nonce_commit = read_point(r);
  b.balance_proof.response = read_scalar(r);
  return b;
}

SettlementBatch build_batch(std::span<const PaymentInstruction> payments,
                            std::uint64_t total, Rng& rng) {
  u128 sum = 0;
  for (const auto& p : payments) sum += p.amount;
  if (sum != total) {
    fail(ErrorCode::kBalanceMismatch, "payments sum to " +
                                          std::to_string(static_cast<std::uint64_t>(sum)) +
                                          ", declared " + std::to_string(total));
  }

  std::array<std::uint8_t, 32> salt{};
  rng.fill(salt);

  SettlementBatch batch;
  Scalar aggregate_blinding;
  for (std::size_t i = 0; i < payments.size(); ++i) {
    TransferNote note;
    note.recipient = payments[i].recipient;
    note.commitment = commit(payments[i].amount, payments[i].blinding);
    ByteWriter w;
    w.fixed(salt).u64(i) << note.recipient << note.commitment.point;
    note.tx_ref = hash32("themis/v1/note-ref", w.data());
    batch.notes.push_back(note);
    aggregate_blinding += payments[i].blinding;
  }

  const Point excess = batch_excess(batch.notes, total);
  const Scalar nonce = Scalar::random(rng);
  batch.balance_proof.nonce_commit = Point::second_generator() * nonce;
  const Scalar c =
      balance_challenge(batch.notes, total, excess, batch.balance_proof.nonce_commit);
  batch.balance_proof.response = nonce + c * aggregate_blinding;
  return batch;
}

bool verify_batch(const SettlementBatch& batch, std::uint64_t total) {
  try {
    const Point excess = batch_excess(batch.notes, total);
    const Scalar c =
        balance_challenge(batch.notes, total, excess, batch.balance_proof.nonce_commit);
    return Point::second_generator() * batch.balance_proof.response ==
           batch.balance_proof.nonce_commit + excess * c;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace themis
