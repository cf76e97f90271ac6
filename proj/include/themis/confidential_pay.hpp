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

// Pedersen-commitment value transfer with batched settlement.
//
// A batch carries one note per payment. Its balance proof is a Schnorr proof
// of knowledge of rho with  sum_i C_i - total*G = rho*H, which shows the hidden
// amounts sum to the public total without revealing any of them. No range
// proofs: amounts come from verified payment requests.
//
// Batch wire format:
//   u32 note_count
//   note_count x { tx_ref (32) | recipient (20) | commitment (32) }
//   balance proof { nonce_commit (32) | response (32) }

#ifndef THEMIS_CONFIDENTIAL_PAY_HPP_
#define THEMIS_CONFIDENTIAL_PAY_HPP_

#include <span>
#include <vector>

#include "themis/address.hpp"
#include "themis/elgamal.hpp"

namespace themis {

struct Commitment {
  Point point;  // l*G + r*H

  friend bool operator==(const Commitment&, const Commitment&) = default;
};

Commitment commit(std::uint64_t amount, const Scalar& blinding,
                  std::uint64_t bound = kAnalyticsBound);
bool open_verify(const Commitment& c, const Scalar& blinding, std::uint64_t amount);

using TxRef = Hash32;

struct TransferNote {
  TxRef tx_ref{};
  Address recipient;
  Commitment commitment;

  friend bool operator==(const TransferNote&, const TransferNote&) = default;
};

struct BalanceProof {
  Point nonce_commit;
  Scalar response;

  friend bool operator==(const BalanceProof&, const BalanceProof&) = default;
};

struct SettlementBatch {
  std::vector<TransferNote> notes;
  BalanceProof balance_proof;

  friend bool operator==(const SettlementBatch&, const SettlementBatch&) = default;
};

ByteWriter& operator<<(ByteWriter& w, const TransferNote& n);
ByteWriter& operator<<(ByteWriter& w, const SettlementBatch& b);
TransferNote read_transfer_note(ByteReader& r);
SettlementBatch read_settlement_batch(ByteReader& r);

struct PaymentInstruction {
  Address recipient;
  std::uint64_t amount = 0;
  Scalar blinding;
};

/// Throws kBalanceMismatch unless the amounts sum to `total`.
SettlementBatch build_batch(std::span<const PaymentInstruction> payments,
                            std::uint64_t total, Rng& rng);

bool verify_batch(const SettlementBatch& batch, std::uint64_t total);

}  // namespace themis

#endif  // THEMIS_CONFIDENTIAL_PAY_HPP_
