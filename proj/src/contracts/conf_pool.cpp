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

#include <set>

#include "themis/contracts.hpp"
#include "themis/error.hpp"

namespace themis {

const NoteRecord* ConfidentialPool::note(const TxRef& ref) const {
  auto it = notes_.find(ref);
  return it == notes_.end() ? nullptr : &it->second;
}

Bytes ConfidentialPool::call(CallContext& ctx, std::string_view function, ByteReader& args) {
  if (function == "Settle") {
    const auto tau = args.u64();
    const auto batch = read_settlement_batch(args);
    require(verify_batch(batch, tau), ErrorCode::kBadProof, "batch does not balance");
    std::set<TxRef> seen;
    for (const auto& n : batch.notes) {
      require(!notes_.contains(n.tx_ref) && seen.insert(n.tx_ref).second,
              ErrorCode::kDuplicateTxRef, to_hex(n.tx_ref));
    }
    ctx.pull_from_sender(tau);
    for (const auto& n : batch.notes) notes_[n.tx_ref] = {n.recipient, n.commitment, false};
    ctx.emit("settle:" + std::to_string(batch.notes.size()));
    return {};
  }
  if (function == "Redeem") {
    const auto ref = args.array<32>();
    const auto blinding = read_scalar(args);
    const auto amount = args.u64();
    auto it = notes_.find(ref);
    require(it != notes_.end(), ErrorCode::kUnknownTxRef, to_hex(ref));
    auto& rec = it->second;
    require(rec.recipient == ctx.sender(), ErrorCode::kNotAuthorized,
            "note belongs to " + rec.recipient.hex());
    require(!rec.redeemed, ErrorCode::kAlreadyClaimed, to_hex(ref));
    require(open_verify(rec.commitment, blinding, amount), ErrorCode::kBadOpening,
            to_hex(ref));
    rec.redeemed = true;
    ctx.pay(rec.recipient, amount);
    return {};
  }
  fail(ErrorCode::kUnknownFunction, std::string(function));
}

void ConfidentialPool::encode_state(ByteWriter& w) const {
  w.u32(static_cast<std::uint32_t>(notes_.size()));
  for (const auto& [ref, rec] : notes_) {
    w.fixed(ref) << rec.recipient << rec.commitment.point;
    w.boolean(rec.redeemed);
  }
}

}  // namespace themis
