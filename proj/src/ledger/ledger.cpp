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

#include "themis/ledger.hpp"

#include <cassert>

#include "themis/error.hpp"

namespace themis {

// ---- encodings ----------------------------------------------------------------

ByteWriter& operator<<(ByteWriter& w, const Transaction& tx) {
  w << tx.sender << tx.target;
  w.str(tx.function).bytes(tx.args).u8(static_cast<std::uint8_t>(tx.privacy)).u64(tx.nonce);
  return w;
}

Transaction read_transaction(ByteReader& r) {
  Transaction tx;
  tx.sender = read_address(r);
  tx.target = read_address(r);
  tx.function = r.str();
  tx.args = r.bytes();
  const auto privacy = r.u8();
  require(privacy <= 1, ErrorCode::kInvalidEncoding, "privacy flag");
  tx.privacy = static_cast<Privacy>(privacy);
  tx.nonce = r.u64();
  return tx;
}

Hash32 Transaction::hash() const {
  ByteWriter w;
  w << *this;
  return hash32("themis/v1/tx", w.data());
}

ByteWriter& operator<<(ByteWriter& w, const Receipt& r) {
  w.fixed(r.tx_hash).boolean(r.ok).str(r.error).str(r.detail).bytes(r.output);
  w.u32(static_cast<std::uint32_t>(r.events.size()));
  for (const auto& e : r.events) w.str(e);
  return w;
}

Hash32 Block::hash() const {
  ByteWriter w;
  w.u64(height).fixed(parent_hash).u32(static_cast<std::uint32_t>(txs.size()));
  for (const auto& tx : txs) w.fixed(tx.hash());
  ByteWriter rw;
  for (const auto& r : receipts) rw << r;
  w.fixed(hash32("themis/v1/receipts", rw.data())).fixed(state_hash);
  return hash32("themis/v1/block", w.data());
}

ValidatorKeys ValidatorKeys::derive(ByteView seed) {
  ByteWriter tx_seed, agg_seed;
  tx_seed.str("validator/tx").bytes(seed);
  agg_seed.str("validator/aggregate").bytes(seed);
  return {keygen(tx_seed.data()), keygen(agg_seed.data())};
}

// ---- registry ------------------------------------------------------------------

void ContractRegistry::add(std::string kind, ContractFactory factory) {
  factories_[std::move(kind)] = std::move(factory);
}

const ContractFactory* ContractRegistry::find(std::string_view kind) const {
  auto it = factories_.find(kind);
  return it == factories_.end() ? nullptr : &it->second;
}

// ---- state ---------------------------------------------------------------------

ChainState::ChainState(const ChainState& other)
    : height(other.height),
      minted(other.minted),
      balances(other.balances),
      nonces(other.nonces) {
  for (const auto& [addr, c] : other.contracts) contracts.emplace(addr, c->clone());
}

ChainState& ChainState::operator=(const ChainState& other) {
  if (this != &other) {
    ChainState tmp(other);
    *this = std::move(tmp);
  }
  return *this;
}

std::uint64_t ChainState::total_balance() const {
  std::uint64_t sum = 0;
  for (const auto& [addr, b] : balances) sum += b;
  return sum;
}

Hash32 ChainState::hash() const {
  ByteWriter w;
  w.u64(height).u64(minted).u32(static_cast<std::uint32_t>(balances.size()));
  for (const auto& [addr, b] : balances) {
    w << addr;
    w.u64(b);
  }
  w.u32(static_cast<std::uint32_t>(nonces.size()));
  for (const auto& [addr, n] : nonces) {
    w << addr;
    w.u64(n);
  }
  w.u32(static_cast<std::uint32_t>(contracts.size()));
  for (const auto& [addr, c] : contracts) {
    ByteWriter cw;
    c->encode_state(cw);
    w << addr;
    w.str(c->kind()).bytes(cw.data());
  }
  return hash32("themis/v1/state", w.data());
}

// ---- call context ----------------------------------------------------------------

std::uint64_t CallContext::height() const { return state_.height; }

const ValidatorKeys& CallContext::validator() const { return chain_.keys_; }

void CallContext::pull_from_sender(std::uint64_t amount) {
  require(sender_ == origin_, ErrorCode::kNotAuthorized,
          "funds can only be pulled from the transaction sender");
  auto& from = state_.balances[sender_];
  require(from >= amount, ErrorCode::kInsufficientBalance,
          sender_.hex() + " has " + std::to_string(from));
  from -= amount;
  state_.balances[self_] += amount;
}

void CallContext::pay(const Address& to, std::uint64_t amount) {
  auto& from = state_.balances[self_];
  require(from >= amount, ErrorCode::kInsufficientBalance,
          "contract holds " + std::to_string(from));
  from -= amount;
  state_.balances[to] += amount;
}

std::uint64_t CallContext::balance(const Address& who) const {
  auto it = state_.balances.find(who);
  return it == state_.balances.end() ? 0 : it->second;
}

Bytes CallContext::call(const Address& target, std::string_view function, ByteView args) {
  return chain_.dispatch(state_, origin_, self_, target, function, args, events_);
}

const Contract* CallContext::contract(const Address& addr) const {
  auto it = state_.contracts.find(addr);
  return it == state_.contracts.end() ? nullptr : it->second.get();
}

void CallContext::emit(std::string event) { events_.push_back(std::move(event)); }

// ---- chain -----------------------------------------------------------------------

Chain::Chain(GenesisConfig genesis, std::shared_ptr<const ContractRegistry> registry)
    : genesis_(std::move(genesis)),
      registry_(std::move(registry)),
      keys_(ValidatorKeys::derive(genesis_.validator_seed)) {
  require(registry_ != nullptr, ErrorCode::kInvalidArgument, "null contract registry");
  for (const auto& [addr, amount] : genesis_.balances) {
    state_.balances[addr] = amount;
    state_.minted += amount;
  }
}

std::uint64_t Chain::next_nonce(const Address& sender) const {
  std::uint64_t n = 0;
  if (auto it = state_.nonces.find(sender); it != state_.nonces.end()) n = it->second;
  if (auto it = queued_per_sender_.find(sender); it != queued_per_sender_.end()) n += it->second;
  return n;
}

Hash32 Chain::submit_tx(const Transaction& tx) {
  if (tx.sender.is_zero() || state_.contracts.contains(tx.sender)) {
    fail(ErrorCode::kUnknownSender, tx.sender.hex());
  }
  const auto expected = next_nonce(tx.sender);
  if (tx.nonce != expected) {
    fail(ErrorCode::kBadNonce,
         "got " + std::to_string(tx.nonce) + ", expected " + std::to_string(expected));
  }
  queue_.push_back(tx);
  ++queued_per_sender_[tx.sender];
  return tx.hash();
}

Hash32 Chain::submit(const Address& sender, const Address& target, std::string function,
                     Bytes args, Privacy privacy) {
  Transaction tx;
  tx.sender = sender;
  tx.target = target;
  tx.function = std::move(function);
  tx.args = std::move(args);
  tx.privacy = privacy;
  tx.nonce = next_nonce(sender);
  return submit_tx(tx);
}

Bytes Chain::dispatch(ChainState& state, const Address& origin, const Address& sender,
                      const Address& target, std::string_view function, ByteView args,
                      std::vector<std::string>& events) {
  ByteReader reader(args);
  auto it = state.contracts.find(target);
  if (it != state.contracts.end()) {
    CallContext ctx(*this, state, origin, sender, target, events);
    Bytes out = it->second->call(ctx, function, reader);
    reader.expect_done();
    return out;
  }
  if (function == "transfer" && sender == origin) {
    const auto amount = reader.u64();
    reader.expect_done();
    auto& from = state.balances[sender];
    require(from >= amount, ErrorCode::kInsufficientBalance);
    from -= amount;
    state.balances[target] += amount;
    return {};
  }
  fail(ErrorCode::kUnknownContract, target.hex());
}

Receipt Chain::execute(const Transaction& tx) {
  Receipt receipt;
  receipt.tx_hash = tx.hash();
  state_.nonces[tx.sender] = tx.nonce + 1;

  ChainState working = state_;
  try {
    Bytes args = tx.privacy == Privacy::kPrivateInput
                     ? private_unwrap(keys_.tx_key.sk, tx.args)
                     : tx.args;
    if (tx.target.is_zero()) {
      const auto* factory = registry_->find(tx.function);
      require(factory != nullptr, ErrorCode::kUnknownContract, tx.function);
      const Address addr = Address::for_contract(tx.sender, tx.nonce);
      CallContext ctx(*this, working, tx.sender, tx.sender, addr, receipt.events);
      ByteReader reader(args);
      auto contract = (*factory)(ctx, reader);
      reader.expect_done();
      working.contracts.emplace(addr, std::move(contract));
      receipt.output.assign(addr.bytes.begin(), addr.bytes.end());
    } else {
      receipt.output = dispatch(working, tx.sender, tx.sender, tx.target, tx.function,
                                args, receipt.events);
    }
    state_ = std::move(working);
    receipt.ok = true;
  } catch (const Error& e) {
    receipt.ok = false;
    receipt.error = std::string(error_name(e.code()));
    receipt.detail = e.what();
    receipt.events.clear();
    receipt.output.clear();
  }
  return receipt;
}

const Block& Chain::mine_block() {
  Block block;
  block.height = state_.height + 1;
  block.parent_hash = blocks_.empty() ? hash32("themis/v1/genesis", as_bytes(genesis_.chain_id))
                                      : blocks_.back().hash();
  state_.height = block.height;

  block.txs = std::move(queue_);
  queue_.clear();
  queued_per_sender_.clear();
  for (const auto& tx : block.txs) {
    auto receipt = execute(tx);
    receipts_[receipt.tx_hash] = receipt;
    block.receipts.push_back(std::move(receipt));
  }
  assert(state_.total_balance() == state_.minted);
  block.state_hash = state_.hash();
  blocks_.push_back(std::move(block));
  return blocks_.back();
}

std::uint64_t Chain::balance(const Address& who) const {
  auto it = state_.balances.find(who);
  return it == state_.balances.end() ? 0 : it->second;
}

const Contract* Chain::contract(const Address& addr) const {
  auto it = state_.contracts.find(addr);
  return it == state_.contracts.end() ? nullptr : it->second.get();
}

const Receipt* Chain::receipt(const Hash32& tx_hash) const {
  auto it = receipts_.find(tx_hash);
  return it == receipts_.end() ? nullptr : &it->second;
}

Bytes private_wrap(const Point& validator_pk, ByteView args, Rng& rng) {
  ByteWriter w;
  w << hybrid_encrypt(validator_pk, args, rng);
  return std::move(w).take();
}

Bytes private_unwrap(const Scalar& validator_sk, ByteView wrapped) {
  HybridCiphertext hc;
  try {
    ByteReader r(wrapped);
    hc = read_hybrid_ciphertext(r);
    r.expect_done();
  } catch (const Error&) {
    fail(ErrorCode::kAuthenticationFailure, "malformed private input");
  }
  return hybrid_decrypt(validator_sk, hc);
}

std::vector<Chain> multi_chain(std::size_t n, const GenesisConfig& base,
                               std::shared_ptr<const ContractRegistry> registry) {
  require(n >= 1, ErrorCode::kInvalidArgument, "need at least one chain");
  std::vector<Chain> chains;
  chains.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    GenesisConfig g = base;
    g.chain_id = base.chain_id + "/" + std::to_string(i);
    ByteWriter w;
    w.bytes(base.validator_seed).u64(i);
    g.validator_seed = std::move(w).take();
    chains.emplace_back(std::move(g), registry);
  }
  return chains;
}

}  // namespace themis
