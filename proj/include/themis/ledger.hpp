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

// Deterministic single-validator-set ledger. Transactions are queued in
// submission order and executed against native contract state machines when
// a block is mined. Each transaction runs against a snapshot of the state; a
// failure rolls the snapshot back and is recorded in the receipt, never
// aborting the block.
//
// Private-input transactions carry their arguments as a HybridCiphertext under
// the validator key pk_V. Arguments are decrypted only inside execution.

#ifndef THEMIS_LEDGER_HPP_
#define THEMIS_LEDGER_HPP_

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "themis/address.hpp"
#include "themis/elgamal.hpp"
#include "themis/hybrid.hpp"

namespace themis {

enum class Privacy : std::uint8_t { kPublic = 0, kPrivateInput = 1 };

struct Transaction {
  Address sender;
  Address target;  // zero: deploy a contract whose kind is `function`
  std::string function;
  Bytes args;
  Privacy privacy = Privacy::kPublic;
  std::uint64_t nonce = 0;

  Hash32 hash() const;

  friend bool operator==(const Transaction&, const Transaction&) = default;
};

ByteWriter& operator<<(ByteWriter& w, const Transaction& tx);
Transaction read_transaction(ByteReader& r);

struct Receipt {
  Hash32 tx_hash{};
  bool ok = false;
  std::string error;  // error name when !ok
  std::string detail;
  Bytes output;
  std::vector<std::string> events;

  friend bool operator==(const Receipt&, const Receipt&) = default;
};

ByteWriter& operator<<(ByteWriter& w, const Receipt& r);

struct Block {
  std::uint64_t height = 0;
  Hash32 parent_hash{};
  std::vector<Transaction> txs;
  std::vector<Receipt> receipts;
  Hash32 state_hash{};

  Hash32 hash() const;
};

/// Keys held by the validator set, treated as a single party.
struct ValidatorKeys {
  KeyPair tx_key;         // (sk_V, pk_V) for private-input transactions
  KeyPair aggregate_key;  // signs reward aggregates computed on-chain

  static ValidatorKeys derive(ByteView seed);
};

struct GenesisConfig {
  std::string chain_id = "themis-0";
  Bytes validator_seed;
  std::map<Address, std::uint64_t> balances;
};

class CallContext;

/// A native contract. State must be fully captured by encode_state() so the
/// ledger can hash it.
class Contract {
 public:
  virtual ~Contract() = default;

  virtual std::string_view kind() const = 0;
  virtual Bytes call(CallContext& ctx, std::string_view function, ByteReader& args) = 0;
  virtual void encode_state(ByteWriter& w) const = 0;
  virtual std::unique_ptr<Contract> clone() const = 0;
};

using ContractFactory =
    std::function<std::unique_ptr<Contract>(CallContext& ctx, ByteReader& args)>;

class ContractRegistry {
 public:
  void add(std::string kind, ContractFactory factory);
  const ContractFactory* find(std::string_view kind) const;

 private:
  std::map<std::string, ContractFactory, std::less<>> factories_;
};

struct ChainState {
  std::uint64_t height = 0;
  std::uint64_t minted = 0;
  std::map<Address, std::uint64_t> balances;
  std::map<Address, std::uint64_t> nonces;
  std::map<Address, std::unique_ptr<Contract>> contracts;

  ChainState() = default;
  ChainState(const ChainState& other);
  ChainState& operator=(const ChainState& other);
  ChainState(ChainState&&) noexcept = default;
  ChainState& operator=(ChainState&&) noexcept = default;

  std::uint64_t total_balance() const;
  Hash32 hash() const;
};

class Chain;

/// Execution environment handed to contracts.
class CallContext {
 public:
  const Address& sender() const { return sender_; }
  const Address& origin() const { return origin_; }
  const Address& self() const { return self_; }
  std::uint64_t height() const;
  const ValidatorKeys& validator() const;

  /// Moves `amount` from the direct account caller into this contract.
  void pull_from_sender(std::uint64_t amount);
  /// Pays out of this contract's balance.
  void pay(const Address& to, std::uint64_t amount);
  std::uint64_t balance(const Address& who) const;

  Bytes call(const Address& target, std::string_view function, ByteView args);

  const Contract* contract(const Address& addr) const;
  template <class T>
  const T* view(const Address& addr) const {
    return dynamic_cast<const T*>(contract(addr));
  }

  void emit(std::string event);

 private:
  friend class Chain;
  CallContext(Chain& chain, ChainState& state, Address origin, Address sender,
              Address self, std::vector<std::string>& events)
      : chain_(chain), state_(state), origin_(origin), sender_(sender), self_(self),
        events_(events) {}

  Chain& chain_;
  ChainState& state_;
  Address origin_;
  Address sender_;
  Address self_;
  std::vector<std::string>& events_;
};

class Chain {
 public:
  Chain(GenesisConfig genesis, std::shared_ptr<const ContractRegistry> registry);

  Chain(Chain&&) = default;
  Chain& operator=(Chain&&) = default;

  /// Validates sender and nonce and queues the transaction. Returns its hash,
  /// which doubles as the receipt id. Errors: kUnknownSender, kBadNonce.
  Hash32 submit_tx(const Transaction& tx);

  /// Builds and submits a transaction with the sender's next nonce.
  Hash32 submit(const Address& sender, const Address& target, std::string function,
                Bytes args, Privacy privacy = Privacy::kPublic);

  const Block& mine_block();

  /// Next nonce the sender should use, counting queued transactions.
  std::uint64_t next_nonce(const Address& sender) const;

  const std::vector<Block>& blocks() const { return blocks_; }
  std::uint64_t height() const { return state_.height; }
  const ChainState& state() const { return state_; }
  Hash32 state_hash() const { return state_.hash(); }
  const GenesisConfig& genesis() const { return genesis_; }

  const Point& validator_public_key() const { return keys_.tx_key.pk; }
  const Point& aggregate_public_key() const { return keys_.aggregate_key.pk; }

  std::uint64_t balance(const Address& who) const;
  const Contract* contract(const Address& addr) const;
  template <class T>
  const T* view(const Address& addr) const {
    return dynamic_cast<const T*>(contract(addr));
  }
  const Receipt* receipt(const Hash32& tx_hash) const;
  std::size_t pending() const { return queue_.size(); }

 private:
  friend class CallContext;

  Receipt execute(const Transaction& tx);
  Bytes dispatch(ChainState& state, const Address& origin, const Address& sender,
                 const Address& target, std::string_view function, ByteView args,
                 std::vector<std::string>& events);

  GenesisConfig genesis_;
  std::shared_ptr<const ContractRegistry> registry_;
  ValidatorKeys keys_;
  ChainState state_;
  std::vector<Block> blocks_;
  std::vector<Transaction> queue_;
  std::map<Address, std::uint64_t> queued_per_sender_;
  std::map<Hash32, Receipt> receipts_;
};

/// Encrypts call arguments to the validator key.
Bytes private_wrap(const Point& validator_pk, ByteView args, Rng& rng);
/// Execution-side inverse of private_wrap. Throws kAuthenticationFailure.
Bytes private_unwrap(const Scalar& validator_sk, ByteView wrapped);

/// Independent chains built from one template; chain i gets its own id and
/// validator keys derived from the template seed and i.
std::vector<Chain> multi_chain(std::size_t n, const GenesisConfig& base,
                               std::shared_ptr<const ContractRegistry> registry);

}  // namespace themis

#endif  // THEMIS_LEDGER_HPP_
