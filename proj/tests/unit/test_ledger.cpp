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

#include "support.hpp"

#include <sstream>

#include "themis/block_log.hpp"

using namespace themis;

namespace {

// Minimal contract: a counter with a failing entry point.
class Counter final : public Contract {
 public:
  std::string_view kind() const override { return "counter"; }
  Bytes call(CallContext& ctx, std::string_view fn, ByteReader& args) override {
    if (fn == "inc") {
      value_ += args.u64();
      ctx.emit("inc");
      return {};
    }
    if (fn == "fail") {
      value_ += 1000;  // must be rolled back
      fail(ErrorCode::kInvalidArgument, "asked to fail");
    }
    if (fn == "deposit") {
      const auto amount = args.u64();
      ctx.pull_from_sender(amount);
      return {};
    }
    if (fn == "digest") {
      const auto b = args.bytes();
      const auto h = hash32("test/digest", b);
      return Bytes(h.begin(), h.end());
    }
    fail(ErrorCode::kUnknownFunction, std::string(fn));
  }
  void encode_state(ByteWriter& w) const override { w.u64(value_); }
  std::unique_ptr<Contract> clone() const override { return std::make_unique<Counter>(*this); }
  std::uint64_t value() const { return value_; }

 private:
  std::uint64_t value_ = 0;
};

std::shared_ptr<const ContractRegistry> registry() {
  auto r = std::make_shared<ContractRegistry>();
  r->add("counter", [](CallContext&, ByteReader&) { return std::make_unique<Counter>(); });
  return r;
}

const Address kAlice = Address::from_label("alice");
const Address kBob = Address::from_label("bob");

GenesisConfig genesis() {
  GenesisConfig g;
  g.chain_id = "t";
  g.validator_seed = {9};
  g.balances[kAlice] = 100;
  return g;
}

Bytes u64_arg(std::uint64_t v) {
  ByteWriter w;
  w.u64(v);
  return std::move(w).take();
}

Address deploy(Chain& c) {
  const auto nonce = c.next_nonce(kAlice);
  c.submit(kAlice, Address{}, "counter", {});
  c.mine_block();
  return Address::for_contract(kAlice, nonce);
}

}  // namespace

TEST_SUITE("ledger") {

TEST_CASE("nonces: sequential accepted, replay rejected, unknown senders rejected") {
  Chain c(genesis(), registry());
  Transaction tx{kAlice, kBob, "transfer", u64_arg(1), Privacy::kPublic, 0};
  c.submit_tx(tx);
  CHECK_ERROR(c.submit_tx(tx), ErrorCode::kBadNonce);
  tx.nonce = 1;
  CHECK_NOTHROW(c.submit_tx(tx));
  c.mine_block();
  CHECK(c.balance(kBob) == 2);
  tx.nonce = 0;
  CHECK_ERROR(c.submit_tx(tx), ErrorCode::kBadNonce);
  Transaction anon{Address{}, kBob, "transfer", u64_arg(1), Privacy::kPublic, 0};
  CHECK_ERROR(c.submit_tx(anon), ErrorCode::kUnknownSender);
}

TEST_CASE("empty block and deterministic state across instances") {
  Chain a(genesis(), registry()), b(genesis(), registry());
  const auto& blk = a.mine_block();
  CHECK(blk.txs.empty());
  CHECK(blk.height == 1);
  b.mine_block();
  for (auto* c : {&a, &b}) {
    const auto addr = deploy(*c);
    c->submit(kAlice, addr, "inc", u64_arg(5));
    c->submit(kBob, kAlice, "transfer", u64_arg(0));
    c->mine_block();
  }
  CHECK(a.state_hash() == b.state_hash());
  CHECK(a.blocks().back().hash() == b.blocks().back().hash());
}

TEST_CASE("one failing tx among three leaves the other two applied") {
  Chain c(genesis(), registry());
  const auto addr = deploy(c);
  const auto t1 = c.submit(kAlice, addr, "inc", u64_arg(2));
  const auto t2 = c.submit(kAlice, addr, "fail", {});
  const auto t3 = c.submit(kAlice, addr, "inc", u64_arg(3));
  const auto& blk = c.mine_block();
  REQUIRE(blk.receipts.size() == 3);
  CHECK(c.receipt(t1)->ok);
  CHECK_FALSE(c.receipt(t2)->ok);
  CHECK(c.receipt(t2)->error == "InvalidArgument");
  CHECK(c.receipt(t3)->ok);
  CHECK(c.view<Counter>(addr)->value() == 5);
  // replay oracle: the same sequence without the failing tx ends in the same state
  Chain d(genesis(), registry());
  const auto addr2 = deploy(d);
  d.submit(kAlice, addr2, "inc", u64_arg(2));
  d.submit(kAlice, addr2, "inc", u64_arg(3));
  d.mine_block();
  CHECK(d.view<Counter>(addr2)->value() == 5);
  // execution order is submission order
  CHECK(blk.txs[0].nonce < blk.txs[1].nonce);
}

TEST_CASE("balances: conservation and failed pulls roll back") {
  Chain c(genesis(), registry());
  const auto addr = deploy(c);
  c.submit(kAlice, addr, "deposit", u64_arg(40));
  const auto big = c.submit(kAlice, addr, "deposit", u64_arg(1000));
  c.mine_block();
  CHECK(c.balance(addr) == 40);
  CHECK(c.balance(kAlice) == 60);
  CHECK(c.receipt(big)->error == "InsufficientBalance");
  CHECK(c.state().total_balance() == c.state().minted);
}

TEST_CASE("unknown contract kind, function and trailing arguments") {
  Chain c(genesis(), registry());
  const auto addr = deploy(c);
  const auto t1 = c.submit(kAlice, Address{}, "nope", {});
  const auto t2 = c.submit(kAlice, addr, "nope", {});
  auto args = u64_arg(1);
  args.push_back(0);
  const auto t3 = c.submit(kAlice, addr, "inc", args);
  c.mine_block();
  CHECK(c.receipt(t1)->error == "UnknownContract");
  CHECK(c.receipt(t2)->error == "UnknownFunction");
  CHECK(c.receipt(t3)->error == "InvalidEncoding");
}

TEST_CASE("private inputs: roundtrip, tamper, and no plaintext in the block") {
  Chain c(genesis(), registry());
  const auto addr = deploy(c);
  Rng rng(60);
  Bytes sentinel(24);
  rng.fill(sentinel);
  ByteWriter w;
  w.bytes(sentinel);
  const auto wrapped = private_wrap(c.validator_public_key(), w.data(), rng);
  const auto ok = c.submit(kAlice, addr, "digest", wrapped, Privacy::kPrivateInput);
  auto bad = wrapped;
  bad[bad.size() - 3] ^= 1;
  const auto tampered = c.submit(kAlice, addr, "digest", bad, Privacy::kPrivateInput);
  c.mine_block();
  CHECK(c.receipt(ok)->ok);
  const auto h = hash32("test/digest", sentinel);
  CHECK(c.receipt(ok)->output == Bytes(h.begin(), h.end()));
  CHECK(c.receipt(tampered)->error == "AuthenticationFailure");

  std::ostringstream log;
  write_block_log(log, c, 0);
  CHECK(log.str().find(to_hex(sentinel)) == std::string::npos);
  for (const auto& b : c.blocks()) {
    for (const auto& tx : b.txs) {
      CHECK(std::search(tx.args.begin(), tx.args.end(), sentinel.begin(), sentinel.end()) ==
            tx.args.end());
    }
  }
}

TEST_CASE("block log roundtrip, replay, and mutation detection") {
  Chain c(genesis(), registry());
  const auto addr = deploy(c);
  c.submit(kAlice, addr, "inc", u64_arg(4));
  c.submit(kAlice, kBob, "transfer", u64_arg(7));
  c.mine_block();
  c.mine_block();
  std::ostringstream out;
  write_block_log(out, c, 0);
  {
    std::istringstream in(out.str());
    const auto log = read_block_log(in);
    REQUIRE(log.size() == 1);
    CHECK(log.at(0).blocks.size() == c.blocks().size());
    std::map<std::uint32_t, Chain> replayed;
    CHECK(replay_block_log(log, registry(), &replayed).empty());
    CHECK(replayed.at(0).state_hash() == c.state_hash());
  }
  {
    // mutate one transaction amount in block 2
    auto text = out.str();
    const auto needle = "\"args\":\"" + to_hex(u64_arg(7));
    const auto pos = text.find(needle);
    REQUIRE(pos != std::string::npos);
    text.replace(pos + 8, 2, "08");
    std::istringstream in(text);
    const auto v = replay_block_log(read_block_log(in), registry());
    CHECK_FALSE(v.empty());
  }
  {
    std::istringstream in("{\"type\":\"block\"\n");
    CHECK_ERROR(read_block_log(in), ErrorCode::kInvalidEncoding);
  }
}

TEST_CASE("multi_chain: distinct ids and validator keys, n=1 matches a single chain") {
  const auto chains = multi_chain(3, genesis(), registry());
  REQUIRE(chains.size() == 3);
  CHECK(chains[0].genesis().chain_id != chains[1].genesis().chain_id);
  CHECK(chains[0].validator_public_key() != chains[1].validator_public_key());
  CHECK(chains[2].balance(kAlice) == 100);
  CHECK_ERROR(multi_chain(0, genesis(), registry()), ErrorCode::kInvalidArgument);

  auto one = multi_chain(1, genesis(), registry());
  auto g = genesis();
  g.chain_id = one[0].genesis().chain_id;
  g.validator_seed = one[0].genesis().validator_seed;
  Chain single(g, registry());
  for (auto* c : {&one[0], &single}) {
    c->submit(kAlice, kBob, "transfer", u64_arg(3));
    c->mine_block();
  }
  CHECK(one[0].state_hash() == single.state_hash());
}

}  // TEST_SUITE
