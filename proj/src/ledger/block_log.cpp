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

#include "themis/block_log.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

#include "themis/error.hpp"

namespace themis {

using nlohmann::json;

namespace {

std::string hex(ByteView b) { return to_hex(b); }

Hash32 hash_from_hex(const std::string& s) {
  const auto b = from_hex(s);
  require(b.size() == 32, ErrorCode::kInvalidEncoding, "hash length");
  Hash32 h{};
  std::copy(b.begin(), b.end(), h.begin());
  return h;
}

json tx_json(const Transaction& tx) {
  return {{"sender", tx.sender.hex()},
          {"target", tx.target.hex()},
          {"function", tx.function},
          {"args", hex(tx.args)},
          {"privacy", tx.privacy == Privacy::kPrivateInput ? "private" : "public"},
          {"nonce", tx.nonce},
          {"hash", hex(tx.hash())}};
}

json receipt_json(const Receipt& r) {
  return {{"tx", hex(r.tx_hash)}, {"ok", r.ok},           {"error", r.error},
          {"detail", r.detail},   {"output", hex(r.output)}, {"events", r.events}};
}

Transaction tx_from_json(const json& j) {
  Transaction tx;
  tx.sender = Address::from_hex(j.at("sender").get<std::string>());
  tx.target = Address::from_hex(j.at("target").get<std::string>());
  tx.function = j.at("function").get<std::string>();
  tx.args = from_hex(j.at("args").get<std::string>());
  const auto privacy = j.at("privacy").get<std::string>();
  require(privacy == "public" || privacy == "private", ErrorCode::kInvalidEncoding, privacy);
  tx.privacy = privacy == "private" ? Privacy::kPrivateInput : Privacy::kPublic;
  tx.nonce = j.at("nonce").get<std::uint64_t>();
  return tx;
}

Receipt receipt_from_json(const json& j) {
  Receipt r;
  r.tx_hash = hash_from_hex(j.at("tx").get<std::string>());
  r.ok = j.at("ok").get<bool>();
  r.error = j.at("error").get<std::string>();
  r.detail = j.at("detail").get<std::string>();
  r.output = from_hex(j.at("output").get<std::string>());
  r.events = j.at("events").get<std::vector<std::string>>();
  return r;
}

}  // namespace

void write_block_log(std::ostream& out, const Chain& chain, std::uint32_t chain_index) {
  const auto& g = chain.genesis();
  json balances = json::array();
  for (const auto& [addr, amount] : g.balances) {
    balances.push_back({{"address", addr.hex()}, {"amount", amount}});
  }
  out << json{{"type", "genesis"},
              {"chain", chain_index},
              {"chain_id", g.chain_id},
              {"validator_seed", hex(g.validator_seed)},
              {"balances", balances}}
             .dump()
      << '\n';
  for (const auto& b : chain.blocks()) {
    json txs = json::array();
    for (const auto& tx : b.txs) txs.push_back(tx_json(tx));
    json receipts = json::array();
    for (const auto& r : b.receipts) receipts.push_back(receipt_json(r));
    out << json{{"type", "block"},
                {"chain", chain_index},
                {"height", b.height},
                {"parent", hex(b.parent_hash)},
                {"hash", hex(b.hash())},
                {"state_hash", hex(b.state_hash)},
                {"txs", txs},
                {"receipts", receipts}}
               .dump()
        << '\n';
  }
}

std::map<std::uint32_t, ChainLog> read_block_log(std::istream& in) {
  std::map<std::uint32_t, ChainLog> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const auto j = json::parse(line);
      const auto type = j.at("type").get<std::string>();
      const auto chain = j.at("chain").get<std::uint32_t>();
      if (type == "genesis") {
        require(!out.contains(chain), ErrorCode::kInvalidEncoding, "duplicate genesis");
        auto& g = out[chain].genesis;
        g.chain_id = j.at("chain_id").get<std::string>();
        g.validator_seed = from_hex(j.at("validator_seed").get<std::string>());
        for (const auto& b : j.at("balances")) {
          g.balances[Address::from_hex(b.at("address").get<std::string>())] =
              b.at("amount").get<std::uint64_t>();
        }
      } else if (type == "block") {
        auto it = out.find(chain);
        require(it != out.end(), ErrorCode::kInvalidEncoding, "block before genesis");
        Block b;
        b.height = j.at("height").get<std::uint64_t>();
        b.parent_hash = hash_from_hex(j.at("parent").get<std::string>());
        b.state_hash = hash_from_hex(j.at("state_hash").get<std::string>());
        for (const auto& t : j.at("txs")) b.txs.push_back(tx_from_json(t));
        for (const auto& r : j.at("receipts")) b.receipts.push_back(receipt_from_json(r));
        it->second.recorded_hashes.push_back(hash_from_hex(j.at("hash").get<std::string>()));
        it->second.blocks.push_back(std::move(b));
      } else {
        fail(ErrorCode::kInvalidEncoding, "record type " + type);
      }
    } catch (const json::exception& e) {
      fail(ErrorCode::kInvalidEncoding, "line " + std::to_string(lineno) + ": " + e.what());
    } catch (const Error& e) {
      fail(ErrorCode::kInvalidEncoding, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<std::string> replay_block_log(const std::map<std::uint32_t, ChainLog>& log,
                                          std::shared_ptr<const ContractRegistry> registry,
                                          std::map<std::uint32_t, Chain>* replayed) {
  std::vector<std::string> violations;
  for (const auto& [index, chain_log] : log) {
    const std::string where = "chain " + std::to_string(index);
    Chain chain(chain_log.genesis, registry);
    for (std::size_t i = 0; i < chain_log.blocks.size(); ++i) {
      const auto& logged = chain_log.blocks[i];
      const std::string at = where + " block " + std::to_string(logged.height);
      if (logged.hash() != chain_log.recorded_hashes[i]) {
        violations.push_back(at + ": recorded hash does not match block contents");
      }
      if (i > 0 && logged.parent_hash != chain_log.recorded_hashes[i - 1]) {
        violations.push_back(at + ": parent hash breaks the hash chain");
      }
      bool submitted = true;
      for (const auto& tx : logged.txs) {
        try {
          chain.submit_tx(tx);
        } catch (const Error& e) {
          violations.push_back(at + ": transaction rejected on replay: " + e.what());
          submitted = false;
          break;
        }
      }
      if (!submitted) break;
      const auto& mined = chain.mine_block();
      if (mined.height != logged.height) {
        violations.push_back(at + ": height out of sequence");
      }
      if (mined.parent_hash != logged.parent_hash) {
        violations.push_back(at + ": parent hash differs from replay");
      }
      if (mined.receipts != logged.receipts) {
        violations.push_back(at + ": receipts differ from replay");
      }
      if (mined.state_hash != logged.state_hash) {
        violations.push_back(at + ": post-state hash differs from replay");
      }
    }
    if (replayed != nullptr) replayed->emplace(index, std::move(chain));
  }
  return violations;
}

}  // namespace themis
