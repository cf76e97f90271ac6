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

// Line-delimited JSON block log.
//
// Every chain contributes one "genesis" record followed by one "block" record
// per mined block, each tagged with its chain index:
//
//   {"type":"genesis","chain":0,"chain_id":"...","validator_seed":"<hex>",
//    "balances":[{"address":"<hex>","amount":N},...]}
//   {"type":"block","chain":0,"height":1,"parent":"<hex>","hash":"<hex>",
//    "state_hash":"<hex>","txs":[{"sender","target","function","args",
//    "privacy","nonce","hash"}],"receipts":[{"tx","ok","error","detail",
//    "output","events"}]}
//
// Binary fields are lowercase hex. Private-input arguments appear only in
// their encrypted form. The validator seed is a test-only key escrow that lets
// an auditor replay private transactions.

#ifndef THEMIS_BLOCK_LOG_HPP_
#define THEMIS_BLOCK_LOG_HPP_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "themis/ledger.hpp"

namespace themis {

void write_block_log(std::ostream& out, const Chain& chain, std::uint32_t chain_index);

struct ChainLog {
  GenesisConfig genesis;
  std::vector<Block> blocks;
  std::vector<Hash32> recorded_hashes;  // "hash" field of each block record
};

/// Parses a log; malformed records throw kInvalidEncoding with the line number.
std::map<std::uint32_t, ChainLog> read_block_log(std::istream& in);

/// Re-executes every chain from its genesis and lists each divergence
/// (hash chain, recorded hashes, receipts, state hashes). Empty means clean.
/// On success `replayed` receives the rebuilt chains.
std::vector<std::string> replay_block_log(const std::map<std::uint32_t, ChainLog>& log,
                                          std::shared_ptr<const ContractRegistry> registry,
                                          std::map<std::uint32_t, Chain>* replayed = nullptr);

}  // namespace themis

#endif  // THEMIS_BLOCK_LOG_HPP_
