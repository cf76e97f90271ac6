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

#include "themis/address.hpp"

#include <algorithm>

#include "themis/error.hpp"

namespace themis {
namespace {

Address truncate(const Hash32& h) {
  Address a;
  std::copy_n(h.begin(), a.bytes.size(), a.bytes.begin());
  return a;
}

}  // namespace

Address Address::from_public_key(const Point& pk) {
  return truncate(hash32("themis/v1/address/key", pk.bytes()));
}

Address Address::for_contract(const Address& creator, std::uint64_t nonce) {
  ByteWriter w;
  w << creator;
  w.u64(nonce);
  return truncate(hash32("themis/v1/address/contract", w.data()));
}

Address Address::from_label(std::string_view label) {
  return truncate(hash32("themis/v1/address/label", as_bytes(label)));
}

Address Address::from_hex(std::string_view hex) {
  const auto raw = themis::from_hex(hex);
  require(raw.size() == 20, ErrorCode::kInvalidEncoding, "address length");
  Address a;
  std::copy(raw.begin(), raw.end(), a.bytes.begin());
  return a;
}

bool Address::is_zero() const {
  return std::all_of(bytes.begin(), bytes.end(), [](auto b) { return b == 0; });
}

std::string Address::hex() const { return to_hex(bytes); }

ByteWriter& operator<<(ByteWriter& w, const Address& a) { return w.fixed(a.bytes); }

Address read_address(ByteReader& r) {
  Address a;
  a.bytes = r.array<20>();
  return a;
}

}  // namespace themis
