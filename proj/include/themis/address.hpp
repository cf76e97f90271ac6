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

#ifndef THEMIS_ADDRESS_HPP_
#define THEMIS_ADDRESS_HPP_

#include <array>
#include <compare>
#include <string>
#include <string_view>

#include "themis/group.hpp"

namespace themis {

/// 20-byte account or contract identifier.
struct Address {
  std::array<std::uint8_t, 20> bytes{};

  static Address from_public_key(const Point& pk);
  /// Contract address: hash of the creator and its nonce.
  static Address for_contract(const Address& creator, std::uint64_t nonce);
  static Address from_label(std::string_view label);
  static Address from_hex(std::string_view hex);

  bool is_zero() const;
  std::string hex() const;

  friend bool operator==(const Address&, const Address&) = default;
  friend auto operator<=>(const Address&, const Address&) = default;
};

ByteWriter& operator<<(ByteWriter& w, const Address& a);
Address read_address(ByteReader& r);

}  // namespace themis

#endif  // THEMIS_ADDRESS_HPP_
