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

#ifndef THEMIS_BYTES_HPP_
#define THEMIS_BYTES_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace themis {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;
using Hash32 = std::array<std::uint8_t, 32>;
__extension__ typedef unsigned __int128 u128;

std::string to_hex(ByteView bytes);
Bytes from_hex(std::string_view hex);

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

/// SHA-512 over the concatenation of `parts`.
std::array<std::uint8_t, 64> sha512(std::initializer_list<ByteView> parts);

/// First 32 bytes of a domain-tagged SHA-512.
Hash32 hash32(std::string_view tag, ByteView data);

/// Canonical encoder. Integers are little-endian, variable-length fields carry
/// a u32 length prefix, points and scalars are fixed 32-byte fields.
class ByteWriter {
 public:
  ByteWriter& u8(std::uint8_t v);
  ByteWriter& u32(std::uint32_t v);
  ByteWriter& u64(std::uint64_t v);
  ByteWriter& boolean(bool v) { return u8(v ? 1 : 0); }
  ByteWriter& fixed(ByteView data);
  ByteWriter& bytes(ByteView data);
  ByteWriter& str(std::string_view s) { return bytes(as_bytes(s)); }

  const Bytes& data() const& { return buf_; }
  Bytes take() && { return std::move(buf_); }

 private:
  Bytes buf_;
};

/// Reader over a canonical encoding; truncation throws kInvalidEncoding.
class ByteReader {
 public:
  explicit ByteReader(ByteView data) : data_(data) {}

  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  bool boolean();
  ByteView fixed(std::size_t n);
  Bytes bytes();
  std::string str();

  template <std::size_t N>
  std::array<std::uint8_t, N> array() {
    std::array<std::uint8_t, N> out{};
    auto v = fixed(N);
    std::copy(v.begin(), v.end(), out.begin());
    return out;
  }

  bool done() const { return pos_ == data_.size(); }
  /// Throws unless every byte was consumed.
  void expect_done() const;

 private:
  ByteView data_;
  std::size_t pos_ = 0;
};

}  // namespace themis

#endif  // THEMIS_BYTES_HPP_
