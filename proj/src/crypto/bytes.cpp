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

#include "themis/bytes.hpp"

#include <sodium.h>

#include <algorithm>

#include "themis/error.hpp"

namespace themis {

std::string to_hex(ByteView bytes) {
  std::string out(bytes.size() * 2 + 1, '\0');
  sodium_bin2hex(out.data(), out.size(), bytes.data(), bytes.size());
  out.pop_back();
  return out;
}

Bytes from_hex(std::string_view hex) {
  Bytes out(hex.size() / 2);
  std::size_t len = 0;
  const char* end = nullptr;
  if (hex.size() % 2 != 0 ||
      sodium_hex2bin(out.data(), out.size(), hex.data(), hex.size(), nullptr,
                     &len, &end) != 0 ||
      len != out.size()) {
    fail(ErrorCode::kInvalidEncoding, "bad hex string");
  }
  return out;
}

std::array<std::uint8_t, 64> sha512(std::initializer_list<ByteView> parts) {
  crypto_hash_sha512_state st;
  crypto_hash_sha512_init(&st);
  for (auto p : parts) crypto_hash_sha512_update(&st, p.data(), p.size());
  std::array<std::uint8_t, 64> out{};
  crypto_hash_sha512_final(&st, out.data());
  return out;
}

Hash32 hash32(std::string_view tag, ByteView data) {
  auto wide = sha512({as_bytes(tag), data});
  Hash32 out{};
  std::copy_n(wide.begin(), out.size(), out.begin());
  return out;
}

ByteWriter& ByteWriter::u8(std::uint8_t v) {
  buf_.push_back(v);
  return *this;
}

ByteWriter& ByteWriter::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  return *this;
}

ByteWriter& ByteWriter::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  return *this;
}

ByteWriter& ByteWriter::fixed(ByteView data) {
  buf_.insert(buf_.end(), data.begin(), data.end());
  return *this;
}

ByteWriter& ByteWriter::bytes(ByteView data) {
  u32(static_cast<std::uint32_t>(data.size()));
  return fixed(data);
}

ByteView ByteReader::fixed(std::size_t n) {
  if (data_.size() - pos_ < n) fail(ErrorCode::kInvalidEncoding, "truncated input");
  auto out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

std::uint8_t ByteReader::u8() { return fixed(1)[0]; }

std::uint32_t ByteReader::u32() {
  auto b = fixed(4);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

std::uint64_t ByteReader::u64() {
  auto b = fixed(8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

bool ByteReader::boolean() {
  auto v = u8();
  if (v > 1) fail(ErrorCode::kInvalidEncoding, "bad boolean");
  return v == 1;
}

Bytes ByteReader::bytes() {
  auto n = u32();
  auto v = fixed(n);
  return {v.begin(), v.end()};
}

std::string ByteReader::str() {
  auto n = u32();
  auto v = fixed(n);
  return {v.begin(), v.end()};
}

void ByteReader::expect_done() const {
  if (!done()) fail(ErrorCode::kInvalidEncoding, "trailing bytes");
}

}  // namespace themis
