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

#include "themis/rng.hpp"

#include <sodium.h>

#include <algorithm>

#include "themis/error.hpp"

namespace themis {

Rng::Rng(ByteView seed) { key_ = hash32("themis/v1/rng-seed", seed); }

Rng::Rng(std::uint64_t seed) {
  ByteWriter w;
  w.u64(seed);
  key_ = hash32("themis/v1/rng-seed", w.data());
}

void Rng::refill() {
  std::array<std::uint8_t, crypto_stream_chacha20_ietf_NONCEBYTES> nonce{};
  for (int i = 0; i < 8; ++i) nonce[i] = static_cast<std::uint8_t>(counter_ >> (8 * i));
  ++counter_;
  crypto_stream_chacha20_ietf(block_.data(), block_.size(), nonce.data(),
                              key_.data());
  used_ = 0;
}

void Rng::fill(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    if (used_ == block_.size()) refill();
    auto n = std::min(out.size() - done, block_.size() - used_);
    std::copy_n(block_.begin() + static_cast<std::ptrdiff_t>(used_), n,
                out.begin() + static_cast<std::ptrdiff_t>(done));
    used_ += n;
    done += n;
  }
}

std::uint64_t Rng::next_u64() {
  std::array<std::uint8_t, 8> b{};
  fill(b);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

std::uint64_t Rng::uniform(std::uint64_t n) {
  require(n != 0, ErrorCode::kInvalidArgument, "uniform(0)");
  // Rejection sampling over the largest multiple of n.
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % n + 1) % n;
  for (;;) {
    auto v = next_u64();
    if (v <= limit) return v % n;
  }
}

std::uint64_t Rng::range(std::uint64_t lo, std::uint64_t hi) {
  require(lo <= hi, ErrorCode::kInvalidArgument, "range lo > hi");
  if (lo == 0 && hi == ~std::uint64_t{0}) return next_u64();
  return lo + uniform(hi - lo + 1);
}

Rng Rng::fork(std::string_view label) const {
  ByteWriter w;
  w.fixed(key_).str(label);
  return Rng(w.data());
}

Rng Rng::fork(std::string_view label, std::uint64_t index) const {
  ByteWriter w;
  w.fixed(key_).str(label).u64(index);
  return Rng(w.data());
}

}  // namespace themis
