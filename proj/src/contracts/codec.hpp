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

#ifndef THEMIS_SRC_CONTRACTS_CODEC_HPP_
#define THEMIS_SRC_CONTRACTS_CODEC_HPP_

#include <span>
#include <vector>

#include "themis/bytes.hpp"

namespace themis::detail {

template <class T>
void write_seq(ByteWriter& w, std::span<const T> items) {
  w.u32(static_cast<std::uint32_t>(items.size()));
  for (const auto& item : items) {
    if constexpr (std::is_same_v<T, std::uint64_t>) {
      w.u64(item);
    } else if constexpr (std::is_same_v<T, std::uint32_t>) {
      w.u32(item);
    } else {
      w << item;
    }
  }
}

template <class T>
void write_seq(ByteWriter& w, const std::vector<T>& items) {
  write_seq(w, std::span<const T>(items));
}

// Reads a u32 count then `count` items with `read_one`. Counts larger than the
// remaining input are caught by the reader running out of bytes.
template <class Fn>
auto read_seq(ByteReader& r, Fn read_one) {
  using T = decltype(read_one(r));
  const auto count = r.u32();
  std::vector<T> out;
  out.reserve(std::min<std::uint32_t>(count, 4096));
  for (std::uint32_t i = 0; i < count; ++i) out.push_back(read_one(r));
  return out;
}

inline std::uint64_t read_u64(ByteReader& r) { return r.u64(); }
inline std::uint32_t read_u32(ByteReader& r) { return r.u32(); }

}  // namespace themis::detail

#endif  // THEMIS_SRC_CONTRACTS_CODEC_HPP_
