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

#ifndef THEMIS_RNG_HPP_
#define THEMIS_RNG_HPP_

#include <array>
#include <cstdint>
#include <string_view>

#include "themis/bytes.hpp"

namespace themis {

/// Seedable ChaCha20 keystream. Every random choice in the simulation flows
/// through one of these, so a whole run is reproducible from a single seed.
class Rng {
 public:
  explicit Rng(ByteView seed);
  explicit Rng(std::uint64_t seed);

  void fill(std::span<std::uint8_t> out);
  std::uint64_t next_u64();
  /// Uniform in [0, n); n must be non-zero.
  std::uint64_t uniform(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi);

  /// Independent child stream keyed by this stream's key and `label`. Does not
  /// advance the parent.
  Rng fork(std::string_view label) const;
  Rng fork(std::string_view label, std::uint64_t index) const;

 private:
  void refill();

  std::array<std::uint8_t, 32> key_{};
  std::uint64_t counter_ = 0;
  std::array<std::uint8_t, 64> block_{};
  std::size_t used_ = 64;
};

}  // namespace themis

#endif  // THEMIS_RNG_HPP_
