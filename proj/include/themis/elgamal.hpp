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

// Exponential ElGamal: the message lives in the exponent, so ciphertexts add
// and scale homomorphically and decryption yields m*G, which is decoded back
// to an integer with a bounded baby-step/giant-step search.

#ifndef THEMIS_ELGAMAL_HPP_
#define THEMIS_ELGAMAL_HPP_

#include <cstdint>
#include <span>

#include "themis/group.hpp"

namespace themis {

/// Plaintext bound for per-user reward aggregates.
inline constexpr std::uint64_t kRewardBound = 1ull << 20;
/// Plaintext bound for campaign analytics counters (and the default for
/// encrypt()).
inline constexpr std::uint64_t kAnalyticsBound = 1ull << 32;

struct KeyPair {
  Scalar sk;
  Point pk;

  friend bool operator==(const KeyPair&, const KeyPair&) = default;
};

struct Ciphertext {
  Point c1;  // r*G
  Point c2;  // m*G + r*pk

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

ByteWriter& operator<<(ByteWriter& w, const Ciphertext& ct);
Ciphertext read_ciphertext(ByteReader& r);

/// Deterministic key derivation from a non-empty seed.
KeyPair keygen(ByteView seed);
KeyPair keygen(Rng& rng);

Ciphertext encrypt(const Point& pk, std::uint64_t m, const Scalar& r,
                   std::uint64_t bound = kAnalyticsBound);
Ciphertext encrypt(const Point& pk, std::uint64_t m, Rng& rng,
                   std::uint64_t bound = kAnalyticsBound);

/// Returns m*G; the message is still in the exponent.
Point decrypt(const Scalar& sk, const Ciphertext& ct);

/// Finds m in [0, bound) with m*G == point. Throws kNoSolutionInBound.
/// Baby-step tables are built once per bound and shared across threads.
std::uint64_t recover_plaintext(const Point& point, std::uint64_t bound);

Ciphertext add_ciphertexts(const Ciphertext& a, const Ciphertext& b);
Ciphertext scalar_mul_ciphertext(std::uint64_t k, const Ciphertext& ct);

inline Ciphertext operator+(const Ciphertext& a, const Ciphertext& b) {
  return add_ciphertexts(a, b);
}

/// Encryption of zero with zero randomness: (identity, identity).
inline Ciphertext zero_ciphertext() { return {}; }

/// Homomorphic dot product: sum_i weights[i] * cts[i].
Ciphertext weighted_sum(std::span<const std::uint64_t> weights,
                        std::span<const Ciphertext> cts);

}  // namespace themis

#endif  // THEMIS_ELGAMAL_HPP_
