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

// Consensus-pool machinery: lottery threshold, threshold keys, verifiable
// partial decryption and Lagrange combination.

#ifndef THEMIS_THRESHOLD_HPP_
#define THEMIS_THRESHOLD_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "themis/proofs.hpp"

namespace themis {

struct PoolParams {
  std::uint64_t n = 0;  // expected number of winners
  std::uint64_t k = 1;  // decryption threshold
  std::uint64_t draw_pool = 1;  // number of registrants D
  std::uint64_t p = 1ull << 32;  // VRF output space

  /// Throws kConfigError for hard violations.
  void validate() const;
  /// Soft findings, e.g. a threshold outside the honest-majority regime.
  std::vector<std::string> warnings() const;
};

/// floor(n * p / D): registrants whose VRF output is below this win.
std::uint64_t max_draw(const PoolParams& params);

inline bool draw_winner(std::uint64_t rand, std::uint64_t threshold) {
  return rand < threshold;
}

using ParticipantId = std::uint32_t;  // 1-based evaluation point

struct KeyShare {
  ParticipantId index = 0;
  Scalar share;
  Point commitment;  // share*G
};

struct ThresholdPublicKey {
  Point pk;
  std::uint32_t k = 1;
  /// Feldman coefficients of the joint polynomial; entry 0 equals pk.
  std::vector<Point> verification_vector;

  /// share_j * G, computed from the verification vector.
  Point share_commitment(ParticipantId index) const;

  friend bool operator==(const ThresholdPublicKey&, const ThresholdPublicKey&) = default;
};

ByteWriter& operator<<(ByteWriter& w, const ThresholdPublicKey& tpk);
ThresholdPublicKey read_threshold_public_key(ByteReader& r);

struct PartialDecryption {
  ParticipantId index = 0;
  Point share_point;  // share*c1
  DleqProof proof;

  friend bool operator==(const PartialDecryption&, const PartialDecryption&) = default;
};

ByteWriter& operator<<(ByteWriter& w, const PartialDecryption& pd);
PartialDecryption read_partial_decryption(ByteReader& r);

PartialDecryption partial_decrypt(const KeyShare& share, const Ciphertext& ct, Rng& rng);

bool verify_partial(const ThresholdPublicKey& tpk, const Ciphertext& ct,
                    const PartialDecryption& partial);

/// Lagrange coefficients at x = 0 for the given distinct, non-zero indices.
std::vector<Scalar> lagrange_at_zero(std::span<const ParticipantId> indices);

/// Interpolates m*G from at least `tpk.k` verified partials.
/// Errors: kDuplicateShareIndex, kInvalidShareProof, kInsufficientShares.
Point combine_partials(const ThresholdPublicKey& tpk,
                       std::span<const PartialDecryption> partials,
                       const Ciphertext& ct);

}  // namespace themis

#endif  // THEMIS_THRESHOLD_HPP_
