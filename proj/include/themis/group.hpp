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

// Prime-order group used throughout: ristretto255 (order
// l = 2^252 + 27742317777372353535851937790883648493) via libsodium.
//
// Canonical encodings (all hashing is over these bytes):
//   Point  - 32-byte compressed ristretto255 encoding; identity is 32 zeros.
//   Scalar - 32-byte little-endian integer, fully reduced mod l.

#ifndef THEMIS_GROUP_HPP_
#define THEMIS_GROUP_HPP_

#include <array>
#include <cstdint>
#include <string_view>

#include "themis/bytes.hpp"
#include "themis/rng.hpp"

namespace themis {

inline constexpr std::size_t kEncodedSize = 32;

/// Integer modulo the group order.
class Scalar {
 public:
  Scalar() = default;  // zero

  static Scalar from_u64(std::uint64_t v);
  /// Rejects non-canonical (>= l) encodings.
  static Scalar from_bytes(ByteView bytes);
  /// Wide reduction of a 64-byte hash output.
  static Scalar from_wide(const std::array<std::uint8_t, 64>& wide);
  static Scalar random(Rng& rng);

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  /// Multiplicative inverse; zero throws kInvalidArgument.
  Scalar invert() const;

  bool is_zero() const;
  const std::array<std::uint8_t, 32>& bytes() const { return bytes_; }

  friend bool operator==(const Scalar&, const Scalar&) = default;

 private:
  std::array<std::uint8_t, 32> bytes_{};
};

/// Element of the ristretto255 group, held in canonical encoded form.
class Point {
 public:
  Point() = default;  // identity

  static Point identity() { return Point{}; }
  static const Point& generator();
  /// Second generator with unknown discrete log relative to G.
  static const Point& second_generator();
  /// Validates the encoding; invalid bytes throw kInvalidEncoding.
  static Point from_bytes(ByteView bytes);
  /// Hash-to-group with a domain-separation tag.
  static Point hash_to_point(std::string_view tag, ByteView data);
  static Point base_mul(const Scalar& k);
  static Point base_mul(std::uint64_t k) { return base_mul(Scalar::from_u64(k)); }

  Point operator+(const Point& o) const;
  Point operator-(const Point& o) const;
  Point operator*(const Scalar& k) const;
  Point& operator+=(const Point& o) { return *this = *this + o; }

  bool is_identity() const;
  const std::array<std::uint8_t, 32>& bytes() const { return enc_; }

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;

 private:
  std::array<std::uint8_t, 32> enc_{};
};

inline Point operator*(const Scalar& k, const Point& p) { return p * k; }

ByteWriter& operator<<(ByteWriter& w, const Scalar& s);
ByteWriter& operator<<(ByteWriter& w, const Point& p);
Scalar read_scalar(ByteReader& r);
Point read_point(ByteReader& r);

/// Fiat-Shamir transcript: a domain tag followed by length-prefixed items,
/// reduced to a scalar through SHA-512.
class Transcript {
 public:
  explicit Transcript(std::string_view tag);

  Transcript& append(const Point& p);
  Transcript& append(const Scalar& s);
  Transcript& append(std::uint64_t v);
  Transcript& append(ByteView data);

  Scalar challenge() const;

 private:
  ByteWriter w_;
};

}  // namespace themis

#endif  // THEMIS_GROUP_HPP_
