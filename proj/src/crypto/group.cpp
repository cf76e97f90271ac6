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

#include "themis/group.hpp"

#include <sodium.h>

#include <algorithm>

#include "themis/error.hpp"

namespace themis {
namespace {

[[maybe_unused]] const bool kSodiumReady = [] { return sodium_init() >= 0; }();

}  // namespace

// ---- Scalar ----------------------------------------------------------------

Scalar Scalar::from_u64(std::uint64_t v) {
  Scalar s;
  for (int i = 0; i < 8; ++i) s.bytes_[i] = static_cast<std::uint8_t>(v >> (8 * i));
  return s;
}

Scalar Scalar::from_bytes(ByteView bytes) {
  require(bytes.size() == 32, ErrorCode::kInvalidEncoding, "scalar length");
  std::array<std::uint8_t, 64> wide{};
  std::copy(bytes.begin(), bytes.end(), wide.begin());
  Scalar s = from_wide(wide);
  if (!std::equal(bytes.begin(), bytes.end(), s.bytes_.begin())) {
    fail(ErrorCode::kInvalidEncoding, "non-canonical scalar");
  }
  return s;
}

Scalar Scalar::from_wide(const std::array<std::uint8_t, 64>& wide) {
  Scalar s;
  crypto_core_ristretto255_scalar_reduce(s.bytes_.data(), wide.data());
  return s;
}

Scalar Scalar::random(Rng& rng) {
  std::array<std::uint8_t, 64> wide{};
  rng.fill(wide);
  return from_wide(wide);
}

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar s;
  crypto_core_ristretto255_scalar_add(s.bytes_.data(), bytes_.data(), o.bytes_.data());
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar s;
  crypto_core_ristretto255_scalar_sub(s.bytes_.data(), bytes_.data(), o.bytes_.data());
  return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar s;
  crypto_core_ristretto255_scalar_mul(s.bytes_.data(), bytes_.data(), o.bytes_.data());
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s;
  crypto_core_ristretto255_scalar_negate(s.bytes_.data(), bytes_.data());
  return s;
}

Scalar Scalar::invert() const {
  Scalar s;
  if (crypto_core_ristretto255_scalar_invert(s.bytes_.data(), bytes_.data()) != 0) {
    fail(ErrorCode::kInvalidArgument, "inverse of zero");
  }
  return s;
}

bool Scalar::is_zero() const {
  return sodium_is_zero(bytes_.data(), bytes_.size()) == 1;
}

// ---- Point -----------------------------------------------------------------

const Point& Point::generator() {
  static const Point g = base_mul(Scalar::from_u64(1));
  return g;
}

const Point& Point::second_generator() {
  static const Point h = hash_to_point("themis/v1/generator-H", {});
  return h;
}

Point Point::from_bytes(ByteView bytes) {
  require(bytes.size() == kEncodedSize, ErrorCode::kInvalidEncoding, "point length");
  if (crypto_core_ristretto255_is_valid_point(bytes.data()) != 1 &&
      sodium_is_zero(bytes.data(), bytes.size()) != 1) {
    fail(ErrorCode::kInvalidEncoding, "not a ristretto255 encoding");
  }
  Point p;
  std::copy(bytes.begin(), bytes.end(), p.enc_.begin());
  return p;
}

Point Point::hash_to_point(std::string_view tag, ByteView data) {
  ByteWriter w;
  w.str(tag);
  auto wide = sha512({w.data(), data});
  Point p;
  crypto_core_ristretto255_from_hash(p.enc_.data(), wide.data());
  return p;
}

Point Point::base_mul(const Scalar& k) {
  Point p;
  if (k.is_zero()) return p;
  // A -1 return only signals an identity result; the output is zeroed then.
  if (crypto_scalarmult_ristretto255_base(p.enc_.data(), k.bytes().data()) != 0) {
    p.enc_.fill(0);
  }
  return p;
}

Point Point::operator+(const Point& o) const {
  Point p;
  if (is_identity()) return o;
  if (o.is_identity()) return *this;
  if (crypto_core_ristretto255_add(p.enc_.data(), enc_.data(), o.enc_.data()) != 0) {
    fail(ErrorCode::kInvalidEncoding, "point add");
  }
  return p;
}

Point Point::operator-(const Point& o) const {
  Point p;
  if (o.is_identity()) return *this;
  if (crypto_core_ristretto255_sub(p.enc_.data(), enc_.data(), o.enc_.data()) != 0) {
    fail(ErrorCode::kInvalidEncoding, "point sub");
  }
  return p;
}

Point Point::operator*(const Scalar& k) const {
  Point p;
  if (k.is_zero() || is_identity()) return p;
  if (crypto_scalarmult_ristretto255(p.enc_.data(), k.bytes().data(), enc_.data()) != 0) {
    p.enc_.fill(0);
  }
  return p;
}

bool Point::is_identity() const {
  return sodium_is_zero(enc_.data(), enc_.size()) == 1;
}

// ---- encoding ----------------------------------------------------------------

ByteWriter& operator<<(ByteWriter& w, const Scalar& s) { return w.fixed(s.bytes()); }
ByteWriter& operator<<(ByteWriter& w, const Point& p) { return w.fixed(p.bytes()); }

Scalar read_scalar(ByteReader& r) { return Scalar::from_bytes(r.fixed(32)); }
Point read_point(ByteReader& r) { return Point::from_bytes(r.fixed(kEncodedSize)); }

// ---- Transcript --------------------------------------------------------------

Transcript::Transcript(std::string_view tag) { w_.str(tag); }

Transcript& Transcript::append(const Point& p) {
  w_.bytes(p.bytes());
  return *this;
}

Transcript& Transcript::append(const Scalar& s) {
  w_.bytes(s.bytes());
  return *this;
}

Transcript& Transcript::append(std::uint64_t v) {
  ByteWriter tmp;
  tmp.u64(v);
  w_.bytes(tmp.data());
  return *this;
}

Transcript& Transcript::append(ByteView data) {
  w_.bytes(data);
  return *this;
}

Scalar Transcript::challenge() const {
  return Scalar::from_wide(sha512({w_.data()}));
}

}  // namespace themis
