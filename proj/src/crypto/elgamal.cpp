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

#include "themis/elgamal.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "themis/error.hpp"

namespace themis {
namespace {

std::uint64_t point_key(const Point& p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p.bytes()[static_cast<std::size_t>(i)];
  return v;
}

std::uint64_t ceil_sqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r < n) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= n) --r;
  return r;
}

// Baby steps j*G for j in [0, width), keyed by the first 8 encoding bytes.
struct BabyTable {
  std::uint64_t width = 0;
  Point giant_stride;  // width*G
  std::unordered_map<std::uint64_t, std::uint64_t> index;
};

std::shared_ptr<const BabyTable> baby_table(std::uint64_t bound) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::shared_ptr<const BabyTable>> cache;

  std::lock_guard lock(mu);
  auto it = cache.find(bound);
  if (it != cache.end()) return it->second;

  auto table = std::make_shared<BabyTable>();
  table->width = std::max<std::uint64_t>(1, ceil_sqrt(bound));
  table->index.reserve(table->width);
  Point cur;
  for (std::uint64_t j = 0; j < table->width; ++j) {
    table->index.emplace(point_key(cur), j);
    cur += Point::generator();
  }
  table->giant_stride = cur;
  cache.emplace(bound, table);
  return table;
}

}  // namespace

ByteWriter& operator<<(ByteWriter& w, const Ciphertext& ct) {
  return w << ct.c1 << ct.c2;
}

Ciphertext read_ciphertext(ByteReader& r) {
  Ciphertext ct;
  ct.c1 = read_point(r);
  ct.c2 = read_point(r);
  return ct;
}

KeyPair keygen(ByteView seed) {
  require(!seed.empty(), ErrorCode::kInvalidArgument, "empty keygen seed");
  ByteWriter w;
  w.str("themis/v1/keygen").bytes(seed);
  KeyPair kp;
  kp.sk = Scalar::from_wide(sha512({w.data()}));
  kp.pk = Point::base_mul(kp.sk);
  return kp;
}

KeyPair keygen(Rng& rng) {
  std::array<std::uint8_t, 32> seed{};
  rng.fill(seed);
  return keygen(seed);
}

Ciphertext encrypt(const Point& pk, std::uint64_t m, const Scalar& r,
                   std::uint64_t bound) {
  if (m >= bound) {
    fail(ErrorCode::kPlaintextOutOfBound,
         std::to_string(m) + " >= " + std::to_string(bound));
  }
  return {Point::base_mul(r), Point::base_mul(m) + pk * r};
}

Ciphertext encrypt(const Point& pk, std::uint64_t m, Rng& rng, std::uint64_t bound) {
  return encrypt(pk, m, Scalar::random(rng), bound);
}

Point decrypt(const Scalar& sk, const Ciphertext& ct) { return ct.c2 - ct.c1 * sk; }

std::uint64_t recover_plaintext(const Point& point, std::uint64_t bound) {
  require(bound >= 1, ErrorCode::kInvalidArgument, "bound must be >= 1");
  auto table = baby_table(bound);
  const std::uint64_t giants = (bound + table->width - 1) / table->width;
  Point cur = point;
  for (std::uint64_t i = 0; i < giants; ++i) {
    auto it = table->index.find(point_key(cur));
    if (it != table->index.end()) {
      const std::uint64_t candidate = i * table->width + it->second;
      // The lookup key is a prefix, so confirm before returning.
      if (candidate < bound && Point::base_mul(candidate) == point) return candidate;
    }
    cur = cur - table->giant_stride;
  }
  fail(ErrorCode::kNoSolutionInBound, "bound " + std::to_string(bound));
}

Ciphertext add_ciphertexts(const Ciphertext& a, const Ciphertext& b) {
  return {a.c1 + b.c1, a.c2 + b.c2};
}

Ciphertext scalar_mul_ciphertext(std::uint64_t k, const Ciphertext& ct) {
  const auto s = Scalar::from_u64(k);
  return {ct.c1 * s, ct.c2 * s};
}

Ciphertext weighted_sum(std::span<const std::uint64_t> weights,
                        std::span<const Ciphertext> cts) {
  require(weights.size() == cts.size(), ErrorCode::kInvalidArgument,
          "weighted_sum length mismatch");
  Ciphertext acc;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] == 0) continue;
    acc = acc + (weights[i] == 1 ? cts[i] : scalar_mul_ciphertext(weights[i], cts[i]));
  }
  return acc;
}

}  // namespace themis
