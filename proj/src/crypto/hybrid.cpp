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

#include "themis/hybrid.hpp"

#include <sodium.h>

#include "themis/error.hpp"

namespace themis {
namespace {

static_assert(crypto_aead_xchacha20poly1305_ietf_KEYBYTES == 32);
static_assert(crypto_aead_xchacha20poly1305_ietf_NPUBBYTES == 24);

SymmetricKey hybrid_kdf(const Point& ephemeral, const Point& recipient,
                        const Point& shared) {
  ByteWriter w;
  w << ephemeral << recipient << shared;
  SymmetricKey k;
  k.bytes = hash32("themis/v1/hybrid-kdf", w.data());
  return k;
}

}  // namespace

ByteWriter& operator<<(ByteWriter& w, const SymmetricKey& k) { return w.fixed(k.bytes); }

ByteWriter& operator<<(ByteWriter& w, const SymCiphertext& c) {
  return w.fixed(c.nonce).bytes(c.body);
}

ByteWriter& operator<<(ByteWriter& w, const HybridCiphertext& c) {
  return w << c.ephemeral << c.payload;
}

SymmetricKey read_symmetric_key(ByteReader& r) {
  SymmetricKey k;
  k.bytes = r.array<32>();
  return k;
}

SymCiphertext read_sym_ciphertext(ByteReader& r) {
  SymCiphertext c;
  c.nonce = r.array<24>();
  c.body = r.bytes();
  return c;
}

HybridCiphertext read_hybrid_ciphertext(ByteReader& r) {
  HybridCiphertext c;
  c.ephemeral = read_point(r);
  c.payload = read_sym_ciphertext(r);
  return c;
}

SymmetricKey random_symmetric_key(Rng& rng) {
  SymmetricKey k;
  rng.fill(k.bytes);
  return k;
}

SymCiphertext sym_encrypt(const SymmetricKey& key, ByteView plaintext, Rng& rng) {
  SymCiphertext out;
  rng.fill(out.nonce);
  out.body.resize(plaintext.size() + crypto_aead_xchacha20poly1305_ietf_ABYTES);
  unsigned long long len = 0;
  crypto_aead_xchacha20poly1305_ietf_encrypt(out.body.data(), &len, plaintext.data(),
                                             plaintext.size(), nullptr, 0, nullptr,
                                             out.nonce.data(), key.bytes.data());
  out.body.resize(len);
  return out;
}

Bytes sym_decrypt(const SymmetricKey& key, const SymCiphertext& ct) {
  if (ct.body.size() < crypto_aead_xchacha20poly1305_ietf_ABYTES) {
    fail(ErrorCode::kAuthenticationFailure, "ciphertext too short");
  }
  Bytes out(ct.body.size() - crypto_aead_xchacha20poly1305_ietf_ABYTES);
  unsigned long long len = 0;
  if (crypto_aead_xchacha20poly1305_ietf_decrypt(out.data(), &len, nullptr,
                                                 ct.body.data(), ct.body.size(),
                                                 nullptr, 0, ct.nonce.data(),
                                                 key.bytes.data()) != 0) {
    fail(ErrorCode::kAuthenticationFailure);
  }
  out.resize(len);
  return out;
}

SymmetricKey dh_agree(const Scalar& my_sk, const Point& their_pk) {
  require(!their_pk.is_identity(), ErrorCode::kIdentityPoint);
  const Point shared = their_pk * my_sk;
  SymmetricKey k;
  k.bytes = hash32("themis/v1/dh-kdf", shared.bytes());
  return k;
}

HybridCiphertext hybrid_encrypt(const Point& pk, ByteView payload, Rng& rng) {
  require(!payload.empty(), ErrorCode::kInvalidArgument, "empty hybrid payload");
  require(!pk.is_identity(), ErrorCode::kIdentityPoint);
  const Scalar eph = Scalar::random(rng);
  HybridCiphertext out;
  out.ephemeral = Point::base_mul(eph);
  const auto key = hybrid_kdf(out.ephemeral, pk, pk * eph);
  out.payload = sym_encrypt(key, payload, rng);
  return out;
}

Bytes hybrid_decrypt(const Scalar& sk, const HybridCiphertext& hc) {
  const Point pk = Point::base_mul(sk);
  const auto key = hybrid_kdf(hc.ephemeral, pk, hc.ephemeral * sk);
  return sym_decrypt(key, hc.payload);
}

}  // namespace themis
