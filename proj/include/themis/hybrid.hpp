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

// Symmetric AEAD (XChaCha20-Poly1305), Diffie-Hellman key agreement and
// hybrid public-key encryption (ephemeral DH + AEAD).

#ifndef THEMIS_HYBRID_HPP_
#define THEMIS_HYBRID_HPP_

#include <array>

#include "themis/group.hpp"

namespace themis {

struct SymmetricKey {
  std::array<std::uint8_t, 32> bytes{};

  friend bool operator==(const SymmetricKey&, const SymmetricKey&) = default;
};

struct SymCiphertext {
  std::array<std::uint8_t, 24> nonce{};
  Bytes body;  // ciphertext || 16-byte tag

  friend bool operator==(const SymCiphertext&, const SymCiphertext&) = default;
};

struct HybridCiphertext {
  Point ephemeral;  // e*G; the wrapped key is KDF(e*pk)
  SymCiphertext payload;

  friend bool operator==(const HybridCiphertext&,
                         const HybridCiphertext&) = default;
};

ByteWriter& operator<<(ByteWriter& w, const SymmetricKey& k);
ByteWriter& operator<<(ByteWriter& w, const SymCiphertext& c);
ByteWriter& operator<<(ByteWriter& w, const HybridCiphertext& c);
SymmetricKey read_symmetric_key(ByteReader& r);
SymCiphertext read_sym_ciphertext(ByteReader& r);
HybridCiphertext read_hybrid_ciphertext(ByteReader& r);

SymmetricKey random_symmetric_key(Rng& rng);

SymCiphertext sym_encrypt(const SymmetricKey& key, ByteView plaintext,
                          Rng& rng);
/// Throws kAuthenticationFailure on tamper or wrong key.
Bytes sym_decrypt(const SymmetricKey& key, const SymCiphertext& ct);

/// Symmetric in its arguments: dh_agree(a, B) == dh_agree(b, A).
/// Throws kIdentityPoint for the identity.
SymmetricKey dh_agree(const Scalar& my_sk, const Point& their_pk);

/// Payload must be non-empty.
HybridCiphertext hybrid_encrypt(const Point& pk, ByteView payload, Rng& rng);
/// Throws kAuthenticationFailure on tamper or wrong key.
Bytes hybrid_decrypt(const Scalar& sk, const HybridCiphertext& hc);

}  // namespace themis

#endif  // THEMIS_HYBRID_HPP_
