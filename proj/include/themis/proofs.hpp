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

// Sigma-protocol proofs made non-interactive with Fiat-Shamir.
//
// Serialized layouts (fixed, in this order):
//   DleqProof  : A1 (32) | A2 (32) | challenge (32) | response (32)   = 128 B
//   VrfProof   : gamma (32) | challenge (32) | response (32)          =  96 B
//   VrfOutput  : rand (u64 LE) | VrfProof                             = 104 B

#ifndef THEMIS_PROOFS_HPP_
#define THEMIS_PROOFS_HPP_

#include <cstdint>
#include <string_view>

#include "themis/elgamal.hpp"

namespace themis {

inline constexpr std::string_view kDecryptionProofTag = "themis/v1/proof/decryption";
inline constexpr std::string_view kPartialDecryptionTag = "themis/v1/proof/partial-decryption";

/// Chaum-Pedersen proof that log_{base1}(image1) == log_{base2}(image2).
struct DleqProof {
  Point a1;  // w*base1
  Point a2;  // w*base2
  Scalar challenge;
  Scalar response;  // w + c*x

  friend bool operator==(const DleqProof&, const DleqProof&) = default;
};

/// Proof of correct ElGamal decryption.
using DecryptionProof = DleqProof;

ByteWriter& operator<<(ByteWriter& w, const DleqProof& p);
DleqProof read_dleq_proof(ByteReader& r);

DleqProof dleq_prove(std::string_view tag, const Point& base1, const Point& image1,
                     const Point& base2, const Point& image2, const Scalar& witness,
                     Rng& rng);
bool dleq_verify(std::string_view tag, const Point& base1, const Point& image1,
                 const Point& base2, const Point& image2, const DleqProof& proof);

/// Proves pk = sk*G and c2 - plain_point = sk*c1. Throws kMismatchedPlain if
/// plain_point is not the decryption of ct under keypair.sk.
DecryptionProof prove_decryption(const KeyPair& keypair, const Ciphertext& ct,
                                 const Point& plain_point, Rng& rng);
/// Never throws.
bool verify_decryption(const Point& pk, const Ciphertext& ct, const Point& plain_point,
                       const DecryptionProof& proof);

// ---- VRF ----------------------------------------------------------------------

struct VrfKeyPair {
  Scalar sk;
  Point pk;
};

VrfKeyPair vrf_keygen(Rng& rng);

struct VrfProof {
  Point gamma;  // sk * hash_to_point(pk, seed)
  Scalar challenge;
  Scalar response;

  friend bool operator==(const VrfProof&, const VrfProof&) = default;
};

struct VrfOutput {
  std::uint64_t rand = 0;  // in [0, p)
  VrfProof proof;

  friend bool operator==(const VrfOutput&, const VrfOutput&) = default;
};

ByteWriter& operator<<(ByteWriter& w, const VrfOutput& out);
VrfOutput read_vrf_output(ByteReader& r);

/// Deterministic in (sk, seed). Requires p >= 2 and a non-empty seed.
VrfOutput vrf_eval(const Scalar& vrf_sk, ByteView seed, std::uint64_t p);
/// Never throws.
bool vrf_verify(const Point& vrf_pk, ByteView seed, const VrfOutput& out,
                std::uint64_t p);

}  // namespace themis

#endif  // THEMIS_PROOFS_HPP_
