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

#include "themis/proofs.hpp"

#include "themis/error.hpp"

namespace themis {
namespace {

constexpr std::string_view kVrfHashTag = "themis/v1/vrf/hash-to-point";
constexpr std::string_view kVrfNonceTag = "themis/v1/vrf/nonce";
constexpr std::string_view kVrfChallengeTag = "themis/v1/vrf/challenge";
constexpr std::string_view kVrfOutputTag = "themis/v1/vrf/output";

Scalar dleq_challenge(std::string_view tag, const Point& base1, const Point& image1,
                      const Point& base2, const Point& image2, const Point& a1,
                      const Point& a2) {
  return Transcript(tag)
      .append(base1)
      .append(image1)
      .append(base2)
      .append(image2)
      .append(a1)
      .append(a2)
      .challenge();
}

Point vrf_base(const Point& vrf_pk, ByteView seed) {
  ByteWriter w;
  w << vrf_pk;
  w.bytes(seed);
  return Point::hash_to_point(kVrfHashTag, w.data());
}

// Reduces the 512-bit output hash (little-endian) into [0, p).
std::uint64_t reduce_output(const Point& gamma, std::uint64_t p) {
  const auto digest = sha512({as_bytes(kVrfOutputTag), gamma.bytes()});
  u128 acc = 0;
  for (auto it = digest.rbegin(); it != digest.rend(); ++it) {
    acc = ((acc << 8) | *it) % p;
  }
  return static_cast<std::uint64_t>(acc);
}

Scalar vrf_challenge(const Point& pk, const Point& base, const Point& gamma,
                     const Point& u, const Point& v) {
  return Transcript(kVrfChallengeTag)
      .append(pk)
      .append(base)
      .append(gamma)
      .append(u)
      .append(v)
      .challenge();
}

}  // namespace

ByteWriter& operator<<(ByteWriter& w, const DleqProof& p) {
  return w << p.a1 << p.a2 << p.challenge << p.response;
}

DleqProof read_dleq_proof(ByteReader& r) {
  DleqProof p;
  p.a1 = read_point(r);
  p.a2 = read_point(r);
  p.challenge = read_scalar(r);
  p.response = read_scalar(r);
  return p;
}

DleqProof dleq_prove(std::string_view tag, const Point& base1, const Point& image1,
                     const Point& base2, const Point& image2, const Scalar& witness,
                     Rng& rng) {
  const Scalar w = Scalar::random(rng);
  DleqProof p;
  p.a1 = base1 * w;
  p.a2 = base2 * w;
  p.challenge = dleq_challenge(tag, base1, image1, base2, image2, p.a1, p.a2);
  p.response = w + p.challenge * witness;
  return p;
}

bool dleq_verify(std::string_view tag, const Point& base1, const Point& image1,
                 const Point& base2, const Point& image2, const DleqProof& proof) {
  try {
    if (dleq_challenge(tag, base1, image1, base2, image2, proof.a1, proof.a2) !=
        proof.challenge) {
      return false;
    }
    return base1 * proof.response == proof.a1 + image1 * proof.challenge &&
           base2 * proof.response == proof.a2 + image2 * proof.challenge;
  } catch (const Error&) {
    return false;
  }
}

DecryptionProof prove_decryption(const KeyPair& keypair, const Ciphertext& ct,
                                 const Point& plain_point, Rng& rng) {
  const Point shared = ct.c2 - plain_point;
  require(ct.c1 * keypair.sk == shared, ErrorCode::kMismatchedPlain,
          "plain point is not the decryption of the ciphertext");
  return dleq_prove(kDecryptionProofTag, Point::generator(), keypair.pk, ct.c1, shared,
                    keypair.sk, rng);
}

bool verify_decryption(const Point& pk, const Ciphertext& ct, const Point& plain_point,
                       const DecryptionProof& proof) {
  try {
    return dleq_verify(kDecryptionProofTag, Point::generator(), pk, ct.c1,
                       ct.c2 - plain_point, proof);
  } catch (const Error&) {
    return false;
  }
}

VrfKeyPair vrf_keygen(Rng& rng) {
  VrfKeyPair kp;
  kp.sk = Scalar::random(rng);
  kp.pk = Point::base_mul(kp.sk);
  return kp;
}

ByteWriter& operator<<(ByteWriter& w, const VrfOutput& out) {
  w.u64(out.rand);
  return w << out.proof.gamma << out.proof.challenge << out.proof.response;
}

VrfOutput read_vrf_output(ByteReader& r) {
  VrfOutput out;
  out.rand = r.u64();
  out.proof.gamma = read_point(r);
  out.proof.challenge = read_scalar(r);
  out.proof.response = read_scalar(r);
  return out;
}

VrfOutput vrf_eval(const Scalar& vrf_sk, ByteView seed, std::uint64_t p) {
  require(p >= 2, ErrorCode::kInvalidArgument, "vrf modulus must be >= 2");
  require(!seed.empty(), ErrorCode::kInvalidArgument, "empty vrf seed");
  const Point pk = Point::base_mul(vrf_sk);
  const Point base = vrf_base(pk, seed);
  VrfOutput out;
  out.proof.gamma = base * vrf_sk;
  const Scalar nonce = Transcript(kVrfNonceTag).append(vrf_sk).append(base).challenge();
  const Point u = Point::base_mul(nonce);
  const Point v = base * nonce;
  out.proof.challenge = vrf_challenge(pk, base, out.proof.gamma, u, v);
  out.proof.response = nonce + out.proof.challenge * vrf_sk;
  out.rand = reduce_output(out.proof.gamma, p);
  return out;
}

bool vrf_verify(const Point& vrf_pk, ByteView seed, const VrfOutput& out,
                std::uint64_t p) {
  if (p < 2 || seed.empty()) return false;
  try {
    const Point base = vrf_base(vrf_pk, seed);
    const Scalar& c = out.proof.challenge;
    const Point u = Point::base_mul(out.proof.response) - vrf_pk * c;
    const Point v = base * out.proof.response - out.proof.gamma * c;
    if (vrf_challenge(vrf_pk, base, out.proof.gamma, u, v) != c) return false;
    return reduce_output(out.proof.gamma, p) == out.rand;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace themis
