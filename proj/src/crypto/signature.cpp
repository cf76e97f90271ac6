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

#include "themis/signature.hpp"

#include "themis/error.hpp"

namespace themis {
namespace {

Scalar challenge_for(std::string_view domain, const Point& pk, const Point& nonce_point,
                     ByteView msg) {
  return Transcript(domain).append(pk).append(nonce_point).append(msg).challenge();
}

}  // namespace

ByteWriter& operator<<(ByteWriter& w, const Signature& sig) {
  return w << sig.challenge << sig.response;
}

Signature read_signature(ByteReader& r) {
  Signature sig;
  sig.challenge = read_scalar(r);
  sig.response = read_scalar(r);
  return sig;
}

Signature sign(const Scalar& sk, ByteView msg, std::string_view domain) {
  const Point pk = Point::base_mul(sk);
  const Scalar nonce = Transcript("themis/v1/sig/nonce")
                           .append(sk)
                           .append(as_bytes(domain))
                           .append(msg)
                           .challenge();
  const Point nonce_point = Point::base_mul(nonce);
  Signature sig;
  sig.challenge = challenge_for(domain, pk, nonce_point, msg);
  sig.response = nonce - sig.challenge * sk;
  return sig;
}

bool verify_sig(const Point& pk, ByteView msg, const Signature& sig,
                std::string_view domain) {
  try {
    // R = s*G + e*pk
    const Point nonce_point = Point::base_mul(sig.response) + pk * sig.challenge;
    return challenge_for(domain, pk, nonce_point, msg) == sig.challenge;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace themis
