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

#ifndef THEMIS_SIGNATURE_HPP_
#define THEMIS_SIGNATURE_HPP_

#include <string_view>

#include "themis/group.hpp"

namespace themis {

inline constexpr std::string_view kGenericSigDomain = "themis/v1/sig/generic";

/// Schnorr signature in (challenge, response) form.
struct Signature {
  Scalar challenge;
  Scalar response;

  friend bool operator==(const Signature&, const Signature&) = default;
};

ByteWriter& operator<<(ByteWriter& w, const Signature& sig);
Signature read_signature(ByteReader& r);

/// Nonce is derived from (sk, domain, msg), so signing is deterministic.
/// `domain` separates message types.
Signature sign(const Scalar& sk, ByteView msg,
               std::string_view domain = kGenericSigDomain);

/// Never throws; any mismatch returns false.
bool verify_sig(const Point& pk, ByteView msg, const Signature& sig,
                std::string_view domain = kGenericSigDomain);

}  // namespace themis

#endif  // THEMIS_SIGNATURE_HPP_
