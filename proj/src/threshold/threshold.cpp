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

#include "themis/threshold.hpp"

#include <algorithm>
#include <set>

#include "themis/error.hpp"

namespace themis {

Point ThresholdPublicKey::share_commitment(ParticipantId index) const {
  // sum_k V_k * index^k, Horner form.
  const Scalar x = Scalar::from_u64(index);
  Point acc;
  for (auto it = verification_vector.rbegin(); it != verification_vector.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

ByteWriter& operator<<(ByteWriter& w, const ThresholdPublicKey& tpk) {
  w << tpk.pk;
  w.u32(tpk.k).u32(static_cast<std::uint32_t>(tpk.verification_vector.size()));
  for (const auto& v : tpk.verification_vector) w << v;
  return w;
}

ThresholdPublicKey read_threshold_public_key(ByteReader& r) {
  ThresholdPublicKey tpk;
  tpk.pk = read_point(r);
  tpk.k = r.u32();
  const auto n = r.u32();
  require(n == tpk.k, ErrorCode::kInvalidEncoding, "verification vector length");
  for (std::uint32_t i = 0; i < n; ++i) tpk.verification_vector.push_back(read_point(r));
  require(!tpk.verification_vector.empty() && tpk.verification_vector[0] == tpk.pk,
          ErrorCode::kInvalidEncoding, "verification vector does not match pk");
  return tpk;
}

ByteWriter& operator<<(ByteWriter& w, const PartialDecryption& pd) {
  w.u32(pd.index);
  return w << pd.share_point << pd.proof;
}

PartialDecryption read_partial_decryption(ByteReader& r) {
  PartialDecryption pd;
  pd.index = r.u32();
  pd.share_point = read_point(r);
  pd.proof = read_dleq_proof(r);
  return pd;
}

PartialDecryption partial_decrypt(const KeyShare& share, const Ciphertext& ct, Rng& rng) {
  PartialDecryption pd;
  pd.index = share.index;
  pd.share_point = ct.c1 * share.share;
  pd.proof = dleq_prove(kPartialDecryptionTag, Point::generator(), share.commitment,
                        ct.c1, pd.share_point, share.share, rng);
  return pd;
}

bool verify_partial(const ThresholdPublicKey& tpk, const Ciphertext& ct,
                    const PartialDecryption& partial) {
  if (partial.index == 0) return false;
  return dleq_verify(kPartialDecryptionTag, Point::generator(),
                     tpk.share_commitment(partial.index), ct.c1, partial.share_point,
                     partial.proof);
}

std::vector<Scalar> lagrange_at_zero(std::span<const ParticipantId> indices) {
  std::vector<Scalar> out;
  out.reserve(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    require(indices[i] != 0, ErrorCode::kInvalidArgument, "index 0 is reserved");
    const Scalar xi = Scalar::from_u64(indices[i]);
    Scalar num = Scalar::from_u64(1);
    Scalar den = Scalar::from_u64(1);
    for (std::size_t j = 0; j < indices.size(); ++j) {
      if (i == j) continue;
      require(indices[i] != indices[j], ErrorCode::kDuplicateShareIndex);
      const Scalar xj = Scalar::from_u64(indices[j]);
      num *= xj;
      den *= xj - xi;
    }
    out.push_back(num * den.invert());
  }
  return out;
}

Point combine_partials(const ThresholdPublicKey& tpk,
                       std::span<const PartialDecryption> partials,
                       const Ciphertext& ct) {
  std::set<ParticipantId> seen;
  for (const auto& p : partials) {
    if (!seen.insert(p.index).second) {
      fail(ErrorCode::kDuplicateShareIndex, "index " + std::to_string(p.index));
    }
  }
  if (partials.size() < tpk.k) {
    fail(ErrorCode::kInsufficientShares, std::to_string(partials.size()) + " of " +
                                             std::to_string(tpk.k));
  }
  for (const auto& p : partials) {
    if (!verify_partial(tpk, ct, p)) {
      fail(ErrorCode::kInvalidShareProof, "index " + std::to_string(p.index));
    }
  }
  std::vector<ParticipantId> indices;
  for (const auto& p : partials) indices.push_back(p.index);
  const auto lambdas = lagrange_at_zero(indices);
  Point shared;
  for (std::size_t i = 0; i < partials.size(); ++i) {
    shared += partials[i].share_point * lambdas[i];
  }
  return ct.c2 - shared;
}

}  // namespace themis
