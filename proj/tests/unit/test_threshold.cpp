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

#include "support.hpp"

#include <cmath>

#include "themis/dkg.hpp"

using namespace themis;

namespace {

DkgResult run_dkg(std::uint32_t n, std::uint32_t k, std::uint64_t seed,
                  const DkgFaults& faults = {}) {
  std::vector<ParticipantId> ids;
  for (ParticipantId i = 1; i <= n; ++i) ids.push_back(i);
  SyncChannel ch;
  Rng rng(seed);
  return dkg_run(ids, k, ch, rng, faults);
}

// All size-`k` subsets of `items`.
template <class T>
std::vector<std::vector<T>> subsets(const std::vector<T>& items, std::size_t k) {
  std::vector<std::vector<T>> out;
  const std::size_t n = items.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    std::vector<T> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) s.push_back(items[i]);
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_SUITE("threshold") {

TEST_CASE("max_draw arithmetic") {
  CHECK(max_draw({10, 1, 100, 1000}) == 100);
  CHECK(max_draw({100, 1, 100, 1000}) == 1000);  // nu = D: everyone wins
  CHECK(max_draw({0, 1, 100, 1000}) == 0);
  CHECK(max_draw({50, 1, 1000, 1ull << 32}) == (50ull << 32) / 1000);
}

TEST_CASE("draw_winner uses strict inequality") {
  CHECK(draw_winner(0, 1));
  CHECK_FALSE(draw_winner(7, 7));
  CHECK(draw_winner(6, 7));
  CHECK_FALSE(draw_winner(0, 0));
}

TEST_CASE("pool params validation") {
  CHECK_NOTHROW(PoolParams({5, 3, 50, 1ull << 32}).validate());
  CHECK_ERROR(PoolParams({2, 3, 50, 1ull << 32}).validate(), ErrorCode::kConfigError);
  CHECK_ERROR(PoolParams({60, 3, 50, 1ull << 32}).validate(), ErrorCode::kConfigError);
  CHECK_ERROR(PoolParams({5, 0, 50, 1ull << 32}).validate(), ErrorCode::kConfigError);
}

TEST_CASE("lottery winner fraction within 3 sigma of nu/D") {
  Rng rng(30);
  const PoolParams pp{50, 1, 1000, 1ull << 32};
  const auto thr = max_draw(pp);
  std::uint64_t wins = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto kp = vrf_keygen(rng);
    wins += draw_winner(vrf_eval(kp.sk, Bytes{'e'}, pp.p).rand, thr);
  }
  const double sigma = std::sqrt(1000 * 0.05 * 0.95);
  CHECK(std::abs(static_cast<double>(wins) - 50.0) <= 3 * sigma);
}

TEST_CASE("DKG k=2 n=3: common key, every pair reconstructs") {
  const auto r = run_dkg(3, 2, 31);
  REQUIRE(r.views.size() == 3);
  for (const auto& [id, v] : r.views) CHECK(v == r.tpk);
  CHECK(r.excluded.empty());
  Rng rng(32);
  const auto ct = encrypt(r.tpk.pk, 5, rng);
  std::vector<ParticipantId> ids{1, 2, 3};
  for (const auto& pair : subsets(ids, 2)) {
    std::vector<PartialDecryption> ps;
    for (auto i : pair) ps.push_back(partial_decrypt(r.shares.at(i), ct, rng));
    CHECK(combine_partials(r.tpk, ps, ct) == Point::base_mul(5));
  }
}

TEST_CASE("combine matches decryption with the reconstructed secret") {
  const auto r = run_dkg(4, 3, 33);
  std::vector<ParticipantId> ids{1, 2, 4};
  const auto lambdas = lagrange_at_zero(ids);
  Scalar secret;
  for (std::size_t i = 0; i < ids.size(); ++i) secret += lambdas[i] * r.shares.at(ids[i]).share;
  CHECK(Point::base_mul(secret) == r.tpk.pk);
  Rng rng(34);
  const auto ct = encrypt(r.tpk.pk, 77, rng);
  std::vector<PartialDecryption> ps;
  for (auto i : ids) ps.push_back(partial_decrypt(r.shares.at(i), ct, rng));
  CHECK(combine_partials(r.tpk, ps, ct) == decrypt(secret, ct));
}

TEST_CASE("too few or forged partials") {
  const auto r = run_dkg(3, 2, 35);
  Rng rng(36);
  const auto ct = encrypt(r.tpk.pk, 5, rng);
  auto p1 = partial_decrypt(r.shares.at(1), ct, rng);
  const auto p2 = partial_decrypt(r.shares.at(2), ct, rng);
  CHECK(verify_partial(r.tpk, ct, p1));
  std::vector<PartialDecryption> one{p1};
  CHECK_ERROR(combine_partials(r.tpk, one, ct), ErrorCode::kInsufficientShares);
  std::vector<PartialDecryption> dup{p1, p1};
  CHECK_ERROR(combine_partials(r.tpk, dup, ct), ErrorCode::kDuplicateShareIndex);
  p1.share_point = p1.share_point + Point::generator();
  CHECK_FALSE(verify_partial(r.tpk, ct, p1));
  std::vector<PartialDecryption> forged{p1, p2};
  CHECK_ERROR(combine_partials(r.tpk, forged, ct), ErrorCode::kInvalidShareProof);
}

TEST_CASE("inconsistent sub-share: dealer excluded, run completes") {
  DkgFaults faults;
  faults.bad_subshare[2] = 3;  // dealer 2 sends a bad share to 3
  const auto r = run_dkg(4, 2, 37, faults);
  CHECK(r.excluded == std::vector<ParticipantId>{2});
  CHECK(r.attempts == 2);
  CHECK_FALSE(r.complaints.empty());
  CHECK(r.shares.count(2) == 0);
  for (const auto& [id, v] : r.views) CHECK(v == r.tpk);
  Rng rng(38);
  const auto ct = encrypt(r.tpk.pk, 9, rng);
  std::vector<PartialDecryption> ps{partial_decrypt(r.shares.at(1), ct, rng),
                                    partial_decrypt(r.shares.at(4), ct, rng)};
  CHECK(combine_partials(r.tpk, ps, ct) == Point::base_mul(9));
}

TEST_CASE("bad Feldman commitments are caught") {
  DkgFaults faults;
  faults.bad_feldman = {1};
  const auto r = run_dkg(3, 2, 39, faults);
  CHECK(r.excluded == std::vector<ParticipantId>{1});
  CHECK(r.views.size() == 2);
}

TEST_CASE("k = n = 1 degenerates to single-party keygen") {
  const auto r = run_dkg(1, 1, 40);
  CHECK(Point::base_mul(r.shares.at(1).share) == r.tpk.pk);
  Rng rng(41);
  const auto ct = encrypt(r.tpk.pk, 3, rng);
  CHECK(decrypt(r.shares.at(1).share, ct) == Point::base_mul(3));
}

TEST_CASE("DKG needs enough qualified parties") {
  DkgFaults faults;
  faults.bad_subshare[1] = 2;
  faults.bad_subshare[2] = 1;
  CHECK_ERROR(run_dkg(3, 2, 42, faults), ErrorCode::kComplaintAgainstDealer);
}

}  // TEST_SUITE
