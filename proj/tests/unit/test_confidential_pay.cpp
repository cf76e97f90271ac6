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

using namespace themis;

TEST_SUITE("confidential_pay") {

TEST_CASE("commitments open only with the right (r, l)") {
  Rng rng(50);
  CHECK(commit(0, Scalar{}).point.is_identity());
  const auto r = Scalar::random(rng);
  const auto c = commit(36, r);
  CHECK(open_verify(c, r, 36));
  CHECK_FALSE(open_verify(c, r, 35));
  CHECK_FALSE(open_verify(c, Scalar::random(rng), 36));
  CHECK_ERROR(commit(10, r, 10), ErrorCode::kPlaintextOutOfBound);
}

TEST_CASE("batch balance: 10 + 26 against 36") {
  Rng rng(51);
  const auto a = Address::from_label("a"), b = Address::from_label("b");
  std::vector<PaymentInstruction> pay{{a, 10, Scalar::random(rng)}, {b, 26, Scalar::random(rng)}};
  const auto batch = build_batch(pay, 36, rng);
  CHECK(verify_batch(batch, 36));
  CHECK_FALSE(verify_batch(batch, 35));
  CHECK_FALSE(verify_batch(batch, 37));
  CHECK_ERROR(build_batch(pay, 37, rng), ErrorCode::kBalanceMismatch);

  auto swapped = batch;
  swapped.notes[0].commitment = commit(10, Scalar::random(rng));
  CHECK_FALSE(verify_batch(swapped, 36));
  auto inflated = batch;
  inflated.notes[1].commitment.point = inflated.notes[1].commitment.point + Point::generator();
  CHECK_FALSE(verify_batch(inflated, 36));

  CHECK(verify_batch(build_batch({}, 0, rng), 0));
  CHECK(batch.notes[0].tx_ref != batch.notes[1].tx_ref);
}

TEST_CASE("property: random batches verify against their exact sum only") {
  Rng rng(52);
  for (int t = 0; t < 30; ++t) {
    std::vector<PaymentInstruction> pay;
    std::uint64_t total = 0;
    const auto n = rng.uniform(6);
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto amt = rng.uniform(1000);
      total += amt;
      pay.push_back({Address::from_label("r" + std::to_string(i)), amt, Scalar::random(rng)});
    }
    const auto batch = build_batch(pay, total, rng);
    CHECK(verify_batch(batch, total));
    CHECK_FALSE(verify_batch(batch, total + 1));
    for (std::size_t i = 0; i < pay.size(); ++i) {
      CHECK(open_verify(batch.notes[i].commitment, pay[i].blinding, pay[i].amount));
    }
    ByteWriter w;
    w << batch;
    ByteReader r(w.data());
    CHECK(read_settlement_batch(r) == batch);
  }
}

}  // TEST_SUITE
