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

#include <string>

#include "themis/error.hpp"
#include "themis/threshold.hpp"

namespace themis {

void PoolParams::validate() const {
  require(k >= 1, ErrorCode::kConfigError, "pool.k must be >= 1");
  require(k <= n, ErrorCode::kConfigError, "pool.k must not exceed pool.nu");
  require(draw_pool >= 1, ErrorCode::kConfigError, "pool.draw_pool must be >= 1");
  require(n <= draw_pool, ErrorCode::kConfigError, "pool.nu must not exceed pool.draw_pool");
  require(p >= 2, ErrorCode::kConfigError, "pool.p must be >= 2");
}

std::vector<std::string> PoolParams::warnings() const {
  std::vector<std::string> out;
  if (!(2 * k < n)) {
    out.push_back("pool.k=" + std::to_string(k) + " is not below nu/2=" +
                  std::to_string(n) + "/2; honest-majority assumption does not hold");
  }
  return out;
}

std::uint64_t max_draw(const PoolParams& params) {
  require(params.draw_pool >= 1, ErrorCode::kInvalidArgument, "draw pool must be >= 1");
  const u128 wide =
      static_cast<u128>(params.n) * params.p / params.draw_pool;
  return wide > ~std::uint64_t{0} ? ~std::uint64_t{0} : static_cast<std::uint64_t>(wide);
}

}  // namespace themis
