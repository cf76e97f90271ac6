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

#ifndef THEMIS_ERROR_HPP_
#define THEMIS_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace themis {

enum class ErrorCode {
  // group / encoding
  kInvalidEncoding,
  kPlaintextOutOfBound,
  kNoSolutionInBound,
  kAuthenticationFailure,
  kIdentityPoint,
  kInvalidArgument,
  // proofs
  kMismatchedPlain,
  // threshold
  kComplaintAgainstDealer,
  kInsufficientShares,
  kInvalidShareProof,
  kDuplicateShareIndex,
  kInsufficientWinners,
  // confidential payments
  kBalanceMismatch,
  // ledger
  kBadNonce,
  kUnknownSender,
  kUnknownContract,
  kUnknownFunction,
  kDuplicateTxRef,
  // contracts
  kNotCF,
  kNotAuthorized,
  kAlreadyInitialized,
  kNotInitialized,
  kIndexOutOfRange,
  kBadSignature,
  kBadProof,
  kLengthMismatch,
  kUnknownUser,
  kAlreadyClaimed,
  kDuplicateRequest,
  kCapExceeded,
  kWrongStakeAmount,
  kUnknownAdvertiser,
  kAlreadyStaked,
  kOverdraw,
  kInsufficientBalance,
  kUnknownTxRef,
  kUnknownAddress,
  kCampaignActive,
  kCampaignFailed,
  kCampaignClosed,
  kRefundsNotExecuted,
  kAnalyticsPending,
  kAnalyticsFrozen,
  kPoolNotReady,
  kLotteryLost,
  kDkgDisagreement,
  kPolicyMissing,
  kBadOpening,
  // actors / harness
  kPolicyMismatch,
  kConfigError,
};

std::string_view error_name(ErrorCode code);

/// Single exception type for the library; `code()` carries the failure kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& detail = {});

inline void require(bool condition, ErrorCode code,
                    const std::string& detail = {}) {
  if (!condition) fail(code, detail);
}

}  // namespace themis

#endif  // THEMIS_ERROR_HPP_
