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

#include "themis/error.hpp"

namespace themis {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidEncoding: return "InvalidEncoding";
    case ErrorCode::kPlaintextOutOfBound: return "PlaintextOutOfBound";
    case ErrorCode::kNoSolutionInBound: return "NoSolutionInBound";
    case ErrorCode::kAuthenticationFailure: return "AuthenticationFailure";
    case ErrorCode::kIdentityPoint: return "IdentityPoint";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMismatchedPlain: return "MismatchedPlain";
    case ErrorCode::kComplaintAgainstDealer: return "ComplaintAgainstDealer";
    case ErrorCode::kInsufficientShares: return "InsufficientShares";
    case ErrorCode::kInvalidShareProof: return "InvalidShareProof";
    case ErrorCode::kDuplicateShareIndex: return "DuplicateShareIndex";
    case ErrorCode::kInsufficientWinners: return "InsufficientWinners";
    case ErrorCode::kBalanceMismatch: return "BalanceMismatch";
    case ErrorCode::kBadNonce: return "BadNonce";
    case ErrorCode::kUnknownSender: return "UnknownSender";
    case ErrorCode::kUnknownContract: return "UnknownContract";
    case ErrorCode::kUnknownFunction: return "UnknownFunction";
    case ErrorCode::kDuplicateTxRef: return "DuplicateTxRef";
    case ErrorCode::kNotCF: return "NotCF";
    case ErrorCode::kNotAuthorized: return "NotAuthorized";
    case ErrorCode::kAlreadyInitialized: return "AlreadyInitialized";
    case ErrorCode::kNotInitialized: return "NotInitialized";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kBadSignature: return "BadSignature";
    case ErrorCode::kBadProof: return "BadProof";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kUnknownUser: return "UnknownUser";
    case ErrorCode::kAlreadyClaimed: return "AlreadyClaimed";
    case ErrorCode::kDuplicateRequest: return "DuplicateRequest";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kWrongStakeAmount: return "WrongStakeAmount";
    case ErrorCode::kUnknownAdvertiser: return "UnknownAdvertiser";
    case ErrorCode::kAlreadyStaked: return "AlreadyStaked";
    case ErrorCode::kOverdraw: return "Overdraw";
    case ErrorCode::kInsufficientBalance: return "InsufficientBalance";
    case ErrorCode::kUnknownTxRef: return "UnknownTxRef";
    case ErrorCode::kUnknownAddress: return "UnknownAddress";
    case ErrorCode::kCampaignActive: return "CampaignActive";
    case ErrorCode::kCampaignFailed: return "CampaignFailed";
    case ErrorCode::kCampaignClosed: return "CampaignClosed";
    case ErrorCode::kRefundsNotExecuted: return "RefundsNotExecuted";
    case ErrorCode::kAnalyticsPending: return "AnalyticsPending";
    case ErrorCode::kAnalyticsFrozen: return "AnalyticsFrozen";
    case ErrorCode::kPoolNotReady: return "PoolNotReady";
    case ErrorCode::kLotteryLost: return "LotteryLost";
    case ErrorCode::kDkgDisagreement: return "DkgDisagreement";
    case ErrorCode::kPolicyMissing: return "PolicyMissing";
    case ErrorCode::kBadOpening: return "BadOpening";
    case ErrorCode::kPolicyMismatch: return "PolicyMismatch";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(detail.empty()
                             ? std::string(error_name(code))
                             : std::string(error_name(code)) + ": " + detail),
      code_(code) {}

void fail(ErrorCode code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace themis
