// Copyright 2026 The quasinv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quasinv/error.hpp"

namespace quasinv {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::FloorTooLarge: return "FloorTooLarge";
    case ErrorCode::WindowTooLarge: return "WindowTooLarge";
    case ErrorCode::SiteOutOfRange: return "SiteOutOfRange";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::NotBijection: return "NotBijection";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::GroupNotClosed: return "GroupNotClosed";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::NotAState: return "NotAState";
    case ErrorCode::MissingIdentityEntry: return "MissingIdentityEntry";
    case ErrorCode::SingularEntry: return "SingularEntry";
    case ErrorCode::NotInCentralizer: return "NotInCentralizer";
    case ErrorCode::SingularKappa: return "SingularKappa";
    case ErrorCode::SingularWeight: return "SingularWeight";
    case ErrorCode::NotHermitianZ: return "NotHermitianZ";
    case ErrorCode::OrderExceeded: return "OrderExceeded";
    case ErrorCode::NotPositiveEntry: return "NotPositiveEntry";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::SingularCDA: return "SingularCDA";
    case ErrorCode::NotCommutingChain: return "NotCommutingChain";
    case ErrorCode::SupportTooLarge: return "SupportTooLarge";
    case ErrorCode::NotFaithful: return "NotFaithful";
    case ErrorCode::NotStrongCocycle: return "NotStrongCocycle";
    case ErrorCode::NotInvariantBase: return "NotInvariantBase";
    case ErrorCode::NotNested: return "NotNested";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

}  // namespace quasinv
