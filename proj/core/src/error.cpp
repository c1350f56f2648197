// Copyright 2026 The Expelicit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "expelicit/error.hpp"

namespace expelicit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidGrid: return "invalid-grid";
    case ErrorCode::kInvalidConfig: return "invalid-config";
    case ErrorCode::kUnknownOutcome: return "unknown-outcome";
    case ErrorCode::kInvalidProbability: return "invalid-probability";
    case ErrorCode::kAnchorImmutable: return "anchor-immutable";
    case ErrorCode::kOutOfHull: return "out-of-hull";
    case ErrorCode::kInvalidToolbar: return "invalid-toolbar";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kInvalidPlan: return "invalid-plan";
    case ErrorCode::kScheduleStall: return "schedule-stall";
    case ErrorCode::kDegenerateBelief: return "degenerate-belief";
    case ErrorCode::kInvalidSample: return "invalid-sample";
    case ErrorCode::kDuplicateSession: return "duplicate-session";
    case ErrorCode::kUnknownSession: return "unknown-session";
    case ErrorCode::kExhausted: return "exhausted";
    case ErrorCode::kProtocolViolation: return "protocol-violation";
    case ErrorCode::kSuspended: return "suspended";
    case ErrorCode::kIncompatibleStudy: return "incompatible-study";
    case ErrorCode::kLogFormat: return "log-format";
    case ErrorCode::kReplayMismatch: return "replay-mismatch";
  }
  return "unknown";
}

}  // namespace expelicit
