// Copyright (C) 2026 The citysim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "citysim/error.h"

namespace citysim {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kPastTimestamp: return "past-timestamp";
    case ErrorCode::kUnknownTarget: return "unknown-target";
    case ErrorCode::kUnknownLink: return "unknown-link";
    case ErrorCode::kEmptyPayload: return "empty-payload";
    case ErrorCode::kOversizedBody: return "oversized-body";
    case ErrorCode::kInvalidAddress: return "invalid-address";
    case ErrorCode::kBadChecksum: return "bad-checksum";
    case ErrorCode::kMalformedField: return "malformed-field";
    case ErrorCode::kUnsupportedSentence: return "unsupported-sentence-type";
    case ErrorCode::kUnknownCommand: return "unknown-command";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kUnknownAppliance: return "unknown-appliance";
    case ErrorCode::kStoreFull: return "store-full";
    case ErrorCode::kDuplicateTemplate: return "duplicate-template";
    case ErrorCode::kInvalidRoad: return "invalid-road";
    case ErrorCode::kDuplicatePlate: return "duplicate-plate";
    case ErrorCode::kEmptyPlate: return "empty-plate";
    case ErrorCode::kMalformedUid: return "malformed-uid";
    case ErrorCode::kInvalidSlot: return "invalid-slot";
    case ErrorCode::kUnknownDepartment: return "unknown-department-number";
    case ErrorCode::kEmptyMessage: return "empty-message";
    case ErrorCode::kSchemaMismatch: return "schema-mismatch";
    case ErrorCode::kIoFailure: return "io-failure";
    case ErrorCode::kParseError: return "parse-error";
    case ErrorCode::kUnknownQueryPath: return "unknown-query-path";
    case ErrorCode::kUnknownTable: return "unknown-table";
    case ErrorCode::kRejectedAction: return "rejected-action";
    case ErrorCode::kConfigError: return "config-error";
  }
  return "unknown";
}

}  // namespace citysim
