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

#ifndef CITYSIM_ERROR_H_
#define CITYSIM_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace citysim {

enum class ErrorCode {
  kPastTimestamp,
  kUnknownTarget,
  kUnknownLink,
  kEmptyPayload,
  kOversizedBody,
  kInvalidAddress,
  kBadChecksum,
  kMalformedField,
  kUnsupportedSentence,
  kUnknownCommand,
  kOutOfRange,
  kUnknownAppliance,
  kStoreFull,
  kDuplicateTemplate,
  kInvalidRoad,
  kDuplicatePlate,
  kEmptyPlate,
  kMalformedUid,
  kInvalidSlot,
  kUnknownDepartment,
  kEmptyMessage,
  kSchemaMismatch,
  kIoFailure,
  kParseError,
  kUnknownQueryPath,
  kUnknownTable,
  kRejectedAction,
  kConfigError,
};

// Stable kebab-case name used in diagnostics, reports and wire errors.
std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace citysim

#endif  // CITYSIM_ERROR_H_
