// Copyright 2026 The vfkt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vfkt/error.h"

namespace vfkt {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid_argument";
    case ErrorCode::kDimensionMismatch:
      return "dimension_mismatch";
    case ErrorCode::kParse:
      return "parse_error";
    case ErrorCode::kNotFound:
      return "not_found";
    case ErrorCode::kDuplicate:
      return "duplicate";
    case ErrorCode::kNotConverged:
      return "not_converged";
    case ErrorCode::kDegenerate:
      return "degenerate";
    case ErrorCode::kDiverged:
      return "diverged";
    case ErrorCode::kSchemaMismatch:
      return "schema_mismatch";
    case ErrorCode::kProtocol:
      return "protocol_error";
    case ErrorCode::kIo:
      return "io_error";
  }
  return "unknown";
}

}  // namespace vfkt
