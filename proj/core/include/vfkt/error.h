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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "fmt/format.h"

namespace vfkt {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kParse,
  kNotFound,
  kDuplicate,
  kNotConverged,
  kDegenerate,
  kDiverged,
  kSchemaMismatch,
  kProtocol,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

template <typename... Args>
[[noreturn]] void Throw(ErrorCode code, fmt::format_string<Args...> format,
                        Args&&... args) {
  throw Error(code, fmt::format(format, std::forward<Args>(args)...));
}

}  // namespace vfkt

#define VFKT_ENFORCE(cond, code, ...)         \
  do {                                        \
    if (!(cond)) {                            \
      ::vfkt::Throw((code), __VA_ARGS__);     \
    }                                         \
  } while (false)
