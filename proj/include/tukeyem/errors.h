/*
 * Copyright 2026 The TukeyEM Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TUKEYEM_ERRORS_H_
#define TUKEYEM_ERRORS_H_

#include <stdexcept>
#include <string>

namespace tukeyem {

// Failure categories shared by the C++ core and the C API. The numeric values
// are part of the C ABI (see tukeyem.h) and must not be reordered.
enum class ErrorCode : int {
  kParameter = 1,
  kInsufficientData = 2,
  kUndefinedScore = 3,
  kDegenerateRegion = 4,
  kUnsupportedDimension = 5,
  kPrecondition = 6,
  kIngestion = 7,
  kIo = 8,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tukeyem

#endif  // TUKEYEM_ERRORS_H_
