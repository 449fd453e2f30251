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

#include "tukeyem/errors.h"

namespace tukeyem {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParameter:
      return "parameter error";
    case ErrorCode::kInsufficientData:
      return "insufficient data";
    case ErrorCode::kUndefinedScore:
      return "undefined score";
    case ErrorCode::kDegenerateRegion:
      return "degenerate region";
    case ErrorCode::kUnsupportedDimension:
      return "unsupported dimension";
    case ErrorCode::kPrecondition:
      return "precondition violated";
    case ErrorCode::kIngestion:
      return "ingestion error";
    case ErrorCode::kIo:
      return "I/O error";
  }
  return "unknown error";
}

}  // namespace tukeyem
