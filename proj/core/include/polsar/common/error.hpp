/* Copyright 2026 The polsar Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef POLSAR_COMMON_ERROR_HPP_
#define POLSAR_COMMON_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace polsar {

// Broad failure classes. The CLI maps them to exit codes 2, 3 and 4.
enum class ErrorCategory { kIo, kValidation, kNumeric };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what)
      : Error(ErrorCategory::kIo, what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorCategory::kValidation, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what)
      : Error(ErrorCategory::kNumeric, what) {}
};

// Header dimensions disagree with the bytes that follow.
class SizeMismatchError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Recognized container, unsupported revision.
class VersionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Process exit code for an error category (I/O=2, validation=3, numeric=4).
int ExitCodeFor(ErrorCategory category);

}  // namespace polsar

#endif  // POLSAR_COMMON_ERROR_HPP_
