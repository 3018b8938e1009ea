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

#include "polsar/common/error.hpp"

namespace polsar {

int ExitCodeFor(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kIo:
      return 2;
    case ErrorCategory::kValidation:
      return 3;
    case ErrorCategory::kNumeric:
      return 4;
  }
  return 1;
}

}  // namespace polsar
