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

#include "polsar/common/scattering_type.hpp"

namespace polsar {

std::string_view PrimaryTypeName(PrimaryType type) {
  switch (type) {
    case PrimaryType::kOdd:
      return "odd";
    case PrimaryType::kDouble:
      return "double";
    case PrimaryType::kVolume:
      return "volume";
  }
  return "unknown";
}

std::optional<PrimaryType> ParsePrimaryType(std::string_view name) {
  if (name == "odd") return PrimaryType::kOdd;
  if (name == "double") return PrimaryType::kDouble;
  if (name == "volume") return PrimaryType::kVolume;
  return std::nullopt;
}

}  // namespace polsar
