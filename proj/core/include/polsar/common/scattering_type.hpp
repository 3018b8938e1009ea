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

#ifndef POLSAR_COMMON_SCATTERING_TYPE_HPP_
#define POLSAR_COMMON_SCATTERING_TYPE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace polsar {

// Primary scattering mechanism. Values double as label ids in primary-type
// rasters.
enum class PrimaryType : std::uint8_t { kOdd = 0, kDouble = 1, kVolume = 2 };

inline constexpr int kPrimaryTypeCount = 3;

std::string_view PrimaryTypeName(PrimaryType type);
std::optional<PrimaryType> ParsePrimaryType(std::string_view name);

}  // namespace polsar

#endif  // POLSAR_COMMON_SCATTERING_TYPE_HPP_
