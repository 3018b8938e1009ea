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

#ifndef POLSAR_COMMON_STACK_IO_HPP_
#define POLSAR_COMMON_STACK_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace polsar {

// Multi-channel real raster, channel-major then row-major.
struct FloatStack {
  std::string kind;
  int width = 0;
  int height = 0;
  std::vector<std::string> channels;
  std::vector<double> data;

  std::size_t PixelCount() const {
    return static_cast<std::size_t>(width) * height;
  }
  std::span<const double> Channel(std::size_t c) const {
    return std::span<const double>(data).subspan(c * PixelCount(),
                                                 PixelCount());
  }
};

// Raw little-endian float32 payload helpers.
void WriteF32Payload(const std::filesystem::path& path,
                     std::span<const double> values);
std::vector<double> ReadF32Payload(const std::filesystem::path& path,
                                   std::size_t expected_count);

// Writes <base>.json (manifest) and <base>.f32 (payload). Returns the
// manifest path.
std::filesystem::path WriteFloatStack(const std::filesystem::path& base,
                                      const FloatStack& stack);
FloatStack ReadFloatStack(const std::filesystem::path& manifest_path);

// Replaces the extension of |base| (if any) with |extension|.
std::filesystem::path WithExtension(std::filesystem::path base,
                                    const std::string& extension);

}  // namespace polsar

#endif  // POLSAR_COMMON_STACK_IO_HPP_
