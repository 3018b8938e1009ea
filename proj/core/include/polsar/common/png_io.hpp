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

#ifndef POLSAR_COMMON_PNG_IO_HPP_
#define POLSAR_COMMON_PNG_IO_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace polsar {

// 8-bit interleaved image; channels is 1 (gray) or 3 (RGB).
struct Image8 {
  int width = 0;
  int height = 0;
  int channels = 3;
  std::vector<std::uint8_t> pixels;
};

using Rgb = std::array<std::uint8_t, 3>;

void WritePng(const std::filesystem::path& path, const Image8& image);

// Palette-indexed PNG, one byte per pixel.
void WriteIndexedPng(const std::filesystem::path& path, int width, int height,
                     std::span<const std::uint8_t> indices,
                     std::span<const Rgb> palette);

// Reads any 8-bit PNG and expands it to RGB.
Image8 ReadPngRgb(const std::filesystem::path& path);

}  // namespace polsar

#endif  // POLSAR_COMMON_PNG_IO_HPP_
