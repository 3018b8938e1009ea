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

#ifndef POLSAR_CLUSTER_LABEL_RASTER_HPP_
#define POLSAR_CLUSTER_LABEL_RASTER_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace polsar {

// Reserved label carried by invalid pixels.
inline constexpr std::uint8_t kInvalidLabel = 255;

// Per-pixel small-integer class ids. Valid pixels carry labels in
// [0, class_count); invalid pixels carry kInvalidLabel.
struct LabelRaster {
  int width = 0;
  int height = 0;
  int class_count = 0;
  std::vector<std::uint8_t> label;
  std::vector<std::string> class_names;  // optional, class_count entries

  static LabelRaster Filled(int width, int height, int class_count,
                            std::uint8_t value);

  std::size_t PixelCount() const {
    return static_cast<std::size_t>(width) * height;
  }
  bool valid(std::size_t i) const { return label[i] != kInvalidLabel; }
  std::size_t ValidCount() const;

  // Throws ValidationError on a broken invariant.
  void Validate() const;

  bool operator==(const LabelRaster&) const = default;
};

// <base>.json names the classes; <base>.u8 holds width*height label bytes.
std::filesystem::path WriteLabelRaster(const std::filesystem::path& base,
                                       const LabelRaster& raster);
LabelRaster ReadLabelRaster(const std::filesystem::path& manifest_path);

}  // namespace polsar

#endif  // POLSAR_CLUSTER_LABEL_RASTER_HPP_
