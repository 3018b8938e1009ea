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

#ifndef POLSAR_MVD_MVD_HPP_
#define POLSAR_MVD_MVD_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polsar/cluster/label_raster.hpp"
#include "polsar/common/png_io.hpp"
#include "polsar/common/scattering_type.hpp"
#include "polsar/common/tensor3.hpp"

namespace polsar {

enum class MvdClassKind { kScattering, kMixed, kOther };

struct MvdLegendEntry {
  std::string name;
  MvdClassKind kind = MvdClassKind::kScattering;
  std::optional<PrimaryType> primary_type;  // set for kScattering only
  int tier = 0;                             // SPAN tier within its hue group
  Rgb color{};
};

// Microwave-vision raster: per-pixel class index plus legend. Legend order is
// the class order, the palette order and the one-hot channel order.
struct MvdRaster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> class_index;
  std::vector<MvdLegendEntry> legend;

  int class_count() const { return static_cast<int>(legend.size()); }
  std::vector<Rgb> Palette() const;
  std::size_t PixelCount() const {
    return static_cast<std::size_t>(width) * height;
  }
};

// Groups of source (sub-class) ids forming each output scattering class.
// Every source class must appear in exactly one group and a group may not mix
// primary types.
struct MergeMap {
  std::vector<std::vector<int>> groups;
};

struct ReclusterOptions {
  // A valid pixel is 'mixed' when its runner-up/best Wishart likelihood ratio
  // exceeds this.
  double mixed_threshold = 0.98;
};

// Maps SPAN-tiered scattering classes (2 n_sub + 1 classes as produced by
// SubclassBySpan) onto MVD classes: one class per merge group (identity when
// |merge_map| is empty), then 'mixed', then 'other'. Invalid pixels go to
// 'other'. |runner_up_ratio| may be empty, which disables 'mixed'
// assignment (the class is still present in the legend).
// Throws ValidationError for merge maps naming unknown source classes.
MvdRaster Recluster(const LabelRaster& subclasses,
                    std::span<const double> runner_up_ratio = {},
                    const std::optional<MergeMap>& merge_map = std::nullopt,
                    const ReclusterOptions& options = {});

// Default palette colour for a scattering class: hue 210 (odd), 0 (double),
// 120 (volume); lightness spread 35..75% over |tiers_in_group| tiers (55%
// for a single tier). Mixed is 50% gray, other is black.
Rgb ScatteringColor(PrimaryType type, int tier, int tiers_in_group);
Rgb HslToRgb(double hue_deg, double saturation, double lightness);

// Per-pixel RGB rendering through the palette. Throws ValidationError for
// more than 256 classes.
Image8 EncodePalette(const MvdRaster& mvd);

// C x H x W one-hot tensor, channel order = legend order.
Tensor3 OneHot(const MvdRaster& mvd);

// Legend document (JSON) plus swatch image with one row per class.
void RenderLegend(const MvdRaster& mvd, const std::filesystem::path& json_path,
                  const std::filesystem::path& swatch_png_path);
Image8 LegendSwatch(const MvdRaster& mvd);
inline constexpr int kSwatchWidth = 48;
inline constexpr int kSwatchRowHeight = 12;

// Indexed raster file: "MVD1", u16 width, u16 height, u8 class count,
// class_count x 3 palette bytes, then width x height class bytes (row-major,
// little-endian). Legend names are not stored; decoding yields a legend of
// palette colours only.
void WriteMvdFile(const std::filesystem::path& path, const MvdRaster& mvd);
MvdRaster ReadMvdFile(const std::filesystem::path& path);
inline constexpr std::size_t MvdHeaderBytes(int class_count) {
  return 4 + 2 + 2 + 1 + 3 * static_cast<std::size_t>(class_count);
}

// Legend round trip for pipelines that need class semantics back.
void WriteLegendJson(const std::filesystem::path& path, const MvdRaster& mvd);
std::vector<MvdLegendEntry> ReadLegendJson(const std::filesystem::path& path);

}  // namespace polsar

#endif  // POLSAR_MVD_MVD_HPP_
