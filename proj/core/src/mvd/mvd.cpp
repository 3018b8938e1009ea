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

#include "polsar/mvd/mvd.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "polsar/cluster/primary.hpp"
#include "polsar/common/error.hpp"

namespace polsar {
namespace {

constexpr double kSaturation = 0.65;

double HueOf(PrimaryType type) {
  switch (type) {
    case PrimaryType::kOdd:
      return 210.0;
    case PrimaryType::kDouble:
      return 0.0;
    case PrimaryType::kVolume:
      return 120.0;
  }
  return 0.0;
}

struct SourceClass {
  PrimaryType type;
  int tier;
};

// Decodes the SubclassBySpan id layout.
std::vector<SourceClass> DescribeSources(int class_count) {
  if (class_count < 3 || class_count % 2 == 0) {
    throw ValidationError("sub-class raster must hold 2*n_sub+1 classes, got " +
                          std::to_string(class_count));
  }
  const int n_sub = (class_count - 1) / 2;
  std::vector<SourceClass> sources;
  for (int t = 0; t < n_sub; ++t) sources.push_back({PrimaryType::kOdd, t});
  for (int t = 0; t < n_sub; ++t) sources.push_back({PrimaryType::kVolume, t});
  sources.push_back({PrimaryType::kDouble, 0});
  return sources;
}

}  // namespace

std::vector<Rgb> MvdRaster::Palette() const {
  std::vector<Rgb> palette;
  palette.reserve(legend.size());
  for (const auto& e : legend) palette.push_back(e.color);
  return palette;
}

Rgb HslToRgb(double hue_deg, double saturation, double lightness) {
  const double c = (1.0 - std::abs(2.0 * lightness - 1.0)) * saturation;
  const double h = std::fmod(std::fmod(hue_deg, 360.0) + 360.0, 360.0) / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(h, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  if (h < 1) {
    r = c; g = x;
  } else if (h < 2) {
    r = x; g = c;
  } else if (h < 3) {
    g = c; b = x;
  } else if (h < 4) {
    g = x; b = c;
  } else if (h < 5) {
    r = x; b = c;
  } else {
    r = c; b = x;
  }
  const double m = lightness - c / 2.0;
  auto to_byte = [&](double v) {
    return static_cast<std::uint8_t>(
        std::lround(std::clamp((v + m) * 255.0, 0.0, 255.0)));
  };
  return {to_byte(r), to_byte(g), to_byte(b)};
}

Rgb ScatteringColor(PrimaryType type, int tier, int tiers_in_group) {
  const double lightness =
      tiers_in_group <= 1
          ? 0.55
          : 0.35 + 0.40 * static_cast<double>(tier) / (tiers_in_group - 1);
  return HslToRgb(HueOf(type), kSaturation, lightness);
}

MvdRaster Recluster(const LabelRaster& subclasses,
                    std::span<const double> runner_up_ratio,
                    const std::optional<MergeMap>& merge_map,
                    const ReclusterOptions& options) {
  subclasses.Validate();
  const auto sources = DescribeSources(subclasses.class_count);
  const int source_count = static_cast<int>(sources.size());
  if (!runner_up_ratio.empty() &&
      runner_up_ratio.size() != subclasses.PixelCount()) {
    throw ValidationError("runner-up ratio map does not match raster size");
  }

  MergeMap groups;
  if (merge_map) {
    groups = *merge_map;
  } else {
    for (int s = 0; s < source_count; ++s) groups.groups.push_back({s});
  }

  std::vector<int> target_of(source_count, -1);
  std::vector<PrimaryType> group_type;
  std::vector<int> group_min_tier;
  for (std::size_t g = 0; g < groups.groups.size(); ++g) {
    const auto& members = groups.groups[g];
    if (members.empty()) throw ValidationError("merge group is empty");
    for (int s : members) {
      if (s < 0 || s >= source_count) {
        throw ValidationError("merge map references unknown source class " +
                              std::to_string(s));
      }
      if (target_of[s] != -1) {
        throw ValidationError("source class " + std::to_string(s) +
                              " appears in two merge groups");
      }
      if (sources[s].type != sources[members.front()].type) {
        throw ValidationError("merge group mixes primary scattering types");
      }
      target_of[s] = static_cast<int>(g);
    }
    group_type.push_back(sources[members.front()].type);
    int min_tier = sources[members.front()].tier;
    for (int s : members) min_tier = std::min(min_tier, sources[s].tier);
    group_min_tier.push_back(min_tier);
  }
  for (int s = 0; s < source_count; ++s) {
    if (target_of[s] == -1) {
      throw ValidationError("source class " + std::to_string(s) +
                            " is not covered by the merge map");
    }
  }
  const int scattering_classes = static_cast<int>(groups.groups.size());
  if (scattering_classes + 2 > 256) {
    throw ValidationError("too many MVD classes");
  }

  MvdRaster mvd;
  mvd.width = subclasses.width;
  mvd.height = subclasses.height;
  for (int g = 0; g < scattering_classes; ++g) {
    int tier = 0;
    int in_group = 0;
    for (int o = 0; o < scattering_classes; ++o) {
      if (group_type[o] != group_type[g]) continue;
      ++in_group;
      if (group_min_tier[o] < group_min_tier[g]) ++tier;
    }
    MvdLegendEntry entry;
    entry.kind = MvdClassKind::kScattering;
    entry.primary_type = group_type[g];
    entry.tier = tier;
    entry.color = ScatteringColor(group_type[g], tier, in_group);
    entry.name = std::string(PrimaryTypeName(group_type[g]));
    if (group_type[g] != PrimaryType::kDouble || in_group > 1) {
      entry.name += "_tier" + std::to_string(tier);
    }
    mvd.legend.push_back(entry);
  }
  const auto mixed = static_cast<std::uint8_t>(scattering_classes);
  const auto other = static_cast<std::uint8_t>(scattering_classes + 1);
  mvd.legend.push_back(
      {"mixed", MvdClassKind::kMixed, std::nullopt, 0, HslToRgb(0, 0, 0.5)});
  mvd.legend.push_back({"other", MvdClassKind::kOther, std::nullopt, 0, {0, 0, 0}});

  mvd.class_index.resize(subclasses.PixelCount());
  for (std::size_t i = 0; i < mvd.class_index.size(); ++i) {
    const auto l = subclasses.label[i];
    if (l == kInvalidLabel) {
      mvd.class_index[i] = other;
    } else if (!runner_up_ratio.empty() &&
               runner_up_ratio[i] > options.mixed_threshold) {
      mvd.class_index[i] = mixed;
    } else {
      mvd.class_index[i] = static_cast<std::uint8_t>(target_of[l]);
    }
  }
  return mvd;
}

Image8 EncodePalette(const MvdRaster& mvd) {
  if (mvd.class_count() > 256) {
    throw ValidationError("palette encoding supports at most 256 classes");
  }
  Image8 image;
  image.width = mvd.width;
  image.height = mvd.height;
  image.channels = 3;
  image.pixels.resize(mvd.PixelCount() * 3);
  for (std::size_t i = 0; i < mvd.class_index.size(); ++i) {
    const auto c = mvd.class_index[i];
    if (c >= mvd.class_count()) {
      throw ValidationError("class index outside legend");
    }
    const Rgb& rgb = mvd.legend[c].color;
    std::copy(rgb.begin(), rgb.end(), image.pixels.begin() + 3 * i);
  }
  return image;
}

Tensor3 OneHot(const MvdRaster& mvd) {
  Tensor3 t(mvd.class_count(), mvd.height, mvd.width, 0.0);
  const std::size_t plane = t.plane();
  for (std::size_t i = 0; i < mvd.class_index.size(); ++i) {
    const auto c = mvd.class_index[i];
    if (c >= mvd.class_count()) {
      throw ValidationError("class index outside legend");
    }
    t.data[c * plane + i] = 1.0;
  }
  return t;
}

Image8 LegendSwatch(const MvdRaster& mvd) {
  Image8 image;
  image.width = kSwatchWidth;
  image.height = kSwatchRowHeight * mvd.class_count();
  image.channels = 3;
  image.pixels.resize(static_cast<std::size_t>(image.width) * image.height * 3);
  for (int c = 0; c < mvd.class_count(); ++c) {
    for (int y = c * kSwatchRowHeight; y < (c + 1) * kSwatchRowHeight; ++y) {
      for (int x = 0; x < image.width; ++x) {
        const std::size_t i = (static_cast<std::size_t>(y) * image.width + x) * 3;
        std::copy(mvd.legend[c].color.begin(), mvd.legend[c].color.end(),
                  image.pixels.begin() + i);
      }
    }
  }
  return image;
}

void RenderLegend(const MvdRaster& mvd, const std::filesystem::path& json_path,
                  const std::filesystem::path& swatch_png_path) {
  WriteLegendJson(json_path, mvd);
  WritePng(swatch_png_path, LegendSwatch(mvd));
}

}  // namespace polsar
