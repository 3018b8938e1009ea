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

#ifndef POLSAR_DATASET_MANIFEST_HPP_
#define POLSAR_DATASET_MANIFEST_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "polsar/cluster/label_raster.hpp"
#include "polsar/dataset/tiling.hpp"

namespace polsar {

enum class SplitAxis { kX, kY };

char SplitAxisName(SplitAxis axis);
SplitAxis ParseSplitAxis(const std::string& name);

struct TileRecord {
  std::string id;
  std::string scene;
  int x = 0;
  int y = 0;
  std::string split;
  // Relative paths keyed by role: "pseudo_color", "mvd", "label".
  std::map<std::string, std::string> files;
  bool operator==(const TileRecord&) const = default;
};

struct DatasetManifest {
  static constexpr int kVersion = 1;

  int tile_size = 512;
  int stride = 512;
  std::vector<int> split_ratios;
  std::vector<std::string> split_names;
  SplitAxis split_axis = SplitAxis::kX;
  int num_classes = 0;
  std::vector<TileRecord> tiles;
  // Per split name, pixel count per class.
  std::map<std::string, std::vector<std::uint64_t>> class_histogram;

  // Throws ValidationError on duplicate ids, unknown split tags or tiles of
  // one band carrying different split tags.
  void Validate() const;
  std::size_t CountInSplit(const std::string& split) const;
  bool operator==(const DatasetManifest&) const = default;
};

// Default names: train/val/test for three splits, train/test for two,
// split<i> otherwise.
std::vector<std::string> DefaultSplitNames(std::size_t split_count);

// Band boundaries for |columns| grid columns: entry k is the first column
// after split k, computed as round-half-up(columns * cumulative_k / total).
// Throws ValidationError for non-positive ratios or columns < splits.
std::vector<int> SplitBoundaries(int columns, const std::vector<int>& ratios);

// Assigns split tags by contiguous bands of distinct tile origins along
// |axis|, pooled across scenes so one boundary applies to every scene.
DatasetManifest SplitGeographic(std::vector<TileRecord> tiles,
                                const std::vector<int>& ratios,
                                SplitAxis axis, int tile_size, int stride,
                                int num_classes);

using TileLabelSource = std::function<LabelRaster(const TileRecord&)>;

// Recomputes class_histogram from per-tile labels (invalid pixels ignored).
void RecomputeHistogram(DatasetManifest& manifest,
                        const TileLabelSource& labels);

// Removes tiles whose fraction of |class_id| pixels is >= |purity| and
// recomputes the histogram. Throws ValidationError for an unknown class id
// or purity outside (0, 1].
DatasetManifest FilterPureClass(const DatasetManifest& manifest,
                                const TileLabelSource& labels, int class_id,
                                double purity = 1.0);

std::string ManifestToJson(const DatasetManifest& manifest);
DatasetManifest ManifestFromJson(const std::string& text);
void WriteManifest(const std::filesystem::path& path,
                   const DatasetManifest& manifest);
DatasetManifest ReadManifest(const std::filesystem::path& path);

}  // namespace polsar

#endif  // POLSAR_DATASET_MANIFEST_HPP_
