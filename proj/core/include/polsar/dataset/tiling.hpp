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

#ifndef POLSAR_DATASET_TILING_HPP_
#define POLSAR_DATASET_TILING_HPP_

#include <span>
#include <string>
#include <vector>

#include "polsar/cluster/label_raster.hpp"
#include "polsar/common/png_io.hpp"

namespace polsar {

struct RasterDims {
  int width = 0;
  int height = 0;
  bool operator==(const RasterDims&) const = default;
};

struct TileOrigin {
  int x = 0;
  int y = 0;
  bool operator==(const TileOrigin&) const = default;
};

// Grid origins in row-major order. Tiles that would cross the right or bottom
// edge are dropped.
std::vector<TileOrigin> TileGrid(int width, int height, int size, int stride);

// Checks that every raster of a scene shares one size and returns the grid.
// Throws ValidationError on misaligned rasters or size > dimensions.
std::vector<TileOrigin> TileScene(std::span<const RasterDims> rasters,
                                  int size, int stride);

std::string TileId(const std::string& scene, const TileOrigin& origin);

Image8 CropImage(const Image8& image, const TileOrigin& origin, int size);
LabelRaster CropLabels(const LabelRaster& labels, const TileOrigin& origin,
                       int size);

}  // namespace polsar

#endif  // POLSAR_DATASET_TILING_HPP_
