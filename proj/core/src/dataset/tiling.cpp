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

#include "polsar/dataset/tiling.hpp"

#include <algorithm>

#include "polsar/common/error.hpp"

namespace polsar {

std::vector<TileOrigin> TileGrid(int width, int height, int size, int stride) {
  if (size <= 0 || stride <= 0) {
    throw ValidationError("tile size and stride must be positive");
  }
  if (size > width || size > height) {
    throw ValidationError("tile size " + std::to_string(size) +
                          " exceeds raster " + std::to_string(width) + "x" +
                          std::to_string(height));
  }
  std::vector<TileOrigin> origins;
  for (int y = 0; y + size <= height; y += stride) {
    for (int x = 0; x + size <= width; x += stride) origins.push_back({x, y});
  }
  return origins;
}

std::vector<TileOrigin> TileScene(std::span<const RasterDims> rasters,
                                  int size, int stride) {
  if (rasters.empty()) throw ValidationError("scene has no rasters");
  for (const auto& r : rasters) {
    if (!(r == rasters.front())) {
      throw ValidationError("scene rasters are misaligned: " +
                            std::to_string(r.width) + "x" +
                            std::to_string(r.height) + " vs " +
                            std::to_string(rasters.front().width) + "x" +
                            std::to_string(rasters.front().height));
    }
  }
  return TileGrid(rasters.front().width, rasters.front().height, size, stride);
}

std::string TileId(const std::string& scene, const TileOrigin& origin) {
  return scene + "_x" + std::to_string(origin.x) + "_y" +
         std::to_string(origin.y);
}

Image8 CropImage(const Image8& image, const TileOrigin& origin, int size) {
  if (origin.x < 0 || origin.y < 0 || origin.x + size > image.width ||
      origin.y + size > image.height) {
    throw ValidationError("crop outside image");
  }
  Image8 out;
  out.width = size;
  out.height = size;
  out.channels = image.channels;
  const std::size_t row = static_cast<std::size_t>(size) * image.channels;
  out.pixels.resize(row * size);
  for (int y = 0; y < size; ++y) {
    const auto src = image.pixels.begin() +
                     ((static_cast<std::size_t>(origin.y) + y) * image.width +
                      origin.x) * image.channels;
    std::copy(src, src + static_cast<long>(row), out.pixels.begin() + y * row);
  }
  return out;
}

LabelRaster CropLabels(const LabelRaster& labels, const TileOrigin& origin,
                       int size) {
  if (origin.x < 0 || origin.y < 0 || origin.x + size > labels.width ||
      origin.y + size > labels.height) {
    throw ValidationError("crop outside label raster");
  }
  LabelRaster out = LabelRaster::Filled(size, size, labels.class_count, 0);
  out.class_names = labels.class_names;
  for (int y = 0; y < size; ++y) {
    const auto src = labels.label.begin() +
                     (static_cast<std::size_t>(origin.y) + y) * labels.width +
                     origin.x;
    std::copy(src, src + size, out.label.begin() + static_cast<long>(y) * size);
  }
  return out;
}

}  // namespace polsar
