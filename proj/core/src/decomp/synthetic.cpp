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

#include "polsar/decomp/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "polsar/common/error.hpp"

namespace polsar {
namespace {

constexpr PrimaryType kCycle[3] = {PrimaryType::kOdd, PrimaryType::kDouble,
                                   PrimaryType::kVolume};

double RegionPower(PrimaryType type) {
  switch (type) {
    case PrimaryType::kOdd:
      return 1.0;
    case PrimaryType::kDouble:
      return 0.5;
    case PrimaryType::kVolume:
      return 0.25;
  }
  return 1.0;
}

}  // namespace

Vector3c MechanismDirection(PrimaryType type) {
  switch (type) {
    case PrimaryType::kOdd:
      return Vector3c{{1.0, 0.0, 0.0}};
    case PrimaryType::kDouble:
      return Vector3c{{0.0, 1.0, 0.0}};
    case PrimaryType::kVolume: {
      const double s = 1.0 / std::numbers::sqrt2;
      return Vector3c{{s, 0.0, s}};
    }
  }
  return {};
}

SyntheticScene GenerateScene(const SynthConfig& config) {
  if (config.width < 1 || config.height < 1) {
    throw ValidationError("synthetic scene needs positive dimensions");
  }
  if (config.regions < 1) throw ValidationError("need at least one region");
  if (config.nodata_columns < 0 ||
      config.nodata_columns + config.regions > config.width) {
    throw ValidationError("no-data strip leaves no room for the regions");
  }

  SyntheticScene scene;
  scene.field = ScatteringField::Zeros(config.width, config.height);
  scene.field.metadata["generator"] = "synthetic";
  scene.truth = LabelRaster::Filled(config.width, config.height,
                                    kPrimaryTypeCount, kInvalidLabel);
  scene.truth.class_names = {"odd", "double", "volume"};

  const int data_width = config.width - config.nodata_columns;
  for (int r = 0; r < config.regions; ++r) {
    SynthRegion region;
    region.x0 = config.nodata_columns + r * data_width / config.regions;
    region.x1 = config.nodata_columns + (r + 1) * data_width / config.regions;
    region.y0 = 0;
    region.y1 = config.height;
    region.type = kCycle[r % 3];
    region.power = RegionPower(region.type);
    scene.regions.push_back(region);
  }

  const bool noisy = std::isfinite(config.snr_db);
  const double noise_ratio = noisy ? std::pow(10.0, -config.snr_db / 10.0) : 0.0;
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  auto complex_normal = [&] {
    const double re = normal(rng);
    const double im = normal(rng);
    return cdouble(re, im);
  };

  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (const auto& region : scene.regions) {
    const Vector3c u = MechanismDirection(region.type);
    const double amp = std::sqrt(region.power);
    const double noise_amp = std::sqrt(region.power * noise_ratio / 3.0);
    for (int y = region.y0; y < region.y1; ++y) {
      for (int x = region.x0; x < region.x1; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * config.width + x;
        const cdouble g = complex_normal();
        Vector3c k;
        for (int c = 0; c < 3; ++c) k[c] = amp * g * u[c];
        if (noisy) {
          for (int c = 0; c < 3; ++c) k[c] += noise_amp * complex_normal();
        }
        const cdouble hh = inv_sqrt2 * (k[0] + k[1]);
        const cdouble vv = inv_sqrt2 * (k[0] - k[1]);
        const cdouble hv = inv_sqrt2 * k[2];
        scene.field.s_hh[i] = {static_cast<float>(hh.real()),
                               static_cast<float>(hh.imag())};
        scene.field.s_hv[i] = {static_cast<float>(hv.real()),
                               static_cast<float>(hv.imag())};
        scene.field.s_vv[i] = {static_cast<float>(vv.real()),
                               static_cast<float>(vv.imag())};
        scene.truth.label[i] = static_cast<std::uint8_t>(region.type);
      }
    }
  }
  return scene;
}

}  // namespace polsar
