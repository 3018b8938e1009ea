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

#ifndef POLSAR_DECOMP_SYNTHETIC_HPP_
#define POLSAR_DECOMP_SYNTHETIC_HPP_

#include <cstdint>
#include <vector>

#include "polsar/cluster/label_raster.hpp"
#include "polsar/common/scattering_type.hpp"
#include "polsar/decomp/fields.hpp"

namespace polsar {

struct SynthConfig {
  int width = 128;
  int height = 128;
  int regions = 3;          // vertical bands cycling odd, double, volume
  double snr_db = 15.0;     // mechanism-to-noise power; +inf disables noise
  int nodata_columns = 4;   // zero-amplitude strip on the left edge
  std::uint64_t seed = 1;
};

struct SynthRegion {
  int x0 = 0, x1 = 0;  // [x0, x1)
  int y0 = 0, y1 = 0;  // [y0, y1)
  PrimaryType type = PrimaryType::kOdd;
  double power = 1.0;
};

struct SyntheticScene {
  ScatteringField field;
  LabelRaster truth;  // primary types; no-data pixels are invalid
  std::vector<SynthRegion> regions;
};

// Unit Pauli-basis direction of each mechanism: odd (1,0,0), double (0,1,0)
// and volume (1,0,1)/sqrt2, whose alpha angle is 45 degrees.
Vector3c MechanismDirection(PrimaryType type);

// Rectangular regions of pure mechanisms. Each pixel is
//   k_P = sqrt(P) g u + n,  g ~ CN(0, 1),  n ~ CN(0, P / (3 snr) I),
// i.e. circular complex Gaussian speckle on the mechanism direction u plus
// isotropic noise.
SyntheticScene GenerateScene(const SynthConfig& config);

}  // namespace polsar

#endif  // POLSAR_DECOMP_SYNTHETIC_HPP_
