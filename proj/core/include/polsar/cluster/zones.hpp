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

#ifndef POLSAR_CLUSTER_ZONES_HPP_
#define POLSAR_CLUSTER_ZONES_HPP_

#include <cstdint>
#include <string_view>

#include "polsar/cluster/label_raster.hpp"
#include "polsar/eigen/h_a_alpha.hpp"

namespace polsar {

// Eight feasible zones of the H/alpha plane.
//   H < 0.5:        alpha < 42.5 | [42.5, 47.5] | > 47.5
//   0.5 <= H < 0.9: alpha < 40   | [40, 50]     | > 50
//   H >= 0.9:       alpha <= 55  | > 55
enum class HAlphaZone : std::uint8_t {
  kLowSurface = 0,
  kLowDipole,
  kLowDihedral,
  kMidSurface,
  kMidVegetation,
  kMidDihedral,
  kHighVegetation,
  kHighMultiple,
};

inline constexpr int kZoneCount = 8;

HAlphaZone ZoneOf(double entropy, double alpha_deg);
std::string_view ZoneName(HAlphaZone zone);

// Zone per valid pixel; invalid pixels get kInvalidLabel.
LabelRaster InitZones(const EigenFeatures& eig);

// k initial clusters (1 <= k <= 8): the k - 1 most populous zones keep their
// own cluster, ranked by population (ties to the lower zone), and the
// remaining valid pixels share the last one.
LabelRaster InitClusters(const EigenFeatures& eig, int k);

}  // namespace polsar

#endif  // POLSAR_CLUSTER_ZONES_HPP_
