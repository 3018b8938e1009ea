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

#include "polsar/cluster/zones.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "polsar/common/error.hpp"

namespace polsar {

HAlphaZone ZoneOf(double entropy, double alpha_deg) {
  if (entropy < 0.5) {
    if (alpha_deg < 42.5) return HAlphaZone::kLowSurface;
    if (alpha_deg <= 47.5) return HAlphaZone::kLowDipole;
    return HAlphaZone::kLowDihedral;
  }
  if (entropy < 0.9) {
    if (alpha_deg < 40.0) return HAlphaZone::kMidSurface;
    if (alpha_deg <= 50.0) return HAlphaZone::kMidVegetation;
    return HAlphaZone::kMidDihedral;
  }
  if (alpha_deg <= 55.0) return HAlphaZone::kHighVegetation;
  return HAlphaZone::kHighMultiple;
}

std::string_view ZoneName(HAlphaZone zone) {
  switch (zone) {
    case HAlphaZone::kLowSurface: return "low_entropy_surface";
    case HAlphaZone::kLowDipole: return "low_entropy_dipole";
    case HAlphaZone::kLowDihedral: return "low_entropy_dihedral";
    case HAlphaZone::kMidSurface: return "medium_entropy_surface";
    case HAlphaZone::kMidVegetation: return "medium_entropy_vegetation";
    case HAlphaZone::kMidDihedral: return "medium_entropy_dihedral";
    case HAlphaZone::kHighVegetation: return "high_entropy_vegetation";
    case HAlphaZone::kHighMultiple: return "high_entropy_multiple";
  }
  return "unknown";
}

LabelRaster InitZones(const EigenFeatures& eig) {
  LabelRaster out =
      LabelRaster::Filled(eig.width, eig.height, kZoneCount, kInvalidLabel);
  for (int z = 0; z < kZoneCount; ++z) {
    out.class_names.emplace_back(ZoneName(static_cast<HAlphaZone>(z)));
  }
  for (std::size_t i = 0; i < out.label.size(); ++i) {
    if (!eig.valid[i]) continue;
    out.label[i] =
        static_cast<std::uint8_t>(ZoneOf(eig.entropy[i], eig.alpha[i]));
  }
  return out;
}

LabelRaster InitClusters(const EigenFeatures& eig, int k) {
  if (k < 1 || k > kZoneCount) {
    throw ValidationError("cluster count must lie in 1.." +
                          std::to_string(kZoneCount));
  }
  const LabelRaster zones = InitZones(eig);
  std::array<std::size_t, kZoneCount> population{};
  for (auto z : zones.label) {
    if (z != kInvalidLabel) ++population[z];
  }
  std::array<int, kZoneCount> order{};
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return population[a] > population[b];
  });
  std::array<std::uint8_t, kZoneCount> cluster_of{};
  cluster_of.fill(static_cast<std::uint8_t>(k - 1));
  for (int r = 0; r + 1 < k; ++r) {
    cluster_of[order[r]] = static_cast<std::uint8_t>(r);
  }
  LabelRaster out =
      LabelRaster::Filled(eig.width, eig.height, k, kInvalidLabel);
  for (std::size_t i = 0; i < out.label.size(); ++i) {
    if (zones.label[i] != kInvalidLabel) out.label[i] = cluster_of[zones.label[i]];
  }
  return out;
}

}  // namespace polsar
