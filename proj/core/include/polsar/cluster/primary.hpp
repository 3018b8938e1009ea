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

#ifndef POLSAR_CLUSTER_PRIMARY_HPP_
#define POLSAR_CLUSTER_PRIMARY_HPP_

#include <filesystem>

#include "polsar/cluster/label_raster.hpp"
#include "polsar/cluster/wishart.hpp"
#include "polsar/decomp/fields.hpp"
#include "polsar/eigen/h_a_alpha.hpp"

namespace polsar {

// Mean-alpha thresholds (degrees) separating odd / volume / double clusters.
inline constexpr double kOddAlphaLimit = 42.5;
inline constexpr double kDoubleAlphaLimit = 47.5;

PrimaryType PrimaryTypeForAlpha(double mean_alpha_deg);

// Labels each cluster by the mean alpha of its valid members. Throws
// ValidationError when a cluster has no valid member.
ClusterModel ClassifyPrimary(const ClusterModel& model,
                             const EigenFeatures& eig,
                             const LabelRaster& labels);

// Per-pixel primary type raster (0 odd, 1 double, 2 volume).
LabelRaster PrimaryTypeRaster(const ClusterModel& model,
                              const LabelRaster& labels);

// Expanded class ids produced by SubclassBySpan for n_sub tiers:
//   odd tier t -> t, volume tier t -> n_sub + t, double -> 2 n_sub.
int SubclassCount(int n_sub);
int SubclassId(PrimaryType type, int tier, int n_sub);

// Splits the odd and the volume pixels (each pooled over all clusters of that
// type) into n_sub equal-population SPAN tiers; double-bounce pixels form one
// class. Tier of a pixel = floor(r * n_sub / n) where r is the smallest
// 0-based rank among pixels sharing its SPAN value, so ties collapse to the
// lowest tier. Throws ValidationError for n_sub < 1 or unclassified models.
LabelRaster SubclassBySpan(const LabelRaster& labels, const ClusterModel& model,
                           const SpanField& span, int n_sub = 5);

// JSON with centers as 18 reals each (row-major 3x3, real then imaginary).
void WriteClusterModel(const std::filesystem::path& path,
                       const ClusterModel& model);
ClusterModel ReadClusterModel(const std::filesystem::path& path);

}  // namespace polsar

#endif  // POLSAR_CLUSTER_PRIMARY_HPP_
