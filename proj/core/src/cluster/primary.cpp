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

#include "polsar/cluster/primary.hpp"

#include <algorithm>
#include <numeric>

#include "polsar/common/error.hpp"

namespace polsar {

PrimaryType PrimaryTypeForAlpha(double mean_alpha_deg) {
  if (mean_alpha_deg < kOddAlphaLimit) return PrimaryType::kOdd;
  if (mean_alpha_deg > kDoubleAlphaLimit) return PrimaryType::kDouble;
  return PrimaryType::kVolume;
}

ClusterModel ClassifyPrimary(const ClusterModel& model,
                             const EigenFeatures& eig,
                             const LabelRaster& labels) {
  if (labels.width != eig.width || labels.height != eig.height) {
    throw ValidationError("labels and eigen features differ in size");
  }
  std::vector<double> alpha_sum(model.k, 0.0);
  std::vector<std::size_t> members(model.k, 0);
  for (std::size_t i = 0; i < labels.label.size(); ++i) {
    const auto l = labels.label[i];
    if (l == kInvalidLabel || !eig.valid[i]) continue;
    if (l >= model.k) throw ValidationError("label outside cluster model");
    alpha_sum[l] += eig.alpha[i];
    ++members[l];
  }
  ClusterModel out = model;
  out.primary_type.clear();
  for (int c = 0; c < model.k; ++c) {
    if (members[c] == 0) {
      throw ValidationError("cluster " + std::to_string(c) + " is empty");
    }
    out.primary_type.push_back(
        PrimaryTypeForAlpha(alpha_sum[c] / static_cast<double>(members[c])));
  }
  return out;
}

LabelRaster PrimaryTypeRaster(const ClusterModel& model,
                              const LabelRaster& labels) {
  if (model.primary_type.size() != static_cast<std::size_t>(model.k)) {
    throw ValidationError("cluster model has no primary types");
  }
  LabelRaster out = LabelRaster::Filled(labels.width, labels.height,
                                        kPrimaryTypeCount, kInvalidLabel);
  out.class_names = {"odd", "double", "volume"};
  for (std::size_t i = 0; i < labels.label.size(); ++i) {
    const auto l = labels.label[i];
    if (l == kInvalidLabel) continue;
    out.label[i] = static_cast<std::uint8_t>(model.primary_type.at(l));
  }
  return out;
}

int SubclassCount(int n_sub) { return 2 * n_sub + 1; }

int SubclassId(PrimaryType type, int tier, int n_sub) {
  switch (type) {
    case PrimaryType::kOdd:
      return tier;
    case PrimaryType::kVolume:
      return n_sub + tier;
    case PrimaryType::kDouble:
      return 2 * n_sub;
  }
  return 0;
}

LabelRaster SubclassBySpan(const LabelRaster& labels, const ClusterModel& model,
                           const SpanField& span, int n_sub) {
  if (n_sub < 1) throw ValidationError("n_sub must be >= 1");
  if (SubclassCount(n_sub) >= kInvalidLabel) {
    throw ValidationError("too many sub-classes for 8-bit labels");
  }
  if (model.primary_type.size() != static_cast<std::size_t>(model.k)) {
    throw ValidationError("primary types must be assigned before sub-classing");
  }
  if (span.width != labels.width || span.height != labels.height) {
    throw ValidationError("span and labels differ in size");
  }

  LabelRaster out = LabelRaster::Filled(labels.width, labels.height,
                                        SubclassCount(n_sub), kInvalidLabel);
  for (int t = 0; t < n_sub; ++t) {
    out.class_names.push_back("odd_tier" + std::to_string(t));
  }
  for (int t = 0; t < n_sub; ++t) {
    out.class_names.push_back("volume_tier" + std::to_string(t));
  }
  out.class_names.push_back("double");

  std::vector<std::size_t> odd, volume;
  for (std::size_t i = 0; i < labels.label.size(); ++i) {
    const auto l = labels.label[i];
    if (l == kInvalidLabel) continue;
    switch (model.primary_type.at(l)) {
      case PrimaryType::kOdd:
        odd.push_back(i);
        break;
      case PrimaryType::kVolume:
        volume.push_back(i);
        break;
      case PrimaryType::kDouble:
        out.label[i] = static_cast<std::uint8_t>(
            SubclassId(PrimaryType::kDouble, 0, n_sub));
        break;
    }
  }

  auto tier_group = [&](std::vector<std::size_t>& group, PrimaryType type) {
    std::stable_sort(group.begin(), group.end(),
                     [&](std::size_t a, std::size_t b) {
                       return span.span[a] < span.span[b];
                     });
    const std::size_t n = group.size();
    std::size_t tie_rank = 0;
    for (std::size_t r = 0; r < n; ++r) {
      if (r > 0 && span.span[group[r]] != span.span[group[r - 1]]) tie_rank = r;
      const auto tier = static_cast<int>(tie_rank * n_sub / n);
      out.label[group[r]] =
          static_cast<std::uint8_t>(SubclassId(type, tier, n_sub));
    }
  };
  tier_group(odd, PrimaryType::kOdd);
  tier_group(volume, PrimaryType::kVolume);
  return out;
}

}  // namespace polsar
