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

#ifndef POLSAR_METRICS_CONFUSION_HPP_
#define POLSAR_METRICS_CONFUSION_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "polsar/cluster/label_raster.hpp"

namespace polsar {

// Rows are ground truth, columns predictions.
struct ConfusionMatrix {
  int k = 0;
  std::vector<std::uint64_t> counts;

  explicit ConfusionMatrix(int classes = 0)
      : k(classes), counts(static_cast<std::size_t>(classes) * classes, 0) {}

  std::uint64_t& at(int gt, int pred) {
    return counts[static_cast<std::size_t>(gt) * k + pred];
  }
  std::uint64_t at(int gt, int pred) const {
    return counts[static_cast<std::size_t>(gt) * k + pred];
  }
  std::uint64_t Total() const;
  std::uint64_t RowSum(int gt) const;
  std::uint64_t ColSum(int pred) const;
  ConfusionMatrix& operator+=(const ConfusionMatrix& other);
  bool operator==(const ConfusionMatrix&) const = default;
};

// Pixels whose ground truth is kInvalidLabel are skipped. Throws
// ValidationError on dimension mismatch or any other label >= k.
ConfusionMatrix Confusion(const LabelRaster& pred, const LabelRaster& gt,
                          int k);

struct ClassMetrics {
  double iou = 0.0;
  double acc = 0.0;  // recall
  double f1 = 0.0;
  bool in_gt = false;
  bool in_pred = false;
};

// IoU and F1 means run over classes present in ground truth or prediction;
// the accuracy mean over classes present in ground truth.
struct SegmentationMetrics {
  std::vector<ClassMetrics> per_class;
  double miou = 0.0;
  double macc = 0.0;
  double mf1 = 0.0;
  double pixel_accuracy = 0.0;
};

// Throws ValidationError for an empty matrix.
SegmentationMetrics ComputeMetrics(const ConfusionMatrix& cm);

// |class_names| may be empty (names default to class<i>).
std::string MetricsJson(const SegmentationMetrics& m, const ConfusionMatrix& cm,
                        const std::vector<std::string>& class_names);
std::string MetricsTable(const SegmentationMetrics& m,
                         const std::vector<std::string>& class_names);

}  // namespace polsar

#endif  // POLSAR_METRICS_CONFUSION_HPP_
