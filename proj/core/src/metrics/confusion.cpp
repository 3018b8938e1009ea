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

#include "polsar/metrics/confusion.hpp"

#include <algorithm>
#include <cstdio>

#include "json.hpp"
#include "polsar/common/error.hpp"
#include "polsar/common/parallel.hpp"

namespace polsar {
namespace {

std::string NameOf(const std::vector<std::string>& names, std::size_t c) {
  return c < names.size() ? names[c] : "class" + std::to_string(c);
}

}  // namespace

std::uint64_t ConfusionMatrix::Total() const {
  std::uint64_t t = 0;
  for (auto v : counts) t += v;
  return t;
}

std::uint64_t ConfusionMatrix::RowSum(int gt) const {
  std::uint64_t t = 0;
  for (int p = 0; p < k; ++p) t += at(gt, p);
  return t;
}

std::uint64_t ConfusionMatrix::ColSum(int pred) const {
  std::uint64_t t = 0;
  for (int g = 0; g < k; ++g) t += at(g, pred);
  return t;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  if (other.k != k) throw ValidationError("confusion matrices differ in size");
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  return *this;
}

ConfusionMatrix Confusion(const LabelRaster& pred, const LabelRaster& gt,
                          int k) {
  if (k < 1 || k > 255) throw ValidationError("class count must be 1..255");
  if (pred.width != gt.width || pred.height != gt.height ||
      pred.label.size() != gt.label.size()) {
    throw ValidationError("prediction and ground truth differ in size");
  }
  const std::size_t n = gt.label.size();
  const std::size_t chunks = std::max<std::size_t>(
      1, std::min<std::size_t>(static_cast<std::size_t>(ThreadCount()), n));
  std::vector<ConfusionMatrix> partial(chunks, ConfusionMatrix(k));
  ParallelFor(0, chunks, [&](std::size_t chunk) {
    ConfusionMatrix& cm = partial[chunk];
    const std::size_t begin = n * chunk / chunks, end = n * (chunk + 1) / chunks;
    for (std::size_t i = begin; i < end; ++i) {
      const int g = gt.label[i];
      if (g == kInvalidLabel) continue;
      const int p = pred.label[i];
      if (g >= k || p >= k) {
        throw ValidationError("label out of range at pixel " + std::to_string(i));
      }
      ++cm.at(g, p);
    }
  });
  ConfusionMatrix total(k);
  for (const auto& cm : partial) total += cm;
  return total;
}

SegmentationMetrics ComputeMetrics(const ConfusionMatrix& cm) {
  if (cm.k < 1 || cm.Total() == 0) {
    throw ValidationError("confusion matrix is empty");
  }
  SegmentationMetrics m;
  double iou_sum = 0.0, f1_sum = 0.0, acc_sum = 0.0;
  int iou_n = 0, acc_n = 0;
  std::uint64_t diagonal = 0;
  for (int c = 0; c < cm.k; ++c) {
    const auto tp = static_cast<double>(cm.at(c, c));
    const auto row = static_cast<double>(cm.RowSum(c));
    const auto col = static_cast<double>(cm.ColSum(c));
    const double fn = row - tp, fp = col - tp;
    diagonal += cm.at(c, c);
    ClassMetrics k;
    k.in_gt = row > 0;
    k.in_pred = col > 0;
    if (k.in_gt || k.in_pred) {
      k.iou = tp / (tp + fp + fn);
      k.f1 = 2.0 * tp / (2.0 * tp + fp + fn);
      iou_sum += k.iou;
      f1_sum += k.f1;
      ++iou_n;
    }
    if (k.in_gt) {
      k.acc = tp / row;
      acc_sum += k.acc;
      ++acc_n;
    }
    m.per_class.push_back(k);
  }
  m.miou = iou_sum / iou_n;
  m.mf1 = f1_sum / iou_n;
  m.macc = acc_n > 0 ? acc_sum / acc_n : 0.0;
  m.pixel_accuracy = static_cast<double>(diagonal) / static_cast<double>(cm.Total());
  return m;
}

std::string MetricsJson(const SegmentationMetrics& m, const ConfusionMatrix& cm,
                        const std::vector<std::string>& class_names) {
  nlohmann::ordered_json doc;
  doc["version"] = 1;
  doc["kind"] = "segmentation_metrics";
  doc["num_classes"] = cm.k;
  doc["pixels"] = cm.Total();
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < m.per_class.size(); ++c) {
    const auto& k = m.per_class[c];
    classes.push_back({{"name", NameOf(class_names, c)},
                       {"in_gt", k.in_gt},
                       {"in_pred", k.in_pred},
                       {"iou", k.iou},
                       {"acc", k.acc},
                       {"f1", k.f1}});
  }
  doc["classes"] = classes;
  doc["mIoU"] = m.miou;
  doc["mAcc"] = m.macc;
  doc["mF1"] = m.mf1;
  doc["pixel_accuracy"] = m.pixel_accuracy;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int g = 0; g < cm.k; ++g) {
    std::vector<std::uint64_t> row(cm.counts.begin() + g * cm.k,
                                   cm.counts.begin() + (g + 1) * cm.k);
    rows.push_back(row);
  }
  doc["confusion"] = rows;
  return doc.dump(2) + "\n";
}

std::string MetricsTable(const SegmentationMetrics& m,
                         const std::vector<std::string>& class_names) {
  std::size_t width = 8;
  for (std::size_t c = 0; c < m.per_class.size(); ++c) {
    width = std::max(width, NameOf(class_names, c).size());
  }
  std::string out;
  char buf[128];
  auto line = [&](const std::string& name, const std::string& cells) {
    out += name + std::string(width - name.size() + 2, ' ') + cells + "\n";
  };
  line("class", "   IoU(%)   Acc(%)    F1(%)");
  for (std::size_t c = 0; c < m.per_class.size(); ++c) {
    const auto& k = m.per_class[c];
    if (!k.in_gt && !k.in_pred) {
      line(NameOf(class_names, c), "        -        -        -");
      continue;
    }
    std::snprintf(buf, sizeof(buf), "%9.2f%9.2f%9.2f", 100 * k.iou,
                  100 * k.acc, 100 * k.f1);
    line(NameOf(class_names, c), buf);
  }
  std::snprintf(buf, sizeof(buf), "%9.2f%9.2f%9.2f", 100 * m.miou,
                100 * m.macc, 100 * m.mf1);
  line("mean", buf);
  std::snprintf(buf, sizeof(buf), "mIoU %.2f  mAcc %.2f  mF1 %.2f", 100 * m.miou,
                100 * m.macc, 100 * m.mf1);
  out += std::string(buf) + "\n";
  return out;
}

}  // namespace polsar
