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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "polsar/common/error.hpp"
#include "polsar/metrics/confusion.hpp"
#include "support/metrics_oracle.hpp"

namespace polsar {
namespace {

LabelRaster Raster(int w, int h, int k, std::vector<std::uint8_t> labels) {
  LabelRaster l = LabelRaster::Filled(w, h, k, 0);
  l.label = std::move(labels);
  return l;
}

LabelRaster RandomRaster(std::mt19937_64& rng, int w, int h, int k) {
  std::uniform_int_distribution<int> d(0, k - 1);
  LabelRaster l = LabelRaster::Filled(w, h, k, 0);
  for (auto& v : l.label) v = static_cast<std::uint8_t>(d(rng));
  return l;
}

TEST(Confusion, IdenticalIsDiagonal) {
  std::mt19937_64 rng(1);
  const LabelRaster a = RandomRaster(rng, 6, 5, 4);
  const ConfusionMatrix cm = Confusion(a, a, 4);
  for (int g = 0; g < 4; ++g) {
    for (int p = 0; p < 4; ++p) {
      if (g != p) {
        EXPECT_EQ(cm.at(g, p), 0u);
      }
    }
  }
  EXPECT_EQ(cm.Total(), 30u);
}

TEST(Confusion, OneFlippedPixel) {
  const LabelRaster gt = Raster(2, 2, 2, {0, 0, 1, 1});
  const LabelRaster pred = Raster(2, 2, 2, {0, 1, 1, 1});
  const ConfusionMatrix cm = Confusion(pred, gt, 2);
  EXPECT_EQ(cm.counts, (std::vector<std::uint64_t>{1, 1, 0, 2}));
}

TEST(Confusion, InvalidGroundTruthIsSkipped) {
  const LabelRaster gt = Raster(2, 2, 2, {0, kInvalidLabel, 1, 1});
  const LabelRaster pred = Raster(2, 2, 2, {0, 1, 1, 1});
  EXPECT_EQ(Confusion(pred, gt, 2).Total(), 3u);
}

TEST(Confusion, Errors) {
  const LabelRaster a = Raster(2, 2, 3, {0, 1, 2, 0});
  EXPECT_THROW(Confusion(a, a, 2), ValidationError);
  const LabelRaster b = Raster(4, 1, 3, {0, 1, 2, 0});
  EXPECT_THROW(Confusion(a, b, 3), ValidationError);
  EXPECT_THROW(ComputeMetrics(ConfusionMatrix(3)), ValidationError);
}

TEST(Confusion, MatchesEnumerationOnRandomPairs) {
  std::mt19937_64 rng(77);
  for (int n = 0; n < 100; ++n) {
    const int k = 2 + n % 6;
    const LabelRaster gt = RandomRaster(rng, 8, 8, k);
    const LabelRaster pred = RandomRaster(rng, 8, 8, k);
    const ConfusionMatrix cm = Confusion(pred, gt, k);
    const auto o = testing::EnumerateMetrics(pred, gt, k);
    for (int g = 0; g < k; ++g) {
      for (int p = 0; p < k; ++p) EXPECT_EQ(cm.at(g, p), o.cm[g][p]);
    }
    const SegmentationMetrics m = ComputeMetrics(cm);
    for (int c = 0; c < k; ++c) {
      EXPECT_EQ(m.per_class[c].iou, o.iou[c]);
      EXPECT_EQ(m.per_class[c].acc, o.acc[c]);
      EXPECT_EQ(m.per_class[c].f1, o.f1[c]);
    }
    EXPECT_EQ(m.miou, o.miou);
    EXPECT_EQ(m.macc, o.macc);
    EXPECT_EQ(m.mf1, o.mf1);
  }
}

TEST(Metrics, Perfect) {
  std::mt19937_64 rng(2);
  const LabelRaster a = RandomRaster(rng, 8, 8, 3);
  const SegmentationMetrics m = ComputeMetrics(Confusion(a, a, 3));
  EXPECT_EQ(m.miou, 1.0);
  EXPECT_EQ(m.macc, 1.0);
  EXPECT_EQ(m.mf1, 1.0);
  EXPECT_EQ(m.pixel_accuracy, 1.0);
}

TEST(Metrics, TwoClassWorkedExample) {
  ConfusionMatrix cm(2);
  cm.counts = {3, 1, 1, 3};
  const SegmentationMetrics m = ComputeMetrics(cm);
  EXPECT_DOUBLE_EQ(m.per_class[0].iou, 0.6);
  EXPECT_DOUBLE_EQ(m.per_class[1].iou, 0.6);
  EXPECT_DOUBLE_EQ(m.miou, 0.6);
  EXPECT_DOUBLE_EQ(m.macc, 0.75);
  EXPECT_DOUBLE_EQ(m.mf1, 0.75);
}

TEST(Metrics, AbsentClassIsExcluded) {
  ConfusionMatrix two(2);
  two.counts = {3, 1, 1, 3};
  ConfusionMatrix three(3);
  three.at(0, 0) = 3;
  three.at(0, 2) = 1;
  three.at(2, 0) = 1;
  three.at(2, 2) = 3;
  const SegmentationMetrics a = ComputeMetrics(two);
  const SegmentationMetrics b = ComputeMetrics(three);
  EXPECT_EQ(a.miou, b.miou);
  EXPECT_EQ(a.macc, b.macc);
  EXPECT_EQ(a.mf1, b.mf1);
  EXPECT_FALSE(b.per_class[1].in_gt || b.per_class[1].in_pred);
}

TEST(Metrics, PredictedButAbsentClassScoresZero) {
  ConfusionMatrix cm(2);
  cm.at(0, 0) = 3;
  cm.at(0, 1) = 1;
  const SegmentationMetrics m = ComputeMetrics(cm);
  EXPECT_EQ(m.per_class[1].iou, 0.0);
  EXPECT_DOUBLE_EQ(m.miou, 0.375);
  EXPECT_DOUBLE_EQ(m.macc, 0.75);
}

TEST(Metrics, F1IoUIdentity) {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 50; ++n) {
    const SegmentationMetrics m = ComputeMetrics(
        Confusion(RandomRaster(rng, 8, 8, 5), RandomRaster(rng, 8, 8, 5), 5));
    for (const auto& c : m.per_class) {
      EXPECT_NEAR(c.f1, 2 * c.iou / (1 + c.iou), 1e-15);
      EXPECT_LE(c.iou, c.f1);
      EXPECT_LE(c.f1, 1.0);
    }
  }
}

TEST(Metrics, PermutationInvariant) {
  std::mt19937_64 rng(8);
  const int k = 5;
  LabelRaster gt = RandomRaster(rng, 8, 8, k), pred = RandomRaster(rng, 8, 8, k);
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  LabelRaster gt2 = gt, pred2 = pred;
  for (auto& v : gt2.label) v = static_cast<std::uint8_t>(perm[v]);
  for (auto& v : pred2.label) v = static_cast<std::uint8_t>(perm[v]);
  const SegmentationMetrics a = ComputeMetrics(Confusion(pred, gt, k));
  const SegmentationMetrics b = ComputeMetrics(Confusion(pred2, gt2, k));
  for (int c = 0; c < k; ++c) EXPECT_EQ(a.per_class[c].iou, b.per_class[perm[c]].iou);
  EXPECT_NEAR(a.miou, b.miou, 1e-15);
  EXPECT_NEAR(a.mf1, b.mf1, 1e-15);
}

TEST(Confusion, AdditiveOverPartitions) {
  std::mt19937_64 rng(9);
  const LabelRaster gt = RandomRaster(rng, 8, 8, 4), pred = RandomRaster(rng, 8, 8, 4);
  auto half = [](const LabelRaster& l, int begin) {
    LabelRaster out = LabelRaster::Filled(8, 4, l.class_count, 0);
    std::copy(l.label.begin() + begin * 8, l.label.begin() + (begin + 4) * 8,
              out.label.begin());
    return out;
  };
  ConfusionMatrix sum = Confusion(half(pred, 0), half(gt, 0), 4);
  sum += Confusion(half(pred, 4), half(gt, 4), 4);
  EXPECT_EQ(sum, Confusion(pred, gt, 4));
}

TEST(Report, JsonAndTable) {
  ConfusionMatrix cm(2);
  cm.counts = {3, 1, 1, 3};
  const SegmentationMetrics m = ComputeMetrics(cm);
  const std::string json = MetricsJson(m, cm, {"water", "land"});
  EXPECT_NE(json.find("\"water\""), std::string::npos);
  EXPECT_NE(json.find("\"mIoU\""), std::string::npos);
  const std::string table = MetricsTable(m, {});
  EXPECT_NE(table.find("class1"), std::string::npos);
}

}  // namespace
}  // namespace polsar
