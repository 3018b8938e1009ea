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

#ifndef POLSAR_FUSION_LOSSES_HPP_
#define POLSAR_FUSION_LOSSES_HPP_

#include <span>

#include "polsar/fusion/tensor.hpp"

namespace polsar {

// |pred| holds per-sample class probabilities [S x K]; |labels| the matching
// one-hot rows. Losses are averaged over samples.
//
// Throws ValidationError when predictions leave [0, 1] or are zero on the true
// class, rows do not sum to 1 within 1e-6 or labels are not one-hot.
double CeLoss(const Matrix& pred, const Matrix& labels);

// Class-weighted focal loss with w_k = 1 / proportions[k]. Throws
// ValidationError for a zero or negative proportion, proportions not summing
// to 1 within 1e-6 or gamma < 0.
double FocalLoss(const Matrix& pred, const Matrix& labels,
                 std::span<const double> proportions, double gamma);

// d(loss)/d(pred).
Matrix CeLossGradient(const Matrix& pred, const Matrix& labels);
Matrix FocalLossGradient(const Matrix& pred, const Matrix& labels,
                         std::span<const double> proportions, double gamma);

// Same formulas without the probability checks, for finite differences.
double CeLossUnchecked(const Matrix& pred, const Matrix& labels);
double FocalLossUnchecked(const Matrix& pred, const Matrix& labels,
                          std::span<const double> proportions, double gamma);

// Row-wise softmax of [S x K] scores.
Matrix SoftmaxRowsOf(const Matrix& scores);

}  // namespace polsar

#endif  // POLSAR_FUSION_LOSSES_HPP_
