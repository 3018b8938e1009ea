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

#include "polsar/fusion/losses.hpp"

#include <algorithm>
#include <cmath>

#include "polsar/common/error.hpp"

namespace polsar {
namespace {

void CheckInputs(const Matrix& pred, const Matrix& labels) {
  if (!pred.SameShape(labels) || pred.rows == 0 || pred.cols == 0) {
    throw ValidationError("loss: prediction and label shapes differ");
  }
  for (int r = 0; r < pred.rows; ++r) {
    double sum = 0.0;
    int ones = 0;
    for (int c = 0; c < pred.cols; ++c) {
      const double p = pred.at(r, c);
      const double y = labels.at(r, c);
      if (y != 0.0 && y != 1.0) throw ValidationError("loss: labels not one-hot");
      if (!(p >= 0.0 && p <= 1.0) || (y == 1.0 && p == 0.0)) {
        throw ValidationError(
            "loss: prediction outside [0, 1] or zero on the true class");
      }
      sum += p;
      ones += y == 1.0;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      throw ValidationError("loss: prediction row does not sum to 1");
    }
    if (ones != 1) throw ValidationError("loss: labels not one-hot");
  }
}

void CheckFocal(const Matrix& pred, std::span<const double> proportions,
                double gamma) {
  if (proportions.size() != static_cast<std::size_t>(pred.cols)) {
    throw ValidationError("focal loss: one proportion per class required");
  }
  double sum = 0.0;
  for (double p : proportions) {
    if (!(p > 0.0)) throw ValidationError("focal loss: zero class proportion");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw ValidationError("focal loss: proportions do not sum to 1");
  }
  if (!(gamma >= 0.0)) throw ValidationError("focal loss: gamma < 0");
}

}  // namespace

double CeLossUnchecked(const Matrix& pred, const Matrix& labels) {
  double total = 0.0;
  for (int r = 0; r < pred.rows; ++r) {
    double sample = 0.0;
    for (int c = 0; c < pred.cols; ++c) {
      if (labels.at(r, c) != 0.0) {
        sample += -labels.at(r, c) * std::log(pred.at(r, c));
      }
    }
    total += sample;
  }
  return total / pred.rows;
}

double FocalLossUnchecked(const Matrix& pred, const Matrix& labels,
                          std::span<const double> proportions, double gamma) {
  double total = 0.0;
  for (int r = 0; r < pred.rows; ++r) {
    double sample = 0.0;
    for (int c = 0; c < pred.cols; ++c) {
      if (labels.at(r, c) != 0.0) {
        const double p = pred.at(r, c);
        sample += (1.0 / proportions[c]) * std::pow(1.0 - p, gamma) *
                  (-labels.at(r, c) * std::log(p));
      }
    }
    total += sample;
  }
  return total / pred.rows;
}

double CeLoss(const Matrix& pred, const Matrix& labels) {
  CheckInputs(pred, labels);
  return CeLossUnchecked(pred, labels);
}

double FocalLoss(const Matrix& pred, const Matrix& labels,
                 std::span<const double> proportions, double gamma) {
  CheckInputs(pred, labels);
  CheckFocal(pred, proportions, gamma);
  return FocalLossUnchecked(pred, labels, proportions, gamma);
}

Matrix CeLossGradient(const Matrix& pred, const Matrix& labels) {
  CheckInputs(pred, labels);
  Matrix g(pred.rows, pred.cols);
  for (int r = 0; r < pred.rows; ++r) {
    for (int c = 0; c < pred.cols; ++c) {
      if (labels.at(r, c) == 0.0) continue;
      g.at(r, c) = -labels.at(r, c) / (pred.at(r, c) * pred.rows);
    }
  }
  return g;
}

Matrix FocalLossGradient(const Matrix& pred, const Matrix& labels,
                         std::span<const double> proportions, double gamma) {
  CheckInputs(pred, labels);
  CheckFocal(pred, proportions, gamma);
  Matrix g(pred.rows, pred.cols);
  for (int r = 0; r < pred.rows; ++r) {
    for (int c = 0; c < pred.cols; ++c) {
      const double y = labels.at(r, c);
      if (y == 0.0) continue;
      const double p = pred.at(r, c);
      const double q = 1.0 - p;
      // q^(gamma-1) log p -> 0 as q -> 0.
      const double log_term =
          gamma == 0.0 || q == 0.0 ? 0.0
                                   : gamma * std::pow(q, gamma - 1.0) * std::log(p);
      g.at(r, c) = (1.0 / proportions[c]) * -y *
                   (-log_term + std::pow(q, gamma) / p) / pred.rows;
    }
  }
  return g;
}

Matrix SoftmaxRowsOf(const Matrix& scores) {
  Matrix out = scores;
  for (int r = 0; r < out.rows; ++r) {
    double* row = &out.data[static_cast<std::size_t>(r) * out.cols];
    const double m = *std::max_element(row, row + out.cols);
    double sum = 0.0;
    for (int c = 0; c < out.cols; ++c) {
      row[c] = std::exp(row[c] - m);
      sum += row[c];
    }
    for (int c = 0; c < out.cols; ++c) row[c] /= sum;
  }
  return out;
}

}  // namespace polsar
