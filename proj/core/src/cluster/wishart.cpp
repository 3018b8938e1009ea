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

#include "polsar/cluster/wishart.hpp"

#include <cmath>
#include <limits>

#include "polsar/common/error.hpp"
#include "polsar/common/parallel.hpp"

namespace polsar {
namespace {

// Re tr(A B) for 3x3 matrices.
double TraceOfProduct(const Matrix3c& a, const Matrix3c& b) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += (a(i, j) * b(j, i)).real();
  return s;
}

struct Partition {
  std::vector<Matrix3c> centers;
  std::vector<std::size_t> counts;
};

// Drops empty clusters (renumbering |labels| in place) and returns member
// means. Sums run in pixel order so results are reproducible.
Partition CompactAndAverage(const CoherencyField& coh, int k,
                            LabelRaster* labels) {
  std::vector<Matrix3c> sums(k);
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < labels->label.size(); ++i) {
    const auto l = labels->label[i];
    if (l == kInvalidLabel) continue;
    sums[l] += coh.t[i];
    ++counts[l];
  }
  std::vector<std::uint8_t> remap(k, kInvalidLabel);
  Partition part;
  for (int c = 0; c < k; ++c) {
    if (counts[c] == 0) continue;
    remap[c] = static_cast<std::uint8_t>(part.centers.size());
    part.centers.push_back(sums[c] * (1.0 / static_cast<double>(counts[c])));
    part.counts.push_back(counts[c]);
  }
  for (auto& l : labels->label) {
    if (l != kInvalidLabel) l = remap[l];
  }
  labels->class_count = static_cast<int>(part.centers.size());
  labels->class_names.clear();
  return part;
}

std::vector<WishartCenter> Prepare(const std::vector<Matrix3c>& centers,
                                   double eps) {
  std::vector<WishartCenter> prepared;
  prepared.reserve(centers.size());
  for (const auto& c : centers) prepared.emplace_back(c, eps);
  return prepared;
}

// Assigns every valid pixel to its nearest center; returns per-pixel best
// distance (0 for invalid pixels).
std::vector<double> Assign(const CoherencyField& coh,
                           const std::vector<WishartCenter>& centers,
                           LabelRaster* labels) {
  std::vector<double> best(labels->label.size(), 0.0);
  const auto w = static_cast<std::size_t>(coh.width);
  ParallelFor(0, static_cast<std::size_t>(coh.height), [&](std::size_t y) {
    for (std::size_t i = y * w; i < (y + 1) * w; ++i) {
      if (labels->label[i] == kInvalidLabel) continue;
      double d_min = std::numeric_limits<double>::infinity();
      std::uint8_t arg = 0;
      for (std::size_t c = 0; c < centers.size(); ++c) {
        const double d = centers[c].Distance(coh.t[i]);
        if (d < d_min) {
          d_min = d;
          arg = static_cast<std::uint8_t>(c);
        }
      }
      labels->label[i] = arg;
      best[i] = d_min;
    }
  });
  return best;
}

double Sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

WishartCenter::WishartCenter(const Matrix3c& v, double eps) {
  Matrix3c loaded = v;
  for (int i = 0; i < 3; ++i) loaded(i, i) += eps;
  const cdouble det = loaded.Determinant();
  if (!(det.real() > 0.0) || !std::isfinite(det.real()) ||
      !Invert(loaded, &inverse_)) {
    throw NumericError("Wishart center is singular after regularization");
  }
  log_det_ = std::log(det.real());
  eps_trace_inverse_ =
      eps * (inverse_(0, 0).real() + inverse_(1, 1).real() +
             inverse_(2, 2).real());
}

double WishartCenter::Distance(const Matrix3c& t) const {
  return log_det_ + TraceOfProduct(inverse_, t) + eps_trace_inverse_;
}

double WishartDistance(const Matrix3c& t, const Matrix3c& v, double eps) {
  return WishartCenter(v, eps).Distance(t);
}

WishartResult WishartIterate(const CoherencyField& coherency,
                             const LabelRaster& init,
                             const WishartOptions& options) {
  if (init.width != coherency.width || init.height != coherency.height ||
      coherency.t.size() != coherency.PixelCount()) {
    throw ValidationError("initial labels and coherency differ in size");
  }
  init.Validate();
  if (options.max_iter < 1) throw ValidationError("max_iter must be >= 1");
  if (!(options.rel_tol >= 0.0)) throw ValidationError("rel_tol must be >= 0");

  double trace_sum = 0.0;
  std::size_t valid = 0;
  for (std::size_t i = 0; i < init.label.size(); ++i) {
    if (!init.valid(i)) continue;
    trace_sum += coherency.t[i].Trace();
    ++valid;
  }
  if (valid == 0) throw ValidationError("all pixels are invalid");
  const double eps =
      options.regularization_scale * trace_sum / static_cast<double>(valid);

  WishartResult result;
  result.labels = init;
  Partition part = CompactAndAverage(coherency, init.class_count, &result.labels);

  while (true) {
    const auto prepared = Prepare(part.centers, eps);
    LabelRaster next = result.labels;
    const double objective = Sum(Assign(coherency, prepared, &next));
    const bool changed = next.label != result.labels.label;
    result.objective_history.push_back(objective);
    ++result.iterations;
    result.labels = std::move(next);
    part = CompactAndAverage(coherency, static_cast<int>(part.centers.size()),
                             &result.labels);
    if (!changed) {
      result.converged = true;
      break;
    }
    const auto& h = result.objective_history;
    if (h.size() >= 2) {
      const double prev = h[h.size() - 2];
      if (std::abs(prev - objective) < options.rel_tol * std::abs(prev)) {
        result.converged = true;
        break;
      }
    }
    if (result.iterations >= options.max_iter) break;
  }

  ClusterModel& model = result.model;
  model.k = static_cast<int>(part.centers.size());
  model.centers = part.centers;
  model.counts = part.counts;
  model.regularization = eps;
  const auto prepared = Prepare(model.centers, eps);
  double objective = 0.0;
  for (std::size_t i = 0; i < result.labels.label.size(); ++i) {
    const auto l = result.labels.label[i];
    if (l != kInvalidLabel) objective += prepared[l].Distance(coherency.t[i]);
  }
  model.objective = objective;
  return result;
}

LabelRaster AssignToNearest(const CoherencyField& coherency,
                            const ClusterModel& model,
                            const LabelRaster& validity) {
  LabelRaster labels = validity;
  labels.class_count = model.k;
  labels.class_names.clear();
  const auto prepared = Prepare(model.centers, model.regularization);
  for (std::size_t i = 0; i < labels.label.size(); ++i) {
    if (labels.label[i] == kInvalidLabel) continue;
    double d_min = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (int c = 0; c < model.k; ++c) {
      const double d = prepared[c].Distance(coherency.t[i]);
      if (d < d_min) {
        d_min = d;
        arg = c;
      }
    }
    labels.label[i] = static_cast<std::uint8_t>(arg);
  }
  return labels;
}

std::vector<double> RunnerUpRatio(const CoherencyField& coherency,
                                  const ClusterModel& model,
                                  const LabelRaster& labels) {
  std::vector<double> ratio(labels.label.size(), 0.0);
  if (model.k < 2) return ratio;
  const auto prepared = Prepare(model.centers, model.regularization);
  const double looks = static_cast<double>(coherency.looks) * coherency.looks;
  for (std::size_t i = 0; i < ratio.size(); ++i) {
    if (labels.label[i] == kInvalidLabel) continue;
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = d1;
    for (const auto& c : prepared) {
      const double d = c.Distance(coherency.t[i]);
      if (d < d1) {
        d2 = d1;
        d1 = d;
      } else if (d < d2) {
        d2 = d;
      }
    }
    ratio[i] = std::exp(-looks * (d2 - d1));
  }
  return ratio;
}

}  // namespace polsar
