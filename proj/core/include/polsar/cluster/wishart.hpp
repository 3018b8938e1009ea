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

#ifndef POLSAR_CLUSTER_WISHART_HPP_
#define POLSAR_CLUSTER_WISHART_HPP_

#include <cstddef>
#include <vector>

#include "polsar/cluster/label_raster.hpp"
#include "polsar/common/matrix3.hpp"
#include "polsar/common/scattering_type.hpp"
#include "polsar/decomp/fields.hpp"

namespace polsar {

struct ClusterModel {
  int k = 0;
  std::vector<Matrix3c> centers;         // unregularized member means
  std::vector<std::size_t> counts;       // members per cluster
  std::vector<PrimaryType> primary_type;  // empty until ClassifyPrimary
  double objective = 0.0;                // sum of member distances
  double regularization = 0.0;           // diagonal loading eps
};

// Wishart distance with diagonal loading:
//   d = ln det(V + eps I) + tr((V + eps I)^-1 (T + eps I)).
// Loading both arguments keeps the member mean the exact minimizer of the
// summed distance, so the clustering objective cannot increase. With eps = 0
// this is ln det V + tr(V^-1 T).
// Throws NumericError when V + eps I is singular or not positive definite.
double WishartDistance(const Matrix3c& t, const Matrix3c& v, double eps = 0.0);

// A center with its inverse and log-determinant cached.
class WishartCenter {
 public:
  WishartCenter(const Matrix3c& v, double eps);
  double Distance(const Matrix3c& t) const;

 private:
  Matrix3c inverse_;
  double log_det_ = 0.0;
  double eps_trace_inverse_ = 0.0;  // eps * tr(inverse)
};

struct WishartOptions {
  int max_iter = 50;
  double rel_tol = 1e-6;
  double regularization_scale = 1e-6;  // eps = scale * mean trace
};

struct WishartResult {
  ClusterModel model;
  LabelRaster labels;
  // Objective after every assignment step, each against the centers of the
  // previous partition. Non-increasing.
  std::vector<double> objective_history;
  int iterations = 0;
  bool converged = false;
};

// Complex-Wishart k-means. Pixels labelled kInvalidLabel in |init| are
// ignored throughout. Clusters that end up empty are dropped and the
// remaining ones renumbered in order, never reseeded. Argmin ties go to the
// lowest cluster index. Stops when the partition is unchanged, when the
// relative objective change falls below rel_tol, or after max_iter
// assignment steps. The returned centers are the means of the returned
// partition. Throws ValidationError when no pixel is valid.
WishartResult WishartIterate(const CoherencyField& coherency,
                             const LabelRaster& init,
                             const WishartOptions& options = {});

// Brute-force argmin of the loaded distance over all model centers; used to
// audit convergence.
LabelRaster AssignToNearest(const CoherencyField& coherency,
                            const ClusterModel& model,
                            const LabelRaster& validity);

// Likelihood ratio of the runner-up cluster to the best one,
// exp(-L (d_second - d_best)) with L = looks^2 equivalent looks. Values lie
// in (0, 1]; 1 means a tie. Invalid pixels and single-cluster models get 0.
std::vector<double> RunnerUpRatio(const CoherencyField& coherency,
                                  const ClusterModel& model,
                                  const LabelRaster& labels);

}  // namespace polsar

#endif  // POLSAR_CLUSTER_WISHART_HPP_
