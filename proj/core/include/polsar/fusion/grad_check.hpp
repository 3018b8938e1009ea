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

#ifndef POLSAR_FUSION_GRAD_CHECK_HPP_
#define POLSAR_FUSION_GRAD_CHECK_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "polsar/fusion/tensor.hpp"
#include "polsar/fusion/weights.hpp"

namespace polsar {

enum class GradOp {
  kPatchEmbed,
  kFfp,
  kFeatureEmbed1,
  kFeatureEmbed2,
  kChannelSplit,
  kCrossAttention,
  kSfp,
  kSfpProgressive,
  kToyEncoder,
  kMinimalDecoder,
  kCeLoss,
  kFocalLoss,
};

std::vector<GradOp> AllGradOps();
std::string_view GradOpName(GradOp op);

struct GradCheckReport {
  double max_relative_error = 0.0;
  std::string worst;  // "<parameter or input>[index]"
  std::size_t checked = 0;
};

// Seeded random inputs of the right shapes for |op| under |config|.
std::vector<Matrix> DefaultGradInputs(GradOp op, const KernelConfig& config,
                                      std::uint64_t seed);

// Compares analytic gradients of sum(out (.) R), R seeded uniform, against
// central differences at |epsilon| for every parameter the op reads and
// every input. Relative error is |a - n| / max(|a|, |n|, 1e-6 max(1, |f|))
// with f the unperturbed objective. Throws NumericError for a non-finite
// gradient.
GradCheckReport GradCheck(GradOp op, const KernelWeights& weights,
                          const std::vector<Matrix>& inputs, double epsilon,
                          std::uint64_t seed = 7);

}  // namespace polsar

#endif  // POLSAR_FUSION_GRAD_CHECK_HPP_
