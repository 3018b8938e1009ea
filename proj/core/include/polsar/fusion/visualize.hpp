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

#ifndef POLSAR_FUSION_VISUALIZE_HPP_
#define POLSAR_FUSION_VISUALIZE_HPP_

#include <vector>

#include "polsar/common/png_io.hpp"
#include "polsar/fusion/kernel.hpp"

namespace polsar {

// V_D is the channel mean of the dense prompt; V_SD[i] the channel mean of
// sparse row i times the dense prompt. All maps are H x W, unnormalized.
struct PromptMaps {
  Matrix v_d;
  std::vector<Matrix> v_sd;
};

PromptMaps VisualizePrompts(const PromptPair& prompts);

// Min-max rescale to [0, 1]; a constant map becomes all zeros.
Matrix NormalizeMinMax(const Matrix& m);

// Grayscale rendering of a map after NormalizeMinMax.
Image8 RenderMap(const Matrix& m);

}  // namespace polsar

#endif  // POLSAR_FUSION_VISUALIZE_HPP_
