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

#ifndef POLSAR_EIGEN_FEATURE_STACK_HPP_
#define POLSAR_EIGEN_FEATURE_STACK_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "polsar/common/stack_io.hpp"
#include "polsar/decomp/fields.hpp"
#include "polsar/eigen/h_a_alpha.hpp"

namespace polsar {

// Channel layouts:
//   kHAAlpha3   [H, A, alpha/90]
//   kT6         [T11, T22, T33, Re T12, Re T13, Re T23]
//   kT9         [T11, T22, T33, Re T12, Im T12, Re T13, Im T13, Re T23, Im T23]
//   kHAAlphaT12 kHAAlpha3 followed by kT9
enum class FeatureKind { kHAAlpha3, kT6, kT9, kHAAlphaT12 };

std::string_view FeatureKindName(FeatureKind kind);
std::optional<FeatureKind> ParseFeatureKind(std::string_view name);
int FeatureChannelCount(FeatureKind kind);

// Throws ValidationError when the inputs disagree on dimensions.
FloatStack FeatureStack(const CoherencyField& coherency,
                        const EigenFeatures& eig, FeatureKind kind);

// T9 stack without eigen features (used for the coherency payload).
FloatStack CoherencyStack(const CoherencyField& coherency);

// Rebuilds Hermitian matrices from a stack carrying the T9 channels.
CoherencyField CoherencyFromStack(const FloatStack& stack, int looks);

// [lambda1, lambda2, lambda3, H, A, alpha_deg, valid] for inspection.
FloatStack EigenStack(const EigenFeatures& eig);

}  // namespace polsar

#endif  // POLSAR_EIGEN_FEATURE_STACK_HPP_
