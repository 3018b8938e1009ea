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

#include "polsar/eigen/feature_stack.hpp"

#include <algorithm>

#include "polsar/common/error.hpp"

namespace polsar {
namespace {

const std::vector<std::string> kT9Names = {
    "T11", "T22", "T33", "Re_T12", "Im_T12", "Re_T13", "Im_T13", "Re_T23",
    "Im_T23"};
const std::vector<std::string> kT6Names = {"T11",    "T22",    "T33",
                                           "Re_T12", "Re_T13", "Re_T23"};
const std::vector<std::string> kHAAlphaNames = {"H", "A", "alpha_over_90"};

double T9Value(const Matrix3c& t, int channel) {
  switch (channel) {
    case 0: return t(0, 0).real();
    case 1: return t(1, 1).real();
    case 2: return t(2, 2).real();
    case 3: return t(0, 1).real();
    case 4: return t(0, 1).imag();
    case 5: return t(0, 2).real();
    case 6: return t(0, 2).imag();
    case 7: return t(1, 2).real();
    default: return t(1, 2).imag();
  }
}

// Position of each T6 channel inside the T9 layout.
constexpr int kT6InT9[6] = {0, 1, 2, 3, 5, 7};

void AppendT(const CoherencyField& coh, const int* t9_channels, int count,
             FloatStack* stack) {
  const std::size_t n = coh.PixelCount();
  for (int c = 0; c < count; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      stack->data.push_back(T9Value(coh.t[i], t9_channels[c]));
    }
  }
}

void AppendHAAlpha(const EigenFeatures& eig, FloatStack* stack) {
  stack->data.insert(stack->data.end(), eig.entropy.begin(), eig.entropy.end());
  stack->data.insert(stack->data.end(), eig.anisotropy.begin(),
                     eig.anisotropy.end());
  for (double a : eig.alpha) stack->data.push_back(a / 90.0);
}

constexpr int kAllT9[9] = {0, 1, 2, 3, 4, 5, 6, 7, 8};

}  // namespace

std::string_view FeatureKindName(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kHAAlpha3: return "HAalpha3";
    case FeatureKind::kT6: return "T6";
    case FeatureKind::kT9: return "T9";
    case FeatureKind::kHAAlphaT12: return "HAalphaT12";
  }
  return "unknown";
}

std::optional<FeatureKind> ParseFeatureKind(std::string_view name) {
  for (auto kind : {FeatureKind::kHAAlpha3, FeatureKind::kT6, FeatureKind::kT9,
                    FeatureKind::kHAAlphaT12}) {
    if (FeatureKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

int FeatureChannelCount(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kHAAlpha3: return 3;
    case FeatureKind::kT6: return 6;
    case FeatureKind::kT9: return 9;
    case FeatureKind::kHAAlphaT12: return 12;
  }
  return 0;
}

FloatStack FeatureStack(const CoherencyField& coherency,
                        const EigenFeatures& eig, FeatureKind kind) {
  if (coherency.width != eig.width || coherency.height != eig.height ||
      coherency.t.size() != coherency.PixelCount() ||
      eig.entropy.size() != eig.PixelCount()) {
    throw ValidationError("coherency and eigen features differ in dimensions");
  }
  FloatStack stack;
  stack.kind = std::string(FeatureKindName(kind));
  stack.width = coherency.width;
  stack.height = coherency.height;
  stack.data.reserve(stack.PixelCount() * FeatureChannelCount(kind));
  switch (kind) {
    case FeatureKind::kHAAlpha3:
      stack.channels = kHAAlphaNames;
      AppendHAAlpha(eig, &stack);
      break;
    case FeatureKind::kT6:
      stack.channels = kT6Names;
      AppendT(coherency, kT6InT9, 6, &stack);
      break;
    case FeatureKind::kT9:
      stack.channels = kT9Names;
      AppendT(coherency, kAllT9, 9, &stack);
      break;
    case FeatureKind::kHAAlphaT12:
      stack.channels = kHAAlphaNames;
      stack.channels.insert(stack.channels.end(), kT9Names.begin(),
                            kT9Names.end());
      AppendHAAlpha(eig, &stack);
      AppendT(coherency, kAllT9, 9, &stack);
      break;
  }
  return stack;
}

FloatStack CoherencyStack(const CoherencyField& coherency) {
  FloatStack stack;
  stack.kind = "coherency";
  stack.width = coherency.width;
  stack.height = coherency.height;
  stack.channels = kT9Names;
  AppendT(coherency, kAllT9, 9, &stack);
  return stack;
}

CoherencyField CoherencyFromStack(const FloatStack& stack, int looks) {
  std::vector<std::span<const double>> ch;
  for (const auto& name : kT9Names) {
    const auto it = std::find(stack.channels.begin(), stack.channels.end(), name);
    if (it == stack.channels.end()) {
      throw ValidationError("stack lacks channel " + name);
    }
    ch.push_back(stack.Channel(it - stack.channels.begin()));
  }
  CoherencyField coh;
  coh.width = stack.width;
  coh.height = stack.height;
  coh.looks = looks;
  coh.t.resize(coh.PixelCount());
  for (std::size_t i = 0; i < coh.t.size(); ++i) {
    Matrix3c& t = coh.t[i];
    t(0, 0) = ch[0][i];
    t(1, 1) = ch[1][i];
    t(2, 2) = ch[2][i];
    t(0, 1) = cdouble(ch[3][i], ch[4][i]);
    t(0, 2) = cdouble(ch[5][i], ch[6][i]);
    t(1, 2) = cdouble(ch[7][i], ch[8][i]);
    t(1, 0) = std::conj(t(0, 1));
    t(2, 0) = std::conj(t(0, 2));
    t(2, 1) = std::conj(t(1, 2));
  }
  return coh;
}

FloatStack EigenStack(const EigenFeatures& eig) {
  FloatStack stack;
  stack.kind = "eigen";
  stack.width = eig.width;
  stack.height = eig.height;
  stack.channels = {"lambda1", "lambda2", "lambda3", "H", "A", "alpha_deg",
                    "valid"};
  const std::size_t n = eig.PixelCount();
  stack.data.reserve(n * stack.channels.size());
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < n; ++i) stack.data.push_back(eig.lambda[i][c]);
  stack.data.insert(stack.data.end(), eig.entropy.begin(), eig.entropy.end());
  stack.data.insert(stack.data.end(), eig.anisotropy.begin(),
                    eig.anisotropy.end());
  stack.data.insert(stack.data.end(), eig.alpha.begin(), eig.alpha.end());
  for (auto v : eig.valid) stack.data.push_back(v);
  return stack;
}

}  // namespace polsar
