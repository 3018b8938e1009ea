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

#ifndef POLSAR_FUSION_WEIGHTS_HPP_
#define POLSAR_FUSION_WEIGHTS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "polsar/fusion/tensor.hpp"

namespace polsar {

struct KernelConfig {
  static constexpr int kPatch = 4;  // patch size and total embedder stride

  int channels = 32;
  int height = 16;  // embedding grid
  int width = 16;
  int sparse_prompts = 6;
  int mvd_classes = 13;

  int reduced_channels() const { return channels >= 4 ? channels / 4 : 1; }
  int positions() const { return height * width; }
  int image_height() const { return height * kPatch; }
  int image_width() const { return width * kPatch; }
  // Throws ValidationError for non-positive sizes.
  void Validate() const;
  bool operator==(const KernelConfig&) const = default;
};

struct ParameterShape {
  std::string name;
  int rows = 0;
  int cols = 0;
  int fan_in = 1;
  enum class Init { kUniform, kOnes, kZeros } init = Init::kUniform;
};

// Every parameter of the fusion kernel for |config|, in a fixed order.
std::vector<ParameterShape> ParameterShapes(const KernelConfig& config);

class KernelWeights {
 public:
  // Uniform in +-1/sqrt(fan_in) from a seeded generator; normalization gains
  // start at 1 and their biases at 0.
  static KernelWeights Init(const KernelConfig& config, std::uint64_t seed);

  const KernelConfig& config() const { return config_; }
  std::uint64_t seed() const { return seed_; }
  const Matrix& Get(const std::string& name) const;
  Matrix& Mutable(const std::string& name);
  bool Has(const std::string& name) const { return params_.contains(name); }
  const std::map<std::string, Matrix>& params() const { return params_; }
  std::size_t ParameterCount() const;

  // Throws ValidationError on shape drift or NumericError on non-finite
  // values.
  void Validate() const;
  bool operator==(const KernelWeights&) const = default;

 private:
  KernelConfig config_;
  std::uint64_t seed_ = 0;
  std::map<std::string, Matrix> params_;

  friend KernelWeights ReadWeights(const std::filesystem::path&);
};

// <base>.json manifest plus <base>.f32 payload; values are stored as float32.
std::filesystem::path WriteWeights(const std::filesystem::path& base,
                                   const KernelWeights& weights);
KernelWeights ReadWeights(const std::filesystem::path& manifest_path);

}  // namespace polsar

#endif  // POLSAR_FUSION_WEIGHTS_HPP_
