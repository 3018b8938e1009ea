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

#ifndef POLSAR_FUSION_KERNEL_HPP_
#define POLSAR_FUSION_KERNEL_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "polsar/common/tensor3.hpp"
#include "polsar/fusion/tape.hpp"
#include "polsar/fusion/tensor.hpp"
#include "polsar/fusion/weights.hpp"

namespace polsar {

// Sparse prompt [N x C] and dense prompt [HW x C] (an H x W x C tensor).
struct PromptPair {
  Matrix sparse;
  Matrix dense;
  int height = 0;
  int width = 0;
};

// Binds kernel weights onto a fresh tape. With |track_params| every bound
// parameter is a gradient leaf.
class Graph {
 public:
  Graph(const KernelWeights& weights, bool track_params);
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  Tape& tape() { return tape_; }
  const KernelConfig& config() const { return weights_.config(); }
  Var param(const std::string& name);
  Var input(Matrix value, bool track = false);
  const std::map<std::string, Var>& bound_params() const { return bound_; }

  // Named intermediates (softmax outputs) for inspection.
  void Record(const std::string& key, Var v);
  const std::vector<std::pair<std::string, Var>>& records() const {
    return records_;
  }

 private:
  const KernelWeights& weights_;
  bool track_params_;
  Tape tape_;
  std::map<std::string, Var> bound_;
  std::vector<std::pair<std::string, Var>> records_;
};

struct PromptVars {
  Var sparse;
  Var dense;
};

struct DecoderVars {
  Var scores;  // [N x (4H * 4W)]
  Var f_att;   // [C x HW]
};

// Graph builders. Feature maps are [C x HW], token sequences [L x C].
namespace graph {

Var Conv(Graph& g, Var x, int height, int width, const std::string& prefix,
         int kernel, int stride, int pad,
         ad::Padding padding = ad::Padding::kZero);
Var PatchEmbed(Graph& g, Var rgb, int height, int width);
Var Ffp(Graph& g, Var z1, Var z2);
Var FeatureEmbed1(Graph& g, Var rgb, int height, int width);
Var FeatureEmbed2(Graph& g, Var onehot, int height, int width);
std::pair<Var, Var> ChannelSplit(Graph& g, Var tokens,
                                 const std::string& prefix);
Var CrossAttention(Graph& g, Var q, Var kv, const std::string& prefix);
PromptVars Sfp(Graph& g, Var x1, Var x2, Var x3);
Var ToyEncoder(Graph& g, Var p_f, Var z1, Var z2);
DecoderVars MinimalDecoder(Graph& g, Var f1, Var f2, Var f_fused,
                           const PromptVars& prompts);

}  // namespace graph

// Value-level API. Throws ValidationError on shape mismatch.
Tensor3 PatchEmbed(const Tensor3& rgb, const KernelWeights& w);
Tensor3 Ffp(const Tensor3& z1, const Tensor3& z2, const KernelWeights& w);
// Per-channel spatial softmax weights used inside Ffp, [C/4 x hw].
Matrix FfpSpatialWeights(const Tensor3& z1, const KernelWeights& w);
Tensor3 FeatureEmbed1(const Tensor3& rgb, const KernelWeights& w);
Tensor3 FeatureEmbed2(const Tensor3& onehot, const KernelWeights& w);
std::pair<Tensor3, Tensor3> ChannelSplit(const Tensor3& x,
                                         const KernelWeights& w,
                                         const std::string& prefix =
                                             "sfp.split1");
// |q| is [Lq x C], |kv| is [Lk x C]. |attention| receives the [Lq x Lk]
// softmax weights when non-null.
Matrix CrossAttention(const Matrix& q, const Matrix& kv,
                      const KernelWeights& w, const std::string& prefix,
                      Matrix* attention = nullptr);
PromptPair Sfp(const Tensor3& x1, const Tensor3& x2, const Tensor3& x3,
               const KernelWeights& w);
std::pair<PromptPair, PromptPair> SfpProgressive(const Tensor3& f1,
                                                 const Tensor3& f2,
                                                 const Tensor3& f_fused,
                                                 const Tensor3& f_att,
                                                 const KernelWeights& w);
Tensor3 ToyEncoder(const Tensor3& p_f, const Tensor3& z1, const Tensor3& z2,
                   const KernelWeights& w);

struct DecoderOutput {
  Tensor3 scores;  // N x 4H x 4W
  Tensor3 f_att;   // C x H x W
};
DecoderOutput MinimalDecoder(const Tensor3& f1, const Tensor3& f2,
                             const Tensor3& f_fused, const PromptPair& prompts,
                             const KernelWeights& w);

struct FusionResult {
  Tensor3 z1, z2, p_f, f_fused, f1, f2, f_att;
  PromptPair level1, level2;
  Tensor3 scores;
  // Every softmax evaluated, as (label, weights) pairs.
  std::vector<std::pair<std::string, Matrix>> softmaxes;
};

// Full chain: patch embeddings -> FFP -> toy encoder -> SFP-1 -> decoder
// attention -> SFP-2 -> decoder scores. |i1| and |i2_rgb| are 3 x 4H x 4W,
// |i2_onehot| is C_mvd x 4H x 4W.
FusionResult RunFusion(const Tensor3& i1, const Tensor3& i2_rgb,
                       const Tensor3& i2_onehot, const KernelWeights& w);

Matrix ToTokens(const Tensor3& t);
Tensor3 FromTokens(const Matrix& tokens, int height, int width);

}  // namespace polsar

#endif  // POLSAR_FUSION_KERNEL_HPP_
