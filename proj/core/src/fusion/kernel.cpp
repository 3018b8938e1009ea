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

#include "polsar/fusion/kernel.hpp"

#include <cmath>

#include "polsar/common/error.hpp"

namespace polsar {
namespace {

void RequireChannels(const Tensor3& t, int channels, const char* what) {
  if (t.channels != channels) {
    throw ValidationError(std::string(what) + ": expected " +
                          std::to_string(channels) + " channels, got " +
                          std::to_string(t.channels));
  }
}

void RequireSameShape(const Tensor3& a, const Tensor3& b, const char* what) {
  if (!a.SameShape(b)) {
    throw ValidationError(std::string(what) + ": input shapes differ");
  }
}

void RequireGrid(const Tensor3& t, const KernelConfig& c, const char* what) {
  RequireChannels(t, c.channels, what);
  if (t.height != c.height || t.width != c.width) {
    throw ValidationError(std::string(what) + ": expected a " +
                          std::to_string(c.height) + "x" +
                          std::to_string(c.width) + " grid");
  }
}

void RequireDivisible(const Tensor3& t, int factor, const char* what) {
  if (t.height % factor != 0 || t.width % factor != 0 || t.height == 0 ||
      t.width == 0) {
    throw ValidationError(std::string(what) + ": " + std::to_string(t.height) +
                          "x" + std::to_string(t.width) +
                          " is not divisible by " + std::to_string(factor));
  }
}

Var LayerNormChannels(Graph& g, Var x, const std::string& prefix) {
  return ad::Transpose(ad::LayerNormRows(ad::Transpose(x),
                                         g.param(prefix + ".gain"),
                                         g.param(prefix + ".bias")));
}

Var Pointwise(Graph& g, Var x, const std::string& prefix) {
  return ad::AddColBias(ad::MatMul(g.param(prefix + ".w"), x),
                        g.param(prefix + ".b"));
}

}  // namespace

Graph::Graph(const KernelWeights& weights, bool track_params)
    : weights_(weights), track_params_(track_params) {}

Var Graph::param(const std::string& name) {
  const auto it = bound_.find(name);
  if (it != bound_.end()) return it->second;
  const Matrix& m = weights_.Get(name);
  Var v = track_params_ ? tape_.Leaf(m) : tape_.Constant(m);
  bound_.emplace(name, v);
  return v;
}

Var Graph::input(Matrix value, bool track) {
  return track ? tape_.Leaf(std::move(value)) : tape_.Constant(std::move(value));
}

void Graph::Record(const std::string& key, Var v) { records_.emplace_back(key, v); }

Matrix ToTokens(const Tensor3& t) { return Transposed(FlattenSpatial(t)); }

Tensor3 FromTokens(const Matrix& tokens, int height, int width) {
  return UnflattenSpatial(Transposed(tokens), height, width);
}

namespace graph {

Var Conv(Graph& g, Var x, int height, int width, const std::string& prefix,
         int kernel, int stride, int pad, ad::Padding padding) {
  Var cols = ad::Im2Col(x, height, width, kernel, stride, pad, padding);
  return ad::AddColBias(ad::MatMul(g.param(prefix + ".w"), cols),
                        g.param(prefix + ".b"));
}

Var PatchEmbed(Graph& g, Var rgb, int height, int width) {
  const int p = KernelConfig::kPatch;
  return Conv(g, rgb, height, width, "patch", p, p, 0);
}

Var Ffp(Graph& g, Var z1, Var z2) {
  Var a = Pointwise(g, z1, "ffp.g1");
  Var weights = ad::SoftmaxRows(a);
  g.Record("ffp.spatial_softmax", weights);
  Var b = Pointwise(g, z2, "ffp.g2");
  return Pointwise(g, ad::Add(ad::Mul(a, weights), b), "ffp.g3");
}

Var FeatureEmbed1(Graph& g, Var rgb, int height, int width) {
  Var x = ad::Gelu(Conv(g, rgb, height, width, "fe1", 3, 1, 1,
                        ad::Padding::kReplicate));
  x = ad::AvgPool2(x, height, width);
  return ad::AvgPool2(x, height / 2, width / 2);
}

Var FeatureEmbed2(Graph& g, Var onehot, int height, int width) {
  Var x = Conv(g, onehot, height, width, "fe2.conv1", 2, 2, 0);
  x = ad::Gelu(LayerNormChannels(g, x, "fe2.ln1"));
  x = Conv(g, x, height / 2, width / 2, "fe2.conv2", 2, 2, 0);
  x = ad::Gelu(LayerNormChannels(g, x, "fe2.ln2"));
  return Pointwise(g, x, "fe2.proj");
}

std::pair<Var, Var> ChannelSplit(Graph& g, Var tokens,
                                 const std::string& prefix) {
  const int c = g.config().channels;
  Var y = ad::AddRowBias(ad::MatMul(tokens, g.param(prefix + ".w")),
                         g.param(prefix + ".b"));
  return {ad::SliceCols(y, 0, c), ad::SliceCols(y, c, c)};
}

Var CrossAttention(Graph& g, Var q, Var kv, const std::string& prefix) {
  Var qp = ad::AddRowBias(ad::MatMul(q, g.param(prefix + ".wq")),
                          g.param(prefix + ".bq"));
  Var kp = ad::AddRowBias(ad::MatMul(kv, g.param(prefix + ".wk")),
                          g.param(prefix + ".bk"));
  Var vp = ad::AddRowBias(ad::MatMul(kv, g.param(prefix + ".wv")),
                          g.param(prefix + ".bv"));
  const double scale = 1.0 / std::sqrt(static_cast<double>(g.config().channels));
  Var attn = ad::SoftmaxRows(ad::Scale(ad::MatMul(qp, ad::Transpose(kp)), scale));
  g.Record(prefix + ".softmax", attn);
  return ad::MatMul(attn, vp);
}

PromptVars Sfp(Graph& g, Var x1, Var x2, Var x3) {
  Var t1 = ad::Transpose(x1);
  Var t2 = ad::Transpose(x2);
  Var t3 = ad::Transpose(x3);
  auto [t1m, t1n] = ChannelSplit(g, t1, "sfp.split1");
  auto [t2m, t2n] = ChannelSplit(g, t2, "sfp.split2");
  auto [t3m, t3n] = ChannelSplit(g, t3, "sfp.split3");
  Var v1 = CrossAttention(g, t1m, t3m, "sfp.ca_v");
  Var v2 = CrossAttention(g, t2m, t3m, "sfp.ca_v");
  Var u1 = CrossAttention(g, t3n, t1n, "sfp.ca_u");
  Var u2 = CrossAttention(g, t3n, t2n, "sfp.ca_u");

  Var s = ad::Add(ad::Scale(ad::Add(v1, u1), 0.5), t1);
  s = ad::AddColBias(ad::MatMul(g.param("sfp.linear1.w"), s),
                     g.param("sfp.linear1.b"));
  Var sparse = ad::LayerNormRows(s, g.param("sfp.norm_s.gain"),
                                 g.param("sfp.norm_s.bias"));

  Var d = ad::AddRowBias(ad::MatMul(ad::ConcatCols(v2, u2),
                                    g.param("sfp.linear2.w")),
                         g.param("sfp.linear2.b"));
  Var dense = ad::LayerNormRows(ad::Add(d, t2), g.param("sfp.norm_d.gain"),
                                g.param("sfp.norm_d.bias"));
  return {sparse, dense};
}

Var ToyEncoder(Graph& g, Var p_f, Var z1, Var z2) {
  Var x = Pointwise(g, ad::ConcatRows({p_f, z1, z2}), "enc.proj");
  Var tokens = ad::Transpose(x);
  for (const std::string block : {"enc.block0", "enc.block1"}) {
    Var normed = ad::LayerNormRows(tokens, g.param(block + ".ln.gain"),
                                   g.param(block + ".ln.bias"));
    tokens = ad::Add(tokens, CrossAttention(g, normed, normed, block + ".attn"));
  }
  return ad::Transpose(tokens);
}

DecoderVars MinimalDecoder(Graph& g, Var f1, Var f2, Var f_fused,
                           const PromptVars& prompts) {
  const KernelConfig& c = g.config();
  Var img = ad::Add(ad::Transpose(ad::Add(ad::Add(f1, f2), f_fused)),
                    prompts.dense);
  Var tokens = ad::Add(prompts.sparse,
                       CrossAttention(g, prompts.sparse, img, "dec.ca_t2i"));
  Var att = ad::Add(img, CrossAttention(g, img, tokens, "dec.ca_i2t"));
  Var f_att = ad::Transpose(att);
  Var up = ad::UpsampleNearest(f_att, c.height, c.width, KernelConfig::kPatch);
  return {ad::MatMul(tokens, up), f_att};
}

}  // namespace graph

Tensor3 PatchEmbed(const Tensor3& rgb, const KernelWeights& w) {
  RequireChannels(rgb, 3, "patch embedding");
  RequireDivisible(rgb, KernelConfig::kPatch, "patch embedding");
  Graph g(w, false);
  Var out = graph::PatchEmbed(g, g.input(FlattenSpatial(rgb)), rgb.height,
                              rgb.width);
  return UnflattenSpatial(out.value(), rgb.height / KernelConfig::kPatch,
                          rgb.width / KernelConfig::kPatch);
}

Tensor3 Ffp(const Tensor3& z1, const Tensor3& z2, const KernelWeights& w) {
  RequireSameShape(z1, z2, "ffp");
  RequireChannels(z1, w.config().channels, "ffp");
  Graph g(w, false);
  Var out = graph::Ffp(g, g.input(FlattenSpatial(z1)), g.input(FlattenSpatial(z2)));
  return UnflattenSpatial(out.value(), z1.height, z1.width);
}

Matrix FfpSpatialWeights(const Tensor3& z1, const KernelWeights& w) {
  RequireChannels(z1, w.config().channels, "ffp");
  Graph g(w, false);
  Var z = g.input(FlattenSpatial(z1));
  graph::Ffp(g, z, z);
  return g.records().front().second.value();
}

Tensor3 FeatureEmbed1(const Tensor3& rgb, const KernelWeights& w) {
  RequireChannels(rgb, 3, "feature embedder 1");
  RequireDivisible(rgb, 4, "feature embedder 1");
  Graph g(w, false);
  Var out = graph::FeatureEmbed1(g, g.input(FlattenSpatial(rgb)), rgb.height,
                                 rgb.width);
  return UnflattenSpatial(out.value(), rgb.height / 4, rgb.width / 4);
}

Tensor3 FeatureEmbed2(const Tensor3& onehot, const KernelWeights& w) {
  RequireChannels(onehot, w.config().mvd_classes, "feature embedder 2");
  RequireDivisible(onehot, 4, "feature embedder 2");
  Graph g(w, false);
  Var out = graph::FeatureEmbed2(g, g.input(FlattenSpatial(onehot)),
                                 onehot.height, onehot.width);
  return UnflattenSpatial(out.value(), onehot.height / 4, onehot.width / 4);
}

std::pair<Tensor3, Tensor3> ChannelSplit(const Tensor3& x,
                                         const KernelWeights& w,
                                         const std::string& prefix) {
  RequireChannels(x, w.config().channels, "channel split");
  Graph g(w, false);
  auto [a, b] = graph::ChannelSplit(g, g.input(ToTokens(x)), prefix);
  return {FromTokens(a.value(), x.height, x.width),
          FromTokens(b.value(), x.height, x.width)};
}

Matrix CrossAttention(const Matrix& q, const Matrix& kv,
                      const KernelWeights& w, const std::string& prefix,
                      Matrix* attention) {
  const int c = w.config().channels;
  if (q.cols != c || kv.cols != c || kv.rows == 0) {
    throw ValidationError("cross attention: token width must equal C");
  }
  Graph g(w, false);
  Var out = graph::CrossAttention(g, g.input(q), g.input(kv), prefix);
  if (attention != nullptr) *attention = g.records().back().second.value();
  return out.value();
}

PromptPair Sfp(const Tensor3& x1, const Tensor3& x2, const Tensor3& x3,
               const KernelWeights& w) {
  RequireGrid(x1, w.config(), "sfp");
  RequireSameShape(x1, x2, "sfp");
  RequireSameShape(x1, x3, "sfp");
  Graph g(w, false);
  PromptVars p = graph::Sfp(g, g.input(FlattenSpatial(x1)),
                            g.input(FlattenSpatial(x2)),
                            g.input(FlattenSpatial(x3)));
  return {p.sparse.value(), p.dense.value(), x1.height, x1.width};
}

std::pair<PromptPair, PromptPair> SfpProgressive(const Tensor3& f1,
                                                 const Tensor3& f2,
                                                 const Tensor3& f_fused,
                                                 const Tensor3& f_att,
                                                 const KernelWeights& w) {
  RequireSameShape(f1, f2, "sfp progressive");
  RequireSameShape(f1, f_fused, "sfp progressive");
  RequireSameShape(f1, f_att, "sfp progressive");
  Tensor3 a = f_fused, b = f_fused;
  for (std::size_t i = 0; i < a.size(); ++i) {
    a.data[i] += f1.data[i];
    b.data[i] += f2.data[i];
  }
  return {Sfp(f1, f2, f_fused, w), Sfp(a, b, f_att, w)};
}

Tensor3 ToyEncoder(const Tensor3& p_f, const Tensor3& z1, const Tensor3& z2,
                   const KernelWeights& w) {
  RequireChannels(p_f, w.config().channels, "toy encoder");
  RequireSameShape(p_f, z1, "toy encoder");
  RequireSameShape(p_f, z2, "toy encoder");
  Graph g(w, false);
  Var out = graph::ToyEncoder(g, g.input(FlattenSpatial(p_f)),
                              g.input(FlattenSpatial(z1)),
                              g.input(FlattenSpatial(z2)));
  return UnflattenSpatial(out.value(), p_f.height, p_f.width);
}

DecoderOutput MinimalDecoder(const Tensor3& f1, const Tensor3& f2,
                             const Tensor3& f_fused, const PromptPair& prompts,
                             const KernelWeights& w) {
  const KernelConfig& c = w.config();
  RequireGrid(f1, c, "minimal decoder");
  RequireSameShape(f1, f2, "minimal decoder");
  RequireSameShape(f1, f_fused, "minimal decoder");
  if (prompts.dense.rows != c.positions() || prompts.dense.cols != c.channels ||
      prompts.sparse.cols != c.channels || prompts.sparse.rows < 1) {
    throw ValidationError("minimal decoder: prompt shapes do not match");
  }
  Graph g(w, false);
  DecoderVars d = graph::MinimalDecoder(
      g, g.input(FlattenSpatial(f1)), g.input(FlattenSpatial(f2)),
      g.input(FlattenSpatial(f_fused)),
      {g.input(prompts.sparse), g.input(prompts.dense)});
  return {UnflattenSpatial(d.scores.value(), c.image_height(), c.image_width()),
          UnflattenSpatial(d.f_att.value(), c.height, c.width)};
}

FusionResult RunFusion(const Tensor3& i1, const Tensor3& i2_rgb,
                       const Tensor3& i2_onehot, const KernelWeights& w) {
  const KernelConfig& c = w.config();
  RequireChannels(i1, 3, "fusion input I1");
  RequireSameShape(i1, i2_rgb, "fusion inputs");
  RequireChannels(i2_onehot, c.mvd_classes, "fusion input I2 one-hot");
  if (i1.height != c.image_height() || i1.width != c.image_width() ||
      i2_onehot.height != i1.height || i2_onehot.width != i1.width) {
    throw ValidationError("fusion inputs must be " +
                          std::to_string(c.image_height()) + "x" +
                          std::to_string(c.image_width()));
  }
  Graph g(w, false);
  const int h = i1.height, wd = i1.width;
  Var i1v = g.input(FlattenSpatial(i1));
  Var z1 = graph::PatchEmbed(g, i1v, h, wd);
  Var z2 = graph::PatchEmbed(g, g.input(FlattenSpatial(i2_rgb)), h, wd);
  Var p_f = graph::Ffp(g, z1, z2);
  Var f_fused = graph::ToyEncoder(g, p_f, z1, z2);
  Var f1 = graph::FeatureEmbed1(g, i1v, h, wd);
  Var f2 = graph::FeatureEmbed2(g, g.input(FlattenSpatial(i2_onehot)), h, wd);
  PromptVars level1 = graph::Sfp(g, f1, f2, f_fused);
  DecoderVars first = graph::MinimalDecoder(g, f1, f2, f_fused, level1);
  PromptVars level2 = graph::Sfp(g, ad::Add(f_fused, f1), ad::Add(f_fused, f2),
                                 first.f_att);
  DecoderVars second = graph::MinimalDecoder(g, f1, f2, f_fused, level2);

  FusionResult r;
  auto grid = [&](Var v) { return UnflattenSpatial(v.value(), c.height, c.width); };
  r.z1 = grid(z1);
  r.z2 = grid(z2);
  r.p_f = grid(p_f);
  r.f_fused = grid(f_fused);
  r.f1 = grid(f1);
  r.f2 = grid(f2);
  r.f_att = grid(first.f_att);
  r.level1 = {level1.sparse.value(), level1.dense.value(), c.height, c.width};
  r.level2 = {level2.sparse.value(), level2.dense.value(), c.height, c.width};
  r.scores = UnflattenSpatial(second.scores.value(), h, wd);
  for (const auto& [key, v] : g.records()) r.softmaxes.emplace_back(key, v.value());
  return r;
}

}  // namespace polsar
