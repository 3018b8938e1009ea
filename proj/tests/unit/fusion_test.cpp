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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "polsar/common/error.hpp"
#include "polsar/fusion/grad_check.hpp"
#include "polsar/fusion/kernel.hpp"
#include "polsar/fusion/losses.hpp"
#include "polsar/fusion/tape.hpp"
#include "polsar/fusion/visualize.hpp"
#include "polsar/fusion/weights.hpp"
#include "support/fusion_oracle.hpp"
#include "support/test_support.hpp"

namespace polsar {
namespace {

using oracle::Grid;
using oracle::MaxAbsDiff;
using oracle::RandomTensor;

KernelConfig SmallConfig() {
  KernelConfig c;
  c.channels = 8;
  c.height = 4;
  c.width = 4;
  c.sparse_prompts = 6;
  c.mvd_classes = 5;
  return c;
}

TEST(Weights, SeededInitIsDeterministic) {
  const KernelWeights a = KernelWeights::Init(SmallConfig(), 3);
  const KernelWeights b = KernelWeights::Init(SmallConfig(), 3);
  const KernelWeights c = KernelWeights::Init(SmallConfig(), 4);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a == c);
  EXPECT_EQ(a.Get("sfp.norm_d.gain").data, std::vector<double>(8, 1.0));
  EXPECT_EQ(a.Get("sfp.norm_d.bias").data, std::vector<double>(8, 0.0));
  const Matrix& patch = a.Get("patch.w");
  const double bound = 1.0 / std::sqrt(48.0);
  for (double v : patch.data) EXPECT_LE(std::abs(v), bound);
  EXPECT_EQ(a.Get("sfp.linear1.w").rows, 6);
  EXPECT_EQ(a.Get("sfp.linear1.w").cols, 16);
}

TEST(Weights, RoundTripThroughFloat32) {
  testing::TempDir dir;
  const KernelWeights w = KernelWeights::Init(SmallConfig(), 9);
  const auto path = WriteWeights(dir / "weights", w);
  const KernelWeights back = ReadWeights(path);
  EXPECT_EQ(back.config(), w.config());
  for (const auto& [name, m] : w.params()) {
    const Matrix& r = back.Get(name);
    for (std::size_t i = 0; i < m.size(); ++i) {
      EXPECT_EQ(r.data[i], static_cast<double>(static_cast<float>(m.data[i])));
    }
  }
  EXPECT_THROW(w.Get("missing"), ValidationError);
}

TEST(Tape, MatMulGradient) {
  Tape t;
  Matrix a(2, 3), b(3, 2);
  std::iota(a.data.begin(), a.data.end(), 1.0);
  std::iota(b.data.begin(), b.data.end(), -2.0);
  Var va = t.Leaf(a), vb = t.Leaf(b);
  Matrix ones(2, 2, 1.0);
  Var loss = ad::DotConst(ad::MatMul(va, vb), ones);
  t.Backward(loss);
  // d/dA sum(AB) = 1 B^T
  const Matrix expect_a = MatMul(ones, Transposed(b));
  const Matrix expect_b = MatMul(Transposed(a), ones);
  EXPECT_EQ(va.grad(), expect_a);
  EXPECT_EQ(vb.grad(), expect_b);
}

TEST(Ffp, ConstantInputGivesUniformWeights) {
  const KernelWeights w = KernelWeights::Init(SmallConfig(), 1);
  const Tensor3 z1(8, 3, 3, 0.7);
  const Matrix s = FfpSpatialWeights(z1, w);
  ASSERT_EQ(s.rows, 2);
  for (double v : s.data) EXPECT_NEAR(v, 1.0 / 9.0, 1e-15);
}

TEST(Ffp, ZeroSecondBranchDropsOut) {
  KernelWeights w = KernelWeights::Init(SmallConfig(), 2);
  for (double& v : w.Mutable("ffp.g2.w").data) v = 0;
  for (double& v : w.Mutable("ffp.g2.b").data) v = 0;
  const Tensor3 z1 = RandomTensor(1, 8, 3, 3);
  const Tensor3 z2 = RandomTensor(2, 8, 3, 3);
  const Tensor3 zero(8, 3, 3);
  EXPECT_EQ(Ffp(z1, z2, w), Ffp(z1, zero, w));
  // g3(g1(z1) (.) softmax(g1(z1)))
  Grid a = oracle::Pointwise(w, "ffp.g1", oracle::Map(z1), 3, 3);
  Grid s = a;
  oracle::SoftmaxRowsInPlace(s);
  for (std::size_t c = 0; c < a.size(); ++c) {
    for (std::size_t i = 0; i < a[c].size(); ++i) a[c][i] *= s[c][i];
  }
  const Tensor3 want = oracle::ToTensor(oracle::Pointwise(w, "ffp.g3", a, 3, 3), 3, 3);
  EXPECT_LT(MaxAbsDiff(Ffp(z1, z2, w), want), 1e-12);
}

TEST(Ffp, MatchesScalarOracle) {
  KernelConfig c = SmallConfig();
  c.channels = 4;
  const KernelWeights w = KernelWeights::Init(c, 5);
  const Tensor3 z1 = RandomTensor(3, 4, 3, 3), z2 = RandomTensor(4, 4, 3, 3);
  EXPECT_LT(MaxAbsDiff(Ffp(z1, z2, w), oracle::Ffp(z1, z2, w)), 1e-6);
}

TEST(PatchEmbed, MatchesScalarOracle) {
  const KernelWeights w = KernelWeights::Init(SmallConfig(), 6);
  const Tensor3 rgb = RandomTensor(5, 3, 16, 12, 0, 1);
  const Tensor3 z = PatchEmbed(rgb, w);
  EXPECT_EQ(z.height, 4);
  EXPECT_EQ(z.width, 3);
  EXPECT_LT(MaxAbsDiff(z, oracle::PatchEmbed(rgb, w)), 1e-12);
}

TEST(FeatureEmbed1, ShapeAndOracle) {
  const KernelWeights w = KernelWeights::Init(SmallConfig(), 7);
  const Tensor3 rgb = RandomTensor(6, 3, 8, 8, 0, 1);
  const Tensor3 f = FeatureEmbed1(rgb, w);
  EXPECT_EQ(f.channels, 8);
  EXPECT_EQ(f.height, 2);
  EXPECT_EQ(f.width, 2);
  EXPECT_LT(MaxAbsDiff(f, oracle::FeatureEmbed1(rgb, w)), 1e-6);
}

TEST(FeatureEmbed1, ConstantInputIdentityKernel) {
  KernelWeights w = KernelWeights::Init(SmallConfig(), 8);
  Matrix& k = w.Mutable("fe1.w");
  std::fill(k.data.begin(), k.data.end(), 0.0);
  for (int o = 0; o < k.rows; ++o) k.at(o, (o % 3) * 9 + 4) = 1.0;  // centre tap
  std::fill(w.Mutable("fe1.b").data.begin(), w.Mutable("fe1.b").data.end(), 0.0);
  const Tensor3 rgb(3, 8, 8, 0.4);
  const Tensor3 f = FeatureEmbed1(rgb, w);
  for (double v : f.data) EXPECT_NEAR(v, oracle::Gelu(0.4), 1e-15);
}

TEST(FeatureEmbed2, MatchesScalarOracle) {
  const KernelWeights w = KernelWeights::Init(SmallConfig(), 9);
  const Tensor3 onehot = RandomTensor(7, 5, 8, 8, 0, 1);
  const Tensor3 f = FeatureEmbed2(onehot, w);
  EXPECT_EQ(f.height, 2);
  EXPECT_LT(MaxAbsDiff(f, oracle::FeatureEmbed2(onehot, w)), 1e-6);
}

TEST(FeatureEmbed2, AllOtherDependsOnlyOnOtherChannel) {
  const KernelConfig c = SmallConfig();
  KernelWeights w = KernelWeights::Init(c, 10);
  Tensor3 onehot(5, 8, 8, 0.0);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) onehot.at(4, y, x) = 1.0;
  }
  const Tensor3 before = FeatureEmbed2(onehot, w);
  Matrix& k = w.Mutable("fe2.conv1.w");
  for (int o = 0; o < k.rows; ++o) {
    for (int col = 0; col < 4 * 4; ++col) k.at(o, col) += 0.3;  // channels 0..3
  }
  EXPECT_EQ(FeatureEmbed2(onehot, w), before);
}

TEST(ChannelSplit, IdentityStacks) {
  KernelWeights w = KernelWeights::Init(SmallConfig(), 11);
  Matrix& m = w.Mutable("sfp.split1.w");
  std::fill(m.data.begin(), m.data.end(), 0.0);
  std::fill(w.Mutable("sfp.split1.b").data.begin(),
            w.Mutable("sfp.split1.b").data.end(), 0.0);
  for (int i = 0; i < 8; ++i) m.at(i, i) = 1.0;
  const Tensor3 x = RandomTensor(8, 8, 4, 4);
  auto [a, b] = ChannelSplit(x, w);
  EXPECT_EQ(a, x);
  EXPECT_EQ(b, Tensor3(8, 4, 4));
  for (int i = 0; i < 8; ++i) m.at(i, 8 + i) = 1.0;
  auto [c, d] = ChannelSplit(x, w);
  EXPECT_EQ(c, x);
  EXPECT_EQ(d, x);
}

TEST(ChannelSplit, MatchesScalarOracle) {
  const KernelWeights w = KernelWeights::Init(SmallConfig(), 12);
  const Tensor3 x = RandomTensor(9, 8, 4, 4);
  auto [a, b] = ChannelSplit(x, w, "sfp.split2");
  auto [oa, ob] = oracle::Split(w, "sfp.split2", oracle::Transpose(oracle::Map(x)));
  EXPECT_LT(MaxAbsDiff(a, oracle::ToTensor(oracle::Transpose(oa), 4, 4)), 1e-12);
  EXPECT_LT(MaxAbsDiff(b, oracle::ToTensor(oracle::Transpose(ob), 4, 4)), 1e-12);
}

Matrix RandomTokens(std::uint64_t seed, int rows, int cols) {
  const Tensor3 t = RandomTensor(seed, 1, rows, cols);
  Matrix m(rows, cols);
  m.data = t.data;
  return m;
}

TEST(CrossAttention, SingletonReturnsValueProjection) {
  const KernelWeights w = KernelWeights::Init(SmallConfig(), 13);
  const Matrix q = RandomTokens(1, 5, 8), kv = RandomTokens(2, 1, 8);
  Matrix attn;
  const Matrix out = CrossAttention(q, kv, w, "sfp.ca_v", &attn);
  const Grid vp = oracle::Linear(oracle::FromMatrix(kv),
                                 oracle::Param(w, "sfp.ca_v.wv"),
                                 oracle::Param(w, "sfp.ca_v.bv"));
  for (int r = 0; r < 5; ++r) {
    EXPECT_EQ(attn.at(r, 0), 1.0);
    for (int c = 0; c < 8; ++c) EXPECT_NEAR(out.at(r, c), vp[0][c], 1e-14);
  }
}

TEST(CrossAttention, IdenticalKeysGiveIdenticalRows) {
  const KernelWeights w = KernelWeights::Init(SmallConfig(), 14);
  const Matrix q = RandomTokens(3, 4, 8);
  Matrix kv(6, 8);
  const Matrix row = RandomTokens(4, 1, 8);
  for (int r = 0; r < 6; ++r) {
    std::copy(row.data.begin(), row.data.end(), kv.data.begin() + r * 8);
  }
  const Matrix out = CrossAttention(q, kv, w, "sfp.ca_u");
  for (int r = 1; r < 4; ++r) {
    for (int c = 0; c < 8; ++c) EXPECT_NEAR(out.at(r, c), out.at(0, c), 1e-14);
  }
}

TEST(CrossAttention, MatchesScalarOracleAndNormalizes) {
  const KernelWeights w = KernelWeights::Init(SmallConfig(), 15);
  const Matrix q = RandomTokens(5, 6, 8), kv = RandomTokens(6, 6, 8);
  Matrix attn;
  const Matrix out = CrossAttention(q, kv, w, "dec.ca_t2i", &attn);
  EXPECT_LT(MaxAbsDiff(oracle::FromMatrix(out),
                       oracle::Attention(w, "dec.ca_t2i", oracle::FromMatrix(q),
                                         oracle::FromMatrix(kv))),
            1e-6);
  for (int r = 0; r < attn.rows; ++r) {
    double s = 0;
    for (int c = 0; c < attn.cols; ++c) s += attn.at(r, c);
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(CrossAttention, QueryPermutationEquivariance) {
  const KernelWeights w = KernelWeights::Init(SmallConfig(), 16);
  const Matrix q = RandomTokens(7, 5, 8), kv = RandomTokens(8, 7, 8);
  const std::vector<int> perm = {3, 0, 4, 1, 2};
  Matrix qp(5, 8), kvp = kv;
  for (int r = 0; r < 5; ++r) {
    for (int c = 0; c < 8; ++c) qp.at(r, c) = q.at(perm[r], c);
  }
  std::swap_ranges(kvp.data.begin(), kvp.data.begin() + 8, kvp.data.begin() + 40);
  const Matrix a = CrossAttention(q, kv, w, "sfp.ca_v");
  const Matrix b = CrossAttention(qp, kvp, w, "sfp.ca_v");
  for (int r = 0; r < 5; ++r) {
    for (int c = 0; c < 8; ++c) EXPECT_NEAR(b.at(r, c), a.at(perm[r], c), 1e-12);
  }
}

TEST(Sfp, ShapesForSixPrompts) {
  const KernelWeights w = KernelWeights::Init(SmallConfig(), 17);
  const PromptPair p = Sfp(RandomTensor(1, 8, 4, 4), RandomTensor(2, 8, 4, 4),
                           RandomTensor(3, 8, 4, 4), w);
  EXPECT_EQ(p.sparse.rows, 6);
  EXPECT_EQ(p.sparse.cols, 8);
  EXPECT_EQ(p.dense.rows, 16);
  EXPECT_EQ(p.dense.cols, 8);
  EXPECT_EQ(p.height, 4);
  EXPECT_EQ(p.width, 4);
}

TEST(Sfp, MatchesScalarOracle) {
  const KernelWeights w = KernelWeights::Init(SmallConfig(), 18);
  const Tensor3 x1 = RandomTensor(4, 8, 4, 4), x2 = RandomTensor(5, 8, 4, 4),
                x3 = RandomTensor(6, 8, 4, 4);
  const PromptPair p = Sfp(x1, x2, x3, w);
  const oracle::Prompts o = oracle::Sfp(x1, x2, x3, w);
  EXPECT_LT(MaxAbsDiff(oracle::FromMatrix(p.sparse), o.sparse), 1e-5);
  EXPECT_LT(MaxAbsDiff(oracle::FromMatrix(p.dense), o.dense), 1e-5);
}

TEST(SfpProgressive, ZeroFusedReducesToBaseInputs) {
  const KernelWeights w = KernelWeights::Init(SmallConfig(), 19);
  const Tensor3 f1 = RandomTensor(1, 8, 4, 4), f2 = RandomTensor(2, 8, 4, 4),
                att = RandomTensor(3, 8, 4, 4), zero(8, 4, 4);
  const auto [l1, l2] = SfpProgressive(f1, f2, zero, att, w);
  const PromptPair want = Sfp(f1, f2, att, w);
  EXPECT_EQ(l2.sparse, want.sparse);
  EXPECT_EQ(l2.dense, want.dense);
  EXPECT_EQ(l1.sparse, Sfp(f1, f2, zero, w).sparse);
}

TEST(SfpProgressive, MatchesComposedOracle) {
  const KernelWeights w = KernelWeights::Init(SmallConfig(), 20);
  const Tensor3 f1 = RandomTensor(7, 8, 4, 4), f2 = RandomTensor(8, 8, 4, 4),
                fused = RandomTensor(9, 8, 4, 4), att = RandomTensor(10, 8, 4, 4);
  const auto [l1, l2] = SfpProgressive(f1, f2, fused, att, w);
  Tensor3 a = fused, b = fused;
  for (std::size_t i = 0; i < a.size(); ++i) {
    a.data[i] = f1.data[i] + fused.data[i];
    b.data[i] = f2.data[i] + fused.data[i];
  }
  const oracle::Prompts o1 = oracle::Sfp(f1, f2, fused, w);
  const oracle::Prompts o2 = oracle::Sfp(a, b, att, w);
  EXPECT_LT(MaxAbsDiff(oracle::FromMatrix(l1.sparse), o1.sparse), 1e-5);
  EXPECT_LT(MaxAbsDiff(oracle::FromMatrix(l2.dense), o2.dense), 1e-5);
  EXPECT_LT(MaxAbsDiff(oracle::FromMatrix(l2.sparse), o2.sparse), 1e-5);
}

TEST(ToyEncoder, ShapeAndOracle) {
  const KernelWeights w = KernelWeights::Init(SmallConfig(), 21);
  const Tensor3 pf = RandomTensor(1, 8, 4, 4), z1 = RandomTensor(2, 8, 4, 4),
                z2 = RandomTensor(3, 8, 4, 4);
  const Tensor3 out = ToyEncoder(pf, z1, z2, w);
  EXPECT_TRUE(out.SameShape(pf));
  EXPECT_LT(MaxAbsDiff(out, oracle::ToyEncoder(pf, z1, z2, w)), 1e-6);
  EXPECT_EQ(out, ToyEncoder(pf, z1, z2, w));
}

TEST(MinimalDecoder, CardinalityAndOracle) {
  KernelConfig c = SmallConfig();
  c.sparse_prompts = 2;
  const KernelWeights w = KernelWeights::Init(c, 22);
  const Tensor3 f1 = RandomTensor(1, 8, 4, 4), f2 = RandomTensor(2, 8, 4, 4),
                ff = RandomTensor(3, 8, 4, 4);
  PromptPair p;
  p.sparse = RandomTokens(4, 2, 8);
  p.dense = RandomTokens(5, 16, 8);
  p.height = p.width = 4;
  const DecoderOutput d = MinimalDecoder(f1, f2, ff, p, w);
  EXPECT_EQ(d.scores.channels, 2);
  EXPECT_EQ(d.scores.height, 16);
  const oracle::Decoded o = oracle::MinimalDecoder(
      f1, f2, ff, {oracle::FromMatrix(p.sparse), oracle::FromMatrix(p.dense)}, w);
  EXPECT_LT(MaxAbsDiff(d.scores, o.scores), 1e-6);
  EXPECT_LT(MaxAbsDiff(d.f_att, o.f_att), 1e-6);
}

TEST(MinimalDecoder, UniformFeaturesGiveUniformMaps) {
  const KernelWeights w = KernelWeights::Init(SmallConfig(), 23);
  const Tensor3 f(8, 4, 4, 0.25);
  PromptPair p;
  p.sparse = RandomTokens(6, 6, 8);
  p.dense = Matrix(16, 8);
  const Matrix row = RandomTokens(7, 1, 8);
  for (int r = 0; r < 16; ++r) {
    std::copy(row.data.begin(), row.data.end(), p.dense.data.begin() + r * 8);
  }
  p.height = p.width = 4;
  const DecoderOutput d = MinimalDecoder(f, f, f, p, w);
  for (int n = 0; n < 6; ++n) {
    for (int y = 0; y < 16; ++y) {
      for (int x = 0; x < 16; ++x) EXPECT_NEAR(d.scores.at(n, y, x), d.scores.at(n, 0, 0), 1e-12);
    }
  }
}

TEST(RunFusion, SoftmaxesNormalizeAndShapes) {
  const KernelWeights w = KernelWeights::Init(SmallConfig(), 24);
  const Tensor3 i1 = RandomTensor(1, 3, 16, 16, 0, 1);
  const Tensor3 i2 = RandomTensor(2, 3, 16, 16, 0, 1);
  Tensor3 onehot(5, 16, 16);
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) onehot.at((x + y) % 5, y, x) = 1;
  }
  const FusionResult r = RunFusion(i1, i2, onehot, w);
  EXPECT_EQ(r.scores.channels, 6);
  EXPECT_EQ(r.scores.height, 16);
  // ffp 1, encoder 2, two SFP passes 4 each, two decoder passes 2 each
  EXPECT_EQ(r.softmaxes.size(), 15u);
  for (const auto& [name, m] : r.softmaxes) {
    for (int row = 0; row < m.rows; ++row) {
      double s = 0;
      for (int c = 0; c < m.cols; ++c) s += m.at(row, c);
      EXPECT_NEAR(s, 1.0, 1e-6) << name;
    }
  }
  EXPECT_THROW(RunFusion(i1, i2, Tensor3(4, 16, 16), w), ValidationError);
}

TEST(Losses, CrossEntropyExamples) {
  Matrix pred(1, 2), labels(1, 2);
  pred.data = {1.0, 0.0};
  labels.data = {1.0, 0.0};
  EXPECT_EQ(CeLoss(pred, labels), 0.0);
  EXPECT_EQ(CeLossGradient(pred, labels).data, (std::vector<double>{-1.0, 0.0}));
  for (double gamma : {0.0, 0.5, 2.0}) {
    EXPECT_EQ(FocalLoss(pred, labels, std::vector<double>{0.25, 0.75}, gamma), 0.0);
    EXPECT_TRUE(FocalLossGradient(pred, labels, std::vector<double>{0.25, 0.75}, gamma)
                    .AllFinite());
  }
  pred.data = {0.5, 0.5};
  EXPECT_NEAR(CeLoss(pred, labels), std::log(2.0), 1e-15);
}

Matrix RandomProbabilities(std::mt19937_64& rng, int s, int k) {
  std::uniform_real_distribution<double> u(-2, 2);
  Matrix scores(s, k);
  for (double& v : scores.data) v = u(rng);
  return SoftmaxRowsOf(scores);
}

Matrix RandomOneHot(std::mt19937_64& rng, int s, int k) {
  std::uniform_int_distribution<int> d(0, k - 1);
  Matrix m(s, k);
  for (int r = 0; r < s; ++r) m.at(r, d(rng)) = 1.0;
  return m;
}

TEST(Losses, MatchScalarOracle) {
  std::mt19937_64 rng(3);
  const Matrix pred = RandomProbabilities(rng, 20, 4);
  const Matrix labels = RandomOneHot(rng, 20, 4);
  const std::vector<double> prop = {0.1, 0.2, 0.3, 0.4};
  EXPECT_NEAR(CeLoss(pred, labels),
              oracle::CrossEntropy(oracle::FromMatrix(pred), oracle::FromMatrix(labels)),
              1e-12);
  EXPECT_NEAR(FocalLoss(pred, labels, prop, 1.5),
              oracle::Focal(oracle::FromMatrix(pred), oracle::FromMatrix(labels), prop,
                            1.5),
              1e-12);
}

TEST(Losses, FocalReducesToScaledCrossEntropy) {
  std::mt19937_64 rng(4);
  for (int k : {2, 3, 7}) {
    const Matrix pred = RandomProbabilities(rng, 15, k);
    const Matrix labels = RandomOneHot(rng, 15, k);
    const std::vector<double> prop(k, 1.0 / k);
    EXPECT_NEAR(FocalLoss(pred, labels, prop, 0.0), k * CeLoss(pred, labels), 1e-12);
  }
}

TEST(Losses, FocalWorkedExample) {
  Matrix pred(1, 2), labels(1, 2);
  pred.data = {0.9, 0.1};
  labels.data = {1.0, 0.0};
  const std::vector<double> prop = {0.5, 0.5};
  const double loss = FocalLoss(pred, labels, prop, 2.0);
  EXPECT_NEAR(loss, -2.0 * 0.01 * std::log(0.9), 1e-15);
  EXPECT_NEAR(loss, 0.0021072, 1e-7);
}

TEST(Losses, Validation) {
  Matrix pred(1, 2), labels(1, 2);
  pred.data = {0.7, 0.2};
  labels.data = {1.0, 0.0};
  EXPECT_THROW(CeLoss(pred, labels), ValidationError);
  pred.data = {0.0, 1.0};
  EXPECT_THROW(CeLoss(pred, labels), ValidationError);
  pred.data = {0.8, 0.2};
  labels.data = {1.0, 1.0};
  EXPECT_THROW(CeLoss(pred, labels), ValidationError);
  labels.data = {1.0, 0.0};
  EXPECT_THROW(FocalLoss(pred, labels, std::vector<double>{0.0, 1.0}, 2), ValidationError);
  EXPECT_THROW(FocalLoss(pred, labels, std::vector<double>{0.3, 0.3}, 2), ValidationError);
  EXPECT_THROW(FocalLoss(pred, labels, std::vector<double>{0.5, 0.5}, -1), ValidationError);
}

TEST(Losses, GradientsMatchCentralDifferences) {
  std::mt19937_64 rng(5);
  const Matrix pred = RandomProbabilities(rng, 6, 3);
  const Matrix labels = RandomOneHot(rng, 6, 3);
  const std::vector<double> prop = {0.2, 0.3, 0.5};
  const Matrix g_ce = CeLossGradient(pred, labels);
  const Matrix g_fl = FocalLossGradient(pred, labels, prop, 2.0);
  const double h = 1e-6;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    Matrix up = pred, dn = pred;
    up.data[i] += h;
    dn.data[i] -= h;
    EXPECT_NEAR(g_ce.data[i],
                (CeLossUnchecked(up, labels) - CeLossUnchecked(dn, labels)) / (2 * h),
                1e-6);
    EXPECT_NEAR(g_fl.data[i],
                (FocalLossUnchecked(up, labels, prop, 2.0) -
                 FocalLossUnchecked(dn, labels, prop, 2.0)) /
                    (2 * h),
                1e-6);
  }
}

TEST(GradCheck, EveryOpBelowTolerance) {
  KernelConfig c;
  c.channels = 4;
  c.height = 2;
  c.width = 2;
  c.sparse_prompts = 3;
  c.mvd_classes = 5;
  const KernelWeights w = KernelWeights::Init(c, 31);
  for (GradOp op : AllGradOps()) {
    const GradCheckReport r = GradCheck(op, w, DefaultGradInputs(op, c, 5), 1e-5);
    EXPECT_LT(r.max_relative_error, 1e-4) << GradOpName(op) << " worst " << r.worst;
    EXPECT_GT(r.checked, 0u) << GradOpName(op);
  }
  EXPECT_EQ(AllGradOps().size(), 12u);
}

TEST(Visualize, PromptMapsAndNormalization) {
  PromptPair p;
  p.height = 2;
  p.width = 2;
  p.dense = Matrix(4, 2);
  p.dense.data = {1, 3, 2, 2, 0, 0, 4, 4};
  p.sparse = Matrix(1, 2);
  p.sparse.data = {1, -1};
  const PromptMaps maps = VisualizePrompts(p);
  EXPECT_EQ(maps.v_d.data, (std::vector<double>{2, 2, 0, 4}));
  ASSERT_EQ(maps.v_sd.size(), 1u);
  EXPECT_EQ(maps.v_sd[0].data, (std::vector<double>{-1, 0, 0, 0}));
  EXPECT_EQ(NormalizeMinMax(maps.v_d).data, (std::vector<double>{0.5, 0.5, 0, 1}));
  EXPECT_EQ(NormalizeMinMax(Matrix(2, 2, 3.0)).data, std::vector<double>(4, 0.0));
  const Image8 img = RenderMap(maps.v_d);
  EXPECT_EQ(img.channels, 1);
  EXPECT_EQ(img.pixels[3], 255);
}

}  // namespace
}  // namespace polsar
