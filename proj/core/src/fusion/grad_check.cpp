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

#include "polsar/fusion/grad_check.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "polsar/common/error.hpp"
#include "polsar/fusion/kernel.hpp"
#include "polsar/fusion/losses.hpp"

namespace polsar {
namespace {

constexpr double kRelativeFloor = 1e-6;

Matrix RandomMatrix(int rows, int cols, std::mt19937_64& rng,
                    double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Matrix m(rows, cols);
  for (double& v : m.data) v = dist(rng);
  return m;
}

// Builds the op's output on |g| from input vars.
Var BuildOp(GradOp op, Graph& g, const std::vector<Var>& in) {
  const KernelConfig& c = g.config();
  const int ih = c.image_height(), iw = c.image_width();
  switch (op) {
    case GradOp::kPatchEmbed:
      return graph::PatchEmbed(g, in[0], ih, iw);
    case GradOp::kFfp:
      return graph::Ffp(g, in[0], in[1]);
    case GradOp::kFeatureEmbed1:
      return graph::FeatureEmbed1(g, in[0], ih, iw);
    case GradOp::kFeatureEmbed2:
      return graph::FeatureEmbed2(g, in[0], ih, iw);
    case GradOp::kChannelSplit: {
      auto [a, b] = graph::ChannelSplit(g, in[0], "sfp.split1");
      return ad::ConcatCols(a, b);
    }
    case GradOp::kCrossAttention:
      return graph::CrossAttention(g, in[0], in[1], "sfp.ca_v");
    case GradOp::kSfp: {
      PromptVars p = graph::Sfp(g, in[0], in[1], in[2]);
      return ad::ConcatRows({p.sparse, p.dense});
    }
    case GradOp::kSfpProgressive: {
      PromptVars a = graph::Sfp(g, in[0], in[1], in[2]);
      PromptVars b = graph::Sfp(g, ad::Add(in[2], in[0]), ad::Add(in[2], in[1]),
                                in[3]);
      return ad::ConcatRows({a.sparse, a.dense, b.sparse, b.dense});
    }
    case GradOp::kToyEncoder:
      return graph::ToyEncoder(g, in[0], in[1], in[2]);
    case GradOp::kMinimalDecoder: {
      DecoderVars d = graph::MinimalDecoder(g, in[0], in[1], in[2], {in[3], in[4]});
      return ad::ConcatCols(d.scores, ad::MatMul(in[3], d.f_att));
    }
    case GradOp::kCeLoss:
    case GradOp::kFocalLoss:
      break;
  }
  throw ValidationError("op has no graph form");
}

double Relative(double a, double n, double floor) {
  return std::abs(a - n) / std::max({std::abs(a), std::abs(n), floor});
}

void Track(GradCheckReport& report, double a, double n, const std::string& name,
           std::size_t index, double floor = kRelativeFloor) {
  if (!std::isfinite(a) || !std::isfinite(n)) {
    throw NumericError("non-finite gradient at " + name + "[" +
                       std::to_string(index) + "]");
  }
  const double e = Relative(a, n, floor);
  ++report.checked;
  if (report.worst.empty() || e > report.max_relative_error) {
    report.max_relative_error = e;
    report.worst = name + "[" + std::to_string(index) + "]";
  }
}

GradCheckReport CheckLoss(GradOp op, const std::vector<Matrix>& inputs,
                          double epsilon) {
  const Matrix& pred = inputs.at(0);
  const Matrix& labels = inputs.at(1);
  std::vector<double> proportions(pred.cols, 1.0 / pred.cols);
  if (inputs.size() > 2) proportions = inputs[2].data;
  const double gamma = 2.0;
  std::function<double(const Matrix&)> value;
  Matrix analytic;
  if (op == GradOp::kCeLoss) {
    value = [&](const Matrix& p) { return CeLossUnchecked(p, labels); };
    analytic = CeLossGradient(pred, labels);
  } else {
    value = [&](const Matrix& p) {
      return FocalLossUnchecked(p, labels, proportions, gamma);
    };
    analytic = FocalLossGradient(pred, labels, proportions, gamma);
  }
  GradCheckReport report;
  Matrix probe = pred;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const double saved = probe.data[i];
    probe.data[i] = saved + epsilon;
    const double up = value(probe);
    probe.data[i] = saved - epsilon;
    const double down = value(probe);
    probe.data[i] = saved;
    Track(report, analytic.data[i], (up - down) / (2.0 * epsilon), "pred", i);
  }
  return report;
}

}  // namespace

std::vector<GradOp> AllGradOps() {
  return {GradOp::kPatchEmbed,     GradOp::kFfp,
          GradOp::kFeatureEmbed1,  GradOp::kFeatureEmbed2,
          GradOp::kChannelSplit,   GradOp::kCrossAttention,
          GradOp::kSfp,            GradOp::kSfpProgressive,
          GradOp::kToyEncoder,     GradOp::kMinimalDecoder,
          GradOp::kCeLoss,         GradOp::kFocalLoss};
}

std::string_view GradOpName(GradOp op) {
  switch (op) {
    case GradOp::kPatchEmbed: return "patch_embed";
    case GradOp::kFfp: return "ffp";
    case GradOp::kFeatureEmbed1: return "feature_embed_1";
    case GradOp::kFeatureEmbed2: return "feature_embed_2";
    case GradOp::kChannelSplit: return "channel_split";
    case GradOp::kCrossAttention: return "cross_attention";
    case GradOp::kSfp: return "sfp";
    case GradOp::kSfpProgressive: return "sfp_progressive";
    case GradOp::kToyEncoder: return "toy_encoder";
    case GradOp::kMinimalDecoder: return "minimal_decoder";
    case GradOp::kCeLoss: return "ce_loss";
    case GradOp::kFocalLoss: return "focal_loss";
  }
  return "unknown";
}

std::vector<Matrix> DefaultGradInputs(GradOp op, const KernelConfig& config,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int c = config.channels;
  const int hw = config.positions();
  const int image = config.image_height() * config.image_width();
  switch (op) {
    case GradOp::kPatchEmbed:
    case GradOp::kFeatureEmbed1:
      return {RandomMatrix(3, image, rng, 0.0, 1.0)};
    case GradOp::kFeatureEmbed2: {
      Matrix onehot(config.mvd_classes, image);
      std::uniform_int_distribution<int> pick(0, config.mvd_classes - 1);
      for (int p = 0; p < image; ++p) onehot.at(pick(rng), p) = 1.0;
      return {onehot};
    }
    case GradOp::kFfp:
      return {RandomMatrix(c, hw, rng), RandomMatrix(c, hw, rng)};
    case GradOp::kChannelSplit:
      return {RandomMatrix(hw, c, rng)};
    case GradOp::kCrossAttention:
      return {RandomMatrix(hw, c, rng), RandomMatrix(hw + 1, c, rng)};
    case GradOp::kSfp:
    case GradOp::kToyEncoder:
      return {RandomMatrix(c, hw, rng), RandomMatrix(c, hw, rng),
              RandomMatrix(c, hw, rng)};
    case GradOp::kSfpProgressive:
      return {RandomMatrix(c, hw, rng), RandomMatrix(c, hw, rng),
              RandomMatrix(c, hw, rng), RandomMatrix(c, hw, rng)};
    case GradOp::kMinimalDecoder:
      return {RandomMatrix(c, hw, rng), RandomMatrix(c, hw, rng),
              RandomMatrix(c, hw, rng),
              RandomMatrix(config.sparse_prompts, c, rng),
              RandomMatrix(hw, c, rng)};
    case GradOp::kCeLoss:
    case GradOp::kFocalLoss: {
      const int samples = 8, classes = std::max(2, config.sparse_prompts);
      Matrix pred = SoftmaxRowsOf(RandomMatrix(samples, classes, rng, -2.0, 2.0));
      Matrix labels(samples, classes);
      std::uniform_int_distribution<int> pick(0, classes - 1);
      for (int s = 0; s < samples; ++s) labels.at(s, pick(rng)) = 1.0;
      if (op == GradOp::kCeLoss) return {pred, labels};
      Matrix proportions = SoftmaxRowsOf(RandomMatrix(1, classes, rng));
      return {pred, labels, proportions};
    }
  }
  return {};
}

GradCheckReport GradCheck(GradOp op, const KernelWeights& weights,
                          const std::vector<Matrix>& inputs, double epsilon,
                          std::uint64_t seed) {
  if (op == GradOp::kCeLoss || op == GradOp::kFocalLoss) {
    return CheckLoss(op, inputs, epsilon);
  }

  // Analytic pass.
  Graph g(weights, true);
  std::vector<Var> vars;
  for (const Matrix& m : inputs) vars.push_back(g.input(m, true));
  Var out = BuildOp(op, g, vars);
  std::mt19937_64 rng(seed);
  const Matrix r = RandomMatrix(out.rows(), out.cols(), rng);
  Var loss = ad::DotConst(out, r);
  g.tape().Backward(loss);

  auto evaluate = [&](const KernelWeights& w, const std::vector<Matrix>& in) {
    Graph fg(w, false);
    std::vector<Var> fv;
    for (const Matrix& m : in) fv.push_back(fg.input(m));
    const Matrix& o = BuildOp(op, fg, fv).value();
    double s = 0.0;
    for (std::size_t i = 0; i < o.size(); ++i) s += o.data[i] * r.data[i];
    return s;
  };

  // Denominator floor tracks the objective scale.
  const double floor = kRelativeFloor * std::max(1.0, std::abs(evaluate(weights, inputs)));
  GradCheckReport report;
  KernelWeights probe = weights;
  for (const auto& [name, var] : g.bound_params()) {
    const Matrix analytic = var.grad();
    Matrix& p = probe.Mutable(name);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double saved = p.data[i];
      p.data[i] = saved + epsilon;
      const double up = evaluate(probe, inputs);
      p.data[i] = saved - epsilon;
      const double down = evaluate(probe, inputs);
      p.data[i] = saved;
      Track(report, analytic.data[i], (up - down) / (2.0 * epsilon), name, i,
            floor);
    }
  }
  std::vector<Matrix> shifted = inputs;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const Matrix analytic = vars[k].grad();
    for (std::size_t i = 0; i < shifted[k].size(); ++i) {
      const double saved = shifted[k].data[i];
      shifted[k].data[i] = saved + epsilon;
      const double up = evaluate(weights, shifted);
      shifted[k].data[i] = saved - epsilon;
      const double down = evaluate(weights, shifted);
      shifted[k].data[i] = saved;
      Track(report, analytic.data[i], (up - down) / (2.0 * epsilon),
            "input" + std::to_string(k), i, floor);
    }
  }
  return report;
}

}  // namespace polsar
