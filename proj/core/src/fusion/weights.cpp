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

#include "polsar/fusion/weights.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include "json.hpp"
#include "polsar/common/error.hpp"
#include "polsar/common/stack_io.hpp"

namespace polsar {
namespace {

using json = nlohmann::ordered_json;
using Init = ParameterShape::Init;

void AddAttention(std::vector<ParameterShape>& out, const std::string& prefix,
                  int c) {
  for (const char* p : {"q", "k", "v"}) {
    out.push_back({prefix + ".w" + p, c, c, c});
    out.push_back({prefix + ".b" + p, 1, c, c});
  }
}

void AddNorm(std::vector<ParameterShape>& out, const std::string& prefix,
             int c) {
  out.push_back({prefix + ".gain", 1, c, 1, Init::kOnes});
  out.push_back({prefix + ".bias", 1, c, 1, Init::kZeros});
}

void AddConv(std::vector<ParameterShape>& out, const std::string& prefix,
             int c_out, int fan_in) {
  out.push_back({prefix + ".w", c_out, fan_in, fan_in});
  out.push_back({prefix + ".b", c_out, 1, fan_in});
}

}  // namespace

void KernelConfig::Validate() const {
  if (channels < 1 || height < 1 || width < 1 || sparse_prompts < 1 ||
      mvd_classes < 1) {
    throw ValidationError("kernel dimensions must be positive");
  }
}

std::vector<ParameterShape> ParameterShapes(const KernelConfig& config) {
  config.Validate();
  const int c = config.channels;
  const int r = config.reduced_channels();
  const int p = KernelConfig::kPatch;
  std::vector<ParameterShape> out;
  AddConv(out, "patch", c, 3 * p * p);
  AddConv(out, "ffp.g1", r, c);
  AddConv(out, "ffp.g2", r, c);
  AddConv(out, "ffp.g3", c, r);
  AddConv(out, "enc.proj", c, 3 * c);
  for (const char* block : {"enc.block0", "enc.block1"}) {
    AddNorm(out, std::string(block) + ".ln", c);
    AddAttention(out, std::string(block) + ".attn", c);
  }
  AddConv(out, "fe1", c, 3 * 9);
  AddConv(out, "fe2.conv1", 2 * c, config.mvd_classes * 4);
  AddNorm(out, "fe2.ln1", 2 * c);
  AddConv(out, "fe2.conv2", c, 2 * c * 4);
  AddNorm(out, "fe2.ln2", c);
  AddConv(out, "fe2.proj", c, c);
  for (const char* split : {"sfp.split1", "sfp.split2", "sfp.split3"}) {
    out.push_back({std::string(split) + ".w", c, 2 * c, c});
    out.push_back({std::string(split) + ".b", 1, 2 * c, c});
  }
  AddAttention(out, "sfp.ca_v", c);
  AddAttention(out, "sfp.ca_u", c);
  AddConv(out, "sfp.linear1", config.sparse_prompts, config.positions());
  AddNorm(out, "sfp.norm_s", c);
  out.push_back({"sfp.linear2.w", 2 * c, c, 2 * c});
  out.push_back({"sfp.linear2.b", 1, c, 2 * c});
  AddNorm(out, "sfp.norm_d", c);
  AddAttention(out, "dec.ca_t2i", c);
  AddAttention(out, "dec.ca_i2t", c);
  return out;
}

KernelWeights KernelWeights::Init(const KernelConfig& config,
                                  std::uint64_t seed) {
  KernelWeights w;
  w.config_ = config;
  w.seed_ = seed;
  std::mt19937_64 rng(seed);
  for (const auto& shape : ParameterShapes(config)) {
    Matrix m(shape.rows, shape.cols);
    if (shape.init == Init::kOnes) {
      std::fill(m.data.begin(), m.data.end(), 1.0);
    } else if (shape.init == Init::kUniform) {
      const double bound = 1.0 / std::sqrt(static_cast<double>(shape.fan_in));
      std::uniform_real_distribution<double> dist(-bound, bound);
      for (double& v : m.data) v = dist(rng);
    }
    w.params_.emplace(shape.name, std::move(m));
  }
  return w;
}

const Matrix& KernelWeights::Get(const std::string& name) const {
  const auto it = params_.find(name);
  if (it == params_.end()) throw ValidationError("no parameter '" + name + "'");
  return it->second;
}

Matrix& KernelWeights::Mutable(const std::string& name) {
  const auto it = params_.find(name);
  if (it == params_.end()) throw ValidationError("no parameter '" + name + "'");
  return it->second;
}

std::size_t KernelWeights::ParameterCount() const {
  std::size_t n = 0;
  for (const auto& [name, m] : params_) n += m.size();
  return n;
}

void KernelWeights::Validate() const {
  const auto shapes = ParameterShapes(config_);
  if (shapes.size() != params_.size()) {
    throw ValidationError("parameter set does not match the configuration");
  }
  for (const auto& s : shapes) {
    const Matrix& m = Get(s.name);
    if (m.rows != s.rows || m.cols != s.cols) {
      throw ValidationError("parameter '" + s.name + "' has the wrong shape");
    }
    if (!m.AllFinite()) {
      throw NumericError("parameter '" + s.name + "' is not finite");
    }
  }
}

std::filesystem::path WriteWeights(const std::filesystem::path& base,
                                   const KernelWeights& weights) {
  weights.Validate();
  const auto manifest_path = WithExtension(base, ".json");
  const auto payload_path = WithExtension(base, ".f32");
  const KernelConfig& c = weights.config();
  json doc;
  doc["version"] = 1;
  doc["kind"] = "kernel_weights";
  doc["seed"] = weights.seed();
  doc["config"] = {{"channels", c.channels},
                   {"height", c.height},
                   {"width", c.width},
                   {"sparse_prompts", c.sparse_prompts},
                   {"mvd_classes", c.mvd_classes}};
  doc["dtype"] = "float32";
  doc["byte_order"] = "little";
  json params = json::array();
  std::vector<double> payload;
  for (const auto& [name, m] : weights.params()) {
    params.push_back({{"name", name},
                      {"rows", m.rows},
                      {"cols", m.cols},
                      {"offset", payload.size()}});
    payload.insert(payload.end(), m.data.begin(), m.data.end());
  }
  doc["parameters"] = params;
  doc["payload"] = payload_path.filename().string();
  WriteF32Payload(payload_path, payload);
  std::ofstream out(manifest_path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + manifest_path.string());
  out << doc.dump(2) << '\n';
  return manifest_path;
}

KernelWeights ReadWeights(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw IoError("cannot open " + manifest_path.string());
  KernelWeights w;
  try {
    const json doc = json::parse(in);
    if (doc.at("version").get<int>() != 1) {
      throw VersionError("unsupported weights version");
    }
    if (doc.at("kind").get<std::string>() != "kernel_weights") {
      throw ValidationError("not a kernel weights manifest");
    }
    const json& c = doc.at("config");
    w.config_.channels = c.at("channels").get<int>();
    w.config_.height = c.at("height").get<int>();
    w.config_.width = c.at("width").get<int>();
    w.config_.sparse_prompts = c.at("sparse_prompts").get<int>();
    w.config_.mvd_classes = c.at("mvd_classes").get<int>();
    w.seed_ = doc.at("seed").get<std::uint64_t>();
    std::size_t total = 0;
    for (const auto& p : doc.at("parameters")) {
      total += p.at("rows").get<std::size_t>() * p.at("cols").get<std::size_t>();
    }
    const auto payload = ReadF32Payload(
        manifest_path.parent_path() / doc.at("payload").get<std::string>(),
        total);
    for (const auto& p : doc.at("parameters")) {
      Matrix m(p.at("rows").get<int>(), p.at("cols").get<int>());
      const auto offset = p.at("offset").get<std::size_t>();
      if (offset + m.size() > payload.size()) {
        throw SizeMismatchError("parameter extends past the payload");
      }
      std::copy(payload.begin() + static_cast<long>(offset),
                payload.begin() + static_cast<long>(offset + m.size()),
                m.data.begin());
      w.params_[p.at("name").get<std::string>()] = std::move(m);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("malformed weights manifest " +
                          manifest_path.string() + ": " + e.what());
  }
  w.Validate();
  return w;
}

}  // namespace polsar
