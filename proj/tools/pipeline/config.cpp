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

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>

#include "pipeline.hpp"
#include "polsar/common/error.hpp"
#include "polsar/eigen/feature_stack.hpp"

namespace polsar::pipeline {
namespace {

using json = nlohmann::json;

template <typename T>
std::function<void(const json&)> Setter(T& field) {
  return [&field](const json& v) { field = v.get<T>(); };
}

void Require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError("config: " + what);
}

}  // namespace

void PipelineConfig::ApplyJson(const json& doc) {
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");
  const std::map<std::string, std::function<void(const json&)>> setters = {
      {"input", [&](const json& v) { input = v.get<std::string>(); }},
      {"out", [&](const json& v) { out = v.get<std::string>(); }},
      {"seed", Setter(seed)},
      {"threads", Setter(threads)},
      {"window", Setter(window)},
      {"features", Setter(features)},
      {"clip_lo", Setter(clip_lo)},
      {"clip_hi", Setter(clip_hi)},
      {"k", Setter(k)},
      {"max_iter", Setter(max_iter)},
      {"rel_tol", Setter(rel_tol)},
      {"mixed_threshold", Setter(mixed_threshold)},
      {"n_sub", Setter(n_sub)},
      {"tile_size", Setter(tile_size)},
      {"stride", Setter(stride)},
      {"ratios", Setter(ratios)},
      {"split_axis", Setter(split_axis)},
      {"purity_class", Setter(purity_class)},
      {"purity", Setter(purity)},
      {"label_source", Setter(label_source)},
      {"channels", Setter(channels)},
      {"sparse_prompts", Setter(sparse_prompts)},
      {"grid", Setter(grid)},
      {"synth_width", Setter(synth_width)},
      {"synth_height", Setter(synth_height)},
      {"synth_regions", Setter(synth_regions)},
      {"snr_db", Setter(snr_db)},
      {"nodata_columns", Setter(nodata_columns)},
  };
  for (const auto& [key, value] : doc.items()) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw ValidationError("config: unknown key '" + key + "'");
    try {
      it->second(value);
    } catch (const json::exception& e) {
      throw ValidationError("config: bad value for '" + key + "': " + e.what());
    }
  }
}

void PipelineConfig::ApplyJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("config " + path.string() + ": " + e.what());
  }
  ApplyJson(doc);
}

void PipelineConfig::Validate() const {
  Require(threads >= 0, "threads must be >= 0");
  Require(window >= 1 && window % 2 == 1, "window must be odd and >= 1");
  Require(!features.empty(), "features must not be empty");
  for (const auto& f : features) {
    Require(ParseFeatureKind(f).has_value(), "unknown feature stack '" + f + "'");
  }
  Require(clip_lo >= 0 && clip_lo < clip_hi && clip_hi <= 100,
          "clip percentiles must satisfy 0 <= clip_lo < clip_hi <= 100");
  Require(k >= 1 && k <= 8, "k must lie in 1..8");
  Require(max_iter >= 1, "max_iter must be >= 1");
  Require(rel_tol >= 0, "rel_tol must be >= 0");
  Require(mixed_threshold > 0 && mixed_threshold <= 1,
          "mixed_threshold must lie in (0, 1]");
  Require(n_sub >= 1 && 2 * n_sub + 3 <= 255, "n_sub must lie in 1..126");
  Require(tile_size >= 1, "tile_size must be >= 1");
  Require(stride >= 0, "stride must be >= 0");
  Require(!ratios.empty(), "ratios must not be empty");
  for (int r : ratios) Require(r > 0, "ratios must be positive");
  Require(split_axis == "x" || split_axis == "y", "split_axis must be x or y");
  Require(purity_class >= -1 && purity_class < 255, "purity_class out of range");
  Require(purity > 0 && purity <= 1, "purity must lie in (0, 1]");
  Require(!label_source.empty(), "label_source must not be empty");
  Require(channels >= 1 && sparse_prompts >= 1 && grid >= 1,
          "kernel dimensions must be positive");
  Require(synth_width >= 1 && synth_height >= 1 && synth_regions >= 1,
          "synthetic scene dimensions must be positive");
  Require(!std::isnan(snr_db), "snr_db must be a number");
  Require(nodata_columns >= 0 && nodata_columns < synth_width,
          "nodata_columns must lie in [0, synth_width)");
}

int ResolveThreads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("POLSAR_THREADS"); env != nullptr && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 1024) {
      throw ValidationError("POLSAR_THREADS must be an integer in 1..1024");
    }
    return static_cast<int>(v);
  }
  return 1;
}

}  // namespace polsar::pipeline
