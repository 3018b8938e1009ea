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

#ifndef POLSAR_TOOLS_PIPELINE_PIPELINE_HPP_
#define POLSAR_TOOLS_PIPELINE_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace polsar::pipeline {

struct PipelineConfig {
  // Paths.
  std::filesystem::path input;
  std::filesystem::path out = "out";

  std::uint64_t seed = 1;
  int threads = 0;  // 0: POLSAR_THREADS or 1

  // decompose
  int window = 3;
  std::vector<std::string> features = {"HAalpha3", "T6", "HAalphaT12"};
  double clip_lo = 2.0;
  double clip_hi = 98.0;

  // mvd
  int k = 8;
  int max_iter = 50;
  double rel_tol = 1e-6;
  double mixed_threshold = 0.98;
  int n_sub = 5;

  // dataset
  int tile_size = 512;
  int stride = 0;  // 0: tile_size
  std::vector<int> ratios = {6, 2, 2};
  std::string split_axis = "x";
  int purity_class = -1;  // -1 disables the purity filter
  double purity = 1.0;
  std::string label_source = "mvd";

  // fuse-demo
  int channels = 32;
  int sparse_prompts = 6;
  int grid = 16;

  // synth
  int synth_width = 128;
  int synth_height = 128;
  int synth_regions = 3;
  double snr_db = 15.0;
  int nodata_columns = 4;

  // Overwrites fields present in |doc| (keys as above). Throws
  // ValidationError for unknown keys or wrongly typed values.
  void ApplyJson(const nlohmann::json& doc);
  void ApplyJsonFile(const std::filesystem::path& path);
  // Throws ValidationError for values outside their documented ranges.
  void Validate() const;
  int EffectiveStride() const { return stride > 0 ? stride : tile_size; }
};

// Worker count: the flag when positive, else POLSAR_THREADS when set, else 1.
int ResolveThreads(int flag_value);

// Summaries returned to callers and tests.
struct SynthSummary {
  std::filesystem::path slc;
  std::filesystem::path truth;
};
SynthSummary RunSynth(const PipelineConfig& config);

struct DecomposeSummary {
  int width = 0;
  int height = 0;
  std::size_t valid_pixels = 0;
};
// Reads config.input (SLC) and writes into config.out.
DecomposeSummary RunDecompose(const PipelineConfig& config);

struct MvdSummary {
  int clusters = 0;
  int iterations = 0;
  bool converged = false;
  int mvd_classes = 0;
  std::size_t mixed_pixels = 0;
  std::size_t other_pixels = 0;
};
// Reads decompose outputs from config.input (defaults to config.out) and
// writes MVD artifacts into config.out.
MvdSummary RunMvd(const PipelineConfig& config);

struct DatasetSummary {
  std::size_t tiles_before_filter = 0;
  std::size_t tiles = 0;
  std::vector<std::size_t> per_split;
};
// Each scene directory holds pauli_rgb.png and mvd.mvd1 (plus the label
// raster named by label_source unless it is "mvd").
DatasetSummary RunDataset(const PipelineConfig& config,
                          const std::vector<std::filesystem::path>& scenes);

struct FuseDemoSummary {
  int score_maps = 0;
  double max_softmax_deviation = 0.0;
};
FuseDemoSummary RunFuseDemo(const PipelineConfig& config,
                            const std::filesystem::path& pseudo_color,
                            const std::filesystem::path& mvd);

struct EvaluateSummary {
  std::size_t files = 0;
  double miou = 0.0;
  double macc = 0.0;
  double mf1 = 0.0;
  std::string table;
};
EvaluateSummary RunEvaluate(const PipelineConfig& config,
                            const std::filesystem::path& pred_dir,
                            const std::filesystem::path& gt_dir);

}  // namespace polsar::pipeline

#endif  // POLSAR_TOOLS_PIPELINE_PIPELINE_HPP_
