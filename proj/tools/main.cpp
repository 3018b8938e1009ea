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

#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pipeline/pipeline.hpp"
#include "polsar/common/error.hpp"
#include "polsar/common/parallel.hpp"

namespace {

using polsar::pipeline::PipelineConfig;

// A flag that overrides the config file only when it was given.
struct Override {
  CLI::Option* option;
  std::function<void(PipelineConfig&)> apply;
};

template <typename T>
CLI::Option* Flag(CLI::App* app, std::vector<Override>& overrides,
                  const std::string& name, T PipelineConfig::*field,
                  const std::string& help) {
  auto holder = std::make_shared<T>();
  CLI::Option* opt = app->add_option(name, *holder, help);
  overrides.push_back(
      {opt, [holder, field](PipelineConfig& c) { c.*field = *holder; }});
  return opt;
}

CLI::Option* PathFlag(CLI::App* app, std::vector<Override>& overrides,
                      const std::string& name,
                      std::filesystem::path PipelineConfig::*field,
                      const std::string& help) {
  auto holder = std::make_shared<std::string>();
  CLI::Option* opt = app->add_option(name, *holder, help);
  overrides.push_back(
      {opt, [holder, field](PipelineConfig& c) { c.*field = *holder; }});
  return opt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polarimetric SAR toolkit: decomposition, MVD rasters, datasets "
               "and fusion-prompt kernels"};
  app.require_subcommand(1);
  app.fallthrough();
  std::vector<Override> overrides;

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file")
      ->check(CLI::ExistingFile);
  Flag(&app, overrides, "--seed", &PipelineConfig::seed, "RNG seed");
  Flag(&app, overrides, "--threads", &PipelineConfig::threads,
       "worker threads (default: POLSAR_THREADS or 1)");
  PathFlag(&app, overrides, "--out", &PipelineConfig::out, "output directory");

  auto* synth = app.add_subcommand("synth", "generate a synthetic SLC scene");
  Flag(synth, overrides, "--width", &PipelineConfig::synth_width, "scene width");
  Flag(synth, overrides, "--height", &PipelineConfig::synth_height, "scene height");
  Flag(synth, overrides, "--regions", &PipelineConfig::synth_regions,
       "number of mechanism bands");
  Flag(synth, overrides, "--snr-db", &PipelineConfig::snr_db,
       "mechanism-to-noise ratio in dB (inf: noiseless)");
  Flag(synth, overrides, "--nodata-columns", &PipelineConfig::nodata_columns,
       "zero-amplitude columns on the left edge");

  auto* decompose = app.add_subcommand("decompose", "Pauli and eigen decomposition");
  PathFlag(decompose, overrides, "input,--input", &PipelineConfig::input,
           "SLC file");
  Flag(decompose, overrides, "--window", &PipelineConfig::window,
       "multilook window (odd)");
  Flag(decompose, overrides, "--features", &PipelineConfig::features,
       "feature stacks: HAalpha3 T6 T9 HAalphaT12");
  Flag(decompose, overrides, "--clip-lo", &PipelineConfig::clip_lo,
       "lower percentile for Pauli RGB");
  Flag(decompose, overrides, "--clip-hi", &PipelineConfig::clip_hi,
       "upper percentile for Pauli RGB");

  auto* mvd = app.add_subcommand("mvd", "Wishart clustering and MVD generation");
  PathFlag(mvd, overrides, "--input", &PipelineConfig::input,
           "decompose output directory (default: --out)");
  Flag(mvd, overrides, "--k", &PipelineConfig::k, "initial clusters (1..8)");
  Flag(mvd, overrides, "--max-iter", &PipelineConfig::max_iter, "iteration cap");
  Flag(mvd, overrides, "--rel-tol", &PipelineConfig::rel_tol,
       "relative objective tolerance");
  Flag(mvd, overrides, "--mixed-threshold", &PipelineConfig::mixed_threshold,
       "runner-up likelihood ratio above which a pixel is mixed");
  Flag(mvd, overrides, "--n-sub", &PipelineConfig::n_sub, "SPAN tiers");

  auto* dataset = app.add_subcommand("dataset", "tile scenes into a dataset");
  std::vector<std::string> scenes;
  dataset->add_option("scenes", scenes, "scene directories")->required();
  Flag(dataset, overrides, "--tile-size", &PipelineConfig::tile_size, "tile edge");
  Flag(dataset, overrides, "--stride", &PipelineConfig::stride,
       "tile stride (default: tile size)");
  Flag(dataset, overrides, "--ratios", &PipelineConfig::ratios, "split ratios");
  Flag(dataset, overrides, "--split-axis", &PipelineConfig::split_axis,
       "x or y");
  Flag(dataset, overrides, "--purity-class", &PipelineConfig::purity_class,
       "class removed from pure tiles (-1: off)");
  Flag(dataset, overrides, "--purity", &PipelineConfig::purity,
       "fraction at which a tile counts as pure");
  Flag(dataset, overrides, "--label-source", &PipelineConfig::label_source,
       "'mvd' or a label raster manifest inside each scene");

  auto* fuse = app.add_subcommand("fuse-demo", "run the fusion-prompt kernel on a tile");
  std::string pseudo_path, mvd_path;
  fuse->add_option("--pseudo-color", pseudo_path, "pseudo-colour PNG")->required();
  fuse->add_option("--mvd", mvd_path, "MVD1 tile")->required();
  Flag(fuse, overrides, "--channels", &PipelineConfig::channels, "embedding width C");
  Flag(fuse, overrides, "--sparse-prompts", &PipelineConfig::sparse_prompts,
       "sparse prompt count N");
  Flag(fuse, overrides, "--grid", &PipelineConfig::grid,
       "embedding grid edge (input crop is 4x this)");

  auto* evaluate = app.add_subcommand("evaluate", "segmentation metrics");
  std::string pred_dir, gt_dir;
  evaluate->add_option("pred", pred_dir, "prediction label directory")->required();
  evaluate->add_option("gt", gt_dir, "ground-truth label directory")->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : polsar::ExitCodeFor(polsar::ErrorCategory::kValidation);
  }

  try {
    PipelineConfig config;
    if (!config_path.empty()) config.ApplyJsonFile(config_path);
    for (const auto& o : overrides) {
      if (o.option->count() > 0) o.apply(config);
    }
    config.Validate();
    polsar::SetThreadCount(polsar::pipeline::ResolveThreads(config.threads));

    if (synth->parsed()) {
      polsar::pipeline::RunSynth(config);
    } else if (decompose->parsed()) {
      polsar::pipeline::RunDecompose(config);
    } else if (mvd->parsed()) {
      polsar::pipeline::RunMvd(config);
    } else if (dataset->parsed()) {
      std::vector<std::filesystem::path> dirs(scenes.begin(), scenes.end());
      polsar::pipeline::RunDataset(config, dirs);
    } else if (fuse->parsed()) {
      polsar::pipeline::RunFuseDemo(config, pseudo_path, mvd_path);
    } else if (evaluate->parsed()) {
      polsar::pipeline::RunEvaluate(config, pred_dir, gt_dir);
    }
  } catch (const polsar::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return polsar::ExitCodeFor(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
