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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "pipeline.hpp"
#include "polsar/cluster/label_raster.hpp"
#include "polsar/cluster/primary.hpp"
#include "polsar/cluster/wishart.hpp"
#include "polsar/cluster/zones.hpp"
#include "polsar/common/error.hpp"
#include "polsar/common/png_io.hpp"
#include "polsar/common/stack_io.hpp"
#include "polsar/dataset/manifest.hpp"
#include "polsar/dataset/tiling.hpp"
#include "polsar/decomp/pauli.hpp"
#include "polsar/decomp/slc_io.hpp"
#include "polsar/decomp/synthetic.hpp"
#include "polsar/eigen/feature_stack.hpp"
#include "polsar/eigen/h_a_alpha.hpp"
#include "polsar/fusion/kernel.hpp"
#include "polsar/fusion/visualize.hpp"
#include "polsar/fusion/weights.hpp"
#include "polsar/metrics/confusion.hpp"
#include "polsar/mvd/mvd.hpp"

namespace polsar::pipeline {
namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

void Log(const std::string& message) { std::clog << "[polsar] " << message << '\n'; }

void EnsureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
}

ojson ReadJson(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return ojson::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("malformed " + path.string() + ": " + e.what());
  }
}

MvdRaster CropMvd(const MvdRaster& mvd, const TileOrigin& origin, int size) {
  MvdRaster out;
  out.width = size;
  out.height = size;
  out.legend = mvd.legend;
  out.class_index.resize(static_cast<std::size_t>(size) * size);
  for (int y = 0; y < size; ++y) {
    const auto src = mvd.class_index.begin() +
                     static_cast<long>((static_cast<std::size_t>(origin.y) + y) *
                                       mvd.width + origin.x);
    std::copy(src, src + size, out.class_index.begin() + static_cast<long>(y) * size);
  }
  return out;
}

LabelRaster MvdAsLabels(const MvdRaster& mvd) {
  LabelRaster labels;
  labels.width = mvd.width;
  labels.height = mvd.height;
  labels.class_count = mvd.class_count();
  labels.label = mvd.class_index;
  for (const auto& e : mvd.legend) labels.class_names.push_back(e.name);
  return labels;
}

Matrix Plane(const Tensor3& t, int c) {
  Matrix m(t.height, t.width);
  std::copy(t.data.begin() + static_cast<long>(c * t.plane()),
            t.data.begin() + static_cast<long>((c + 1) * t.plane()), m.data.begin());
  return m;
}

}  // namespace

SynthSummary RunSynth(const PipelineConfig& config) {
  SynthConfig sc;
  sc.width = config.synth_width;
  sc.height = config.synth_height;
  sc.regions = config.synth_regions;
  sc.snr_db = config.snr_db;
  sc.nodata_columns = config.nodata_columns;
  sc.seed = config.seed;
  const SyntheticScene scene = GenerateScene(sc);
  EnsureDir(config.out);
  SynthSummary s;
  s.slc = config.out / "scene.pslc";
  WriteSlc(s.slc, scene.field);
  s.truth = WriteLabelRaster(config.out / "truth", scene.truth);
  ojson regions = ojson::array();
  for (const auto& r : scene.regions) {
    regions.push_back({{"x0", r.x0},
                       {"x1", r.x1},
                       {"y0", r.y0},
                       {"y1", r.y1},
                       {"type", std::string(PrimaryTypeName(r.type))},
                       {"power", r.power}});
  }
  ojson doc = {{"version", 1},
               {"kind", "synthetic_scene"},
               {"width", sc.width},
               {"height", sc.height},
               {"snr_db", std::isinf(sc.snr_db) ? ojson("inf") : ojson(sc.snr_db)},
               {"nodata_columns", sc.nodata_columns},
               {"seed", sc.seed},
               {"regions", regions}};
  WriteText(config.out / "regions.json", doc.dump(2) + "\n");
  Log("synth: wrote " + s.slc.string());
  return s;
}

DecomposeSummary RunDecompose(const PipelineConfig& config) {
  if (config.input.empty()) throw ValidationError("decompose needs an input SLC");
  const ScatteringField field = LoadSlc(config.input);
  const PauliField pauli = PauliVector(field);
  const CoherencyField coh = Coherency(pauli, config.window);
  const EigenFeatures eig = DecomposeField(coh);
  EnsureDir(config.out);

  PauliRgbOptions rgb;
  rgb.clip_lo = config.clip_lo;
  rgb.clip_hi = config.clip_hi;
  WritePng(config.out / "pauli_rgb.png", PauliRgb(pauli, rgb));
  for (const auto& name : config.features) {
    const FeatureKind kind = *ParseFeatureKind(name);
    WriteFloatStack(config.out / ("features_" + name), FeatureStack(coh, eig, kind));
  }
  WriteFloatStack(config.out / "coherency", CoherencyStack(coh));
  WriteFloatStack(config.out / "eigen", EigenStack(eig));

  DecomposeSummary s;
  s.width = field.width;
  s.height = field.height;
  s.valid_pixels = static_cast<std::size_t>(
      std::count(eig.valid.begin(), eig.valid.end(), std::uint8_t{1}));
  ojson doc = {{"version", 1},
               {"kind", "decompose"},
               {"width", s.width},
               {"height", s.height},
               {"window", config.window},
               {"features", config.features},
               {"valid_pixels", s.valid_pixels}};
  WriteText(config.out / "decompose.json", doc.dump(2) + "\n");
  Log("decompose: " + std::to_string(s.width) + "x" + std::to_string(s.height) +
      ", " + std::to_string(s.valid_pixels) + " valid pixels");
  return s;
}

MvdSummary RunMvd(const PipelineConfig& config) {
  const fs::path dir = config.input.empty() ? config.out : config.input;
  const ojson summary = ReadJson(dir / "decompose.json");
  const int window = summary.at("window").get<int>();
  const CoherencyField coh =
      CoherencyFromStack(ReadFloatStack(dir / "coherency.json"), window);
  const EigenFeatures eig = DecomposeField(coh);
  const SpanField span = Span(coh);

  WishartOptions options;
  options.max_iter = config.max_iter;
  options.rel_tol = config.rel_tol;
  const WishartResult result =
      WishartIterate(coh, InitClusters(eig, config.k), options);
  const ClusterModel model = ClassifyPrimary(result.model, eig, result.labels);
  const LabelRaster sub = SubclassBySpan(result.labels, model, span, config.n_sub);
  const std::vector<double> ratio = RunnerUpRatio(coh, model, result.labels);
  ReclusterOptions recluster;
  recluster.mixed_threshold = config.mixed_threshold;
  const MvdRaster mvd = Recluster(sub, ratio, std::nullopt, recluster);

  EnsureDir(config.out);
  WriteMvdFile(config.out / "mvd.mvd1", mvd);
  const auto palette = mvd.Palette();
  WriteIndexedPng(config.out / "mvd.png", mvd.width, mvd.height, mvd.class_index,
                  palette);
  RenderLegend(mvd, config.out / "mvd_legend.json", config.out / "mvd_legend.png");
  WriteClusterModel(config.out / "cluster_model.json", model);
  WriteLabelRaster(config.out / "clusters", result.labels);
  WriteLabelRaster(config.out / "subclasses", sub);
  WriteLabelRaster(config.out / "primary_type", PrimaryTypeRaster(model, result.labels));

  MvdSummary s;
  s.clusters = model.k;
  s.iterations = result.iterations;
  s.converged = result.converged;
  s.mvd_classes = mvd.class_count();
  const auto mixed = static_cast<std::uint8_t>(mvd.class_count() - 2);
  const auto other = static_cast<std::uint8_t>(mvd.class_count() - 1);
  s.mixed_pixels = static_cast<std::size_t>(
      std::count(mvd.class_index.begin(), mvd.class_index.end(), mixed));
  s.other_pixels = static_cast<std::size_t>(
      std::count(mvd.class_index.begin(), mvd.class_index.end(), other));
  ojson doc = {{"version", 1},
               {"kind", "mvd_run"},
               {"clusters", s.clusters},
               {"iterations", s.iterations},
               {"converged", s.converged},
               {"objective_history", result.objective_history},
               {"mvd_classes", s.mvd_classes},
               {"mixed_pixels", s.mixed_pixels},
               {"other_pixels", s.other_pixels}};
  WriteText(config.out / "mvd_run.json", doc.dump(2) + "\n");
  Log("mvd: " + std::to_string(s.clusters) + " clusters after " +
      std::to_string(s.iterations) + " iterations, " +
      std::to_string(s.mvd_classes) + " MVD classes");
  return s;
}

DatasetSummary RunDataset(const PipelineConfig& config,
                          const std::vector<fs::path>& scenes) {
  if (scenes.empty()) throw ValidationError("dataset needs at least one scene");
  const int size = config.tile_size;
  const int stride = config.EffectiveStride();

  struct Pending {
    Image8 pseudo;
    MvdRaster mvd;
    LabelRaster labels;
  };
  std::map<std::string, Pending> pending;
  std::vector<TileRecord> records;
  int num_classes = 0;
  for (const auto& dir : scenes) {
    const std::string scene = dir.filename().empty()
                                  ? dir.parent_path().filename().string()
                                  : dir.filename().string();
    const Image8 pseudo = ReadPngRgb(dir / "pauli_rgb.png");
    const MvdRaster mvd = ReadMvdFile(dir / "mvd.mvd1");
    const LabelRaster labels = config.label_source == "mvd"
                                   ? MvdAsLabels(mvd)
                                   : ReadLabelRaster(dir / config.label_source);
    num_classes = std::max(num_classes, labels.class_count);
    const std::vector<RasterDims> dims = {{pseudo.width, pseudo.height},
                                          {mvd.width, mvd.height},
                                          {labels.width, labels.height}};
    for (const auto& origin : TileScene(dims, size, stride)) {
      TileRecord r;
      r.id = TileId(scene, origin);
      r.scene = scene;
      r.x = origin.x;
      r.y = origin.y;
      r.files = {{"pseudo_color", "tiles/" + r.id + "_pauli.png"},
                 {"mvd", "tiles/" + r.id + ".mvd1"},
                 {"label", "tiles/" + r.id + "_label.json"}};
      if (pending.contains(r.id)) {
        throw ValidationError("two scenes produce tile id '" + r.id + "'");
      }
      pending[r.id] = {CropImage(pseudo, origin, size), CropMvd(mvd, origin, size),
                       CropLabels(labels, origin, size)};
      records.push_back(std::move(r));
    }
  }

  const TileLabelSource source = [&](const TileRecord& t) {
    return pending.at(t.id).labels;
  };
  DatasetManifest manifest =
      SplitGeographic(records, config.ratios, ParseSplitAxis(config.split_axis),
                      size, stride, num_classes);
  RecomputeHistogram(manifest, source);
  DatasetSummary s;
  s.tiles_before_filter = manifest.tiles.size();
  if (config.purity_class >= 0) {
    manifest = FilterPureClass(manifest, source, config.purity_class, config.purity);
  }
  s.tiles = manifest.tiles.size();
  if (s.tiles == 0) Log("dataset: warning: no tiles left after filtering");

  EnsureDir(config.out / "tiles");
  for (const auto& t : manifest.tiles) {
    const Pending& p = pending.at(t.id);
    WritePng(config.out / t.files.at("pseudo_color"), p.pseudo);
    WriteMvdFile(config.out / t.files.at("mvd"), p.mvd);
    WriteLabelRaster(config.out / "tiles" / (t.id + "_label"), p.labels);
  }
  WriteManifest(config.out / "manifest.json", manifest);
  for (const auto& name : manifest.split_names) {
    s.per_split.push_back(manifest.CountInSplit(name));
  }
  std::string counts;
  for (std::size_t i = 0; i < s.per_split.size(); ++i) {
    counts += (i ? ", " : "") + manifest.split_names[i] + " " +
              std::to_string(s.per_split[i]);
  }
  Log("dataset: " + std::to_string(s.tiles) + " tiles (" + counts + ")");
  return s;
}

FuseDemoSummary RunFuseDemo(const PipelineConfig& config,
                            const fs::path& pseudo_color, const fs::path& mvd_path) {
  const Image8 pseudo = ReadPngRgb(pseudo_color);
  const MvdRaster mvd = ReadMvdFile(mvd_path);
  if (pseudo.width != mvd.width || pseudo.height != mvd.height) {
    throw ValidationError("pseudo-colour and MVD tiles differ in size");
  }
  KernelConfig kc;
  kc.channels = config.channels;
  kc.height = config.grid;
  kc.width = config.grid;
  kc.sparse_prompts = config.sparse_prompts;
  kc.mvd_classes = mvd.class_count();
  const int size = kc.image_height();
  if (pseudo.width < size || pseudo.height < size) {
    throw ValidationError("fuse-demo needs tiles of at least " +
                          std::to_string(size) + "x" + std::to_string(size));
  }
  const MvdRaster mvd_crop = CropMvd(mvd, {0, 0}, size);
  const Tensor3 i1 = ImageToTensor(CropImage(pseudo, {0, 0}, size));
  const Tensor3 i2_rgb = ImageToTensor(EncodePalette(mvd_crop));
  const Tensor3 i2_onehot = OneHot(mvd_crop);
  const KernelWeights weights = KernelWeights::Init(kc, config.seed);
  const FusionResult r = RunFusion(i1, i2_rgb, i2_onehot, weights);

  FuseDemoSummary s;
  for (const auto& [key, m] : r.softmaxes) {
    for (int row = 0; row < m.rows; ++row) {
      double sum = 0.0;
      for (int c = 0; c < m.cols; ++c) sum += m.at(row, c);
      s.max_softmax_deviation = std::max(s.max_softmax_deviation, std::abs(sum - 1.0));
    }
  }
  EnsureDir(config.out);
  const PromptMaps maps = VisualizePrompts(r.level2);
  WritePng(config.out / "v_d.png", RenderMap(maps.v_d));
  for (std::size_t i = 0; i < maps.v_sd.size(); ++i) {
    WritePng(config.out / ("v_sd_" + std::to_string(i) + ".png"), RenderMap(maps.v_sd[i]));
  }
  FloatStack scores;
  scores.kind = "scores";
  scores.width = r.scores.width;
  scores.height = r.scores.height;
  scores.data = r.scores.data;
  LabelRaster prediction =
      LabelRaster::Filled(r.scores.width, r.scores.height, r.scores.channels, 0);
  for (int c = 0; c < r.scores.channels; ++c) {
    scores.channels.push_back("score" + std::to_string(c));
    WritePng(config.out / ("score_" + std::to_string(c) + ".png"),
             RenderMap(Plane(r.scores, c)));
  }
  const std::size_t plane = r.scores.plane();
  for (std::size_t p = 0; p < plane; ++p) {
    int best = 0;
    for (int c = 1; c < r.scores.channels; ++c) {
      if (r.scores.data[c * plane + p] > r.scores.data[best * plane + p]) best = c;
    }
    prediction.label[p] = static_cast<std::uint8_t>(best);
  }
  WriteFloatStack(config.out / "scores", scores);
  WriteLabelRaster(config.out / "prediction", prediction);
  WriteWeights(config.out / "kernel_weights", weights);
  s.score_maps = r.scores.channels;
  ojson doc = {{"version", 1},
               {"kind", "fuse_demo"},
               {"channels", kc.channels},
               {"grid", kc.height},
               {"sparse_prompts", kc.sparse_prompts},
               {"mvd_classes", kc.mvd_classes},
               {"seed", config.seed},
               {"sparse_shape", {r.level2.sparse.rows, r.level2.sparse.cols}},
               {"dense_shape", {r.level2.height, r.level2.width, r.level2.dense.cols}},
               {"score_maps", s.score_maps},
               {"max_softmax_deviation", s.max_softmax_deviation}};
  WriteText(config.out / "fuse_demo.json", doc.dump(2) + "\n");
  Log("fuse-demo: " + std::to_string(s.score_maps) + " score maps");
  return s;
}

EvaluateSummary RunEvaluate(const PipelineConfig& config, const fs::path& pred_dir,
                            const fs::path& gt_dir) {
  if (!fs::is_directory(gt_dir)) throw IoError("no such directory " + gt_dir.string());
  if (!fs::is_directory(pred_dir)) throw IoError("no such directory " + pred_dir.string());
  std::vector<fs::path> manifests;
  for (const auto& entry : fs::directory_iterator(gt_dir)) {
    if (entry.path().extension() != ".json") continue;
    const ojson doc = ReadJson(entry.path());
    if (doc.is_object() && doc.value("kind", "") == "labels") {
      manifests.push_back(entry.path());
    }
  }
  if (manifests.empty()) {
    throw ValidationError("no label rasters in " + gt_dir.string());
  }
  std::sort(manifests.begin(), manifests.end());
  std::vector<std::pair<LabelRaster, LabelRaster>> pairs;
  int k = 0;
  for (const auto& gt_path : manifests) {
    LabelRaster gt = ReadLabelRaster(gt_path);
    LabelRaster pred = ReadLabelRaster(pred_dir / gt_path.filename());
    k = std::max({k, gt.class_count, pred.class_count});
    pairs.emplace_back(std::move(pred), std::move(gt));
  }
  ConfusionMatrix cm(k);
  for (const auto& [pred, gt] : pairs) cm += Confusion(pred, gt, k);
  const SegmentationMetrics m = ComputeMetrics(cm);
  std::vector<std::string> names = pairs.front().second.class_names;

  EvaluateSummary s;
  s.files = pairs.size();
  s.miou = m.miou;
  s.macc = m.macc;
  s.mf1 = m.mf1;
  s.table = MetricsTable(m, names);
  EnsureDir(config.out);
  WriteText(config.out / "metrics.json", MetricsJson(m, cm, names));
  WriteText(config.out / "metrics.txt", s.table);
  std::cout << s.table;
  return s;
}

}  // namespace polsar::pipeline
