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

#include "polsar/dataset/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "polsar/common/error.hpp"
#include "polsar/common/parallel.hpp"

namespace polsar {
namespace {

using json = nlohmann::ordered_json;

int AxisCoord(const TileRecord& t, SplitAxis axis) {
  return axis == SplitAxis::kX ? t.x : t.y;
}

}  // namespace

char SplitAxisName(SplitAxis axis) { return axis == SplitAxis::kX ? 'x' : 'y'; }

SplitAxis ParseSplitAxis(const std::string& name) {
  if (name == "x") return SplitAxis::kX;
  if (name == "y") return SplitAxis::kY;
  throw ValidationError("split axis must be 'x' or 'y', got '" + name + "'");
}

std::vector<std::string> DefaultSplitNames(std::size_t split_count) {
  if (split_count == 3) return {"train", "val", "test"};
  if (split_count == 2) return {"train", "test"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < split_count; ++i) {
    names.push_back("split" + std::to_string(i));
  }
  return names;
}

std::vector<int> SplitBoundaries(int columns, const std::vector<int>& ratios) {
  if (ratios.empty()) throw ValidationError("split ratios are empty");
  for (int r : ratios) {
    if (r <= 0) throw ValidationError("split ratios must be positive");
  }
  if (columns < static_cast<int>(ratios.size())) {
    throw ValidationError("only " + std::to_string(columns) +
                          " tile columns for " +
                          std::to_string(ratios.size()) + " splits");
  }
  const std::int64_t total = std::accumulate(ratios.begin(), ratios.end(),
                                             std::int64_t{0});
  std::vector<int> bounds;
  std::int64_t cumulative = 0;
  for (int r : ratios) {
    cumulative += r;
    bounds.push_back(static_cast<int>((2 * columns * cumulative + total) /
                                      (2 * total)));
  }
  return bounds;
}

std::size_t DatasetManifest::CountInSplit(const std::string& split) const {
  return static_cast<std::size_t>(
      std::count_if(tiles.begin(), tiles.end(),
                    [&](const TileRecord& t) { return t.split == split; }));
}

void DatasetManifest::Validate() const {
  if (tile_size <= 0 || stride <= 0) {
    throw ValidationError("manifest tile size and stride must be positive");
  }
  if (split_ratios.size() != split_names.size()) {
    throw ValidationError("manifest split ratios and names differ in length");
  }
  const std::set<std::string> names(split_names.begin(), split_names.end());
  if (names.size() != split_names.size()) {
    throw ValidationError("manifest split names repeat");
  }
  std::set<std::string> ids;
  std::map<int, std::string> band_split;
  for (const auto& t : tiles) {
    if (!ids.insert(t.id).second) {
      throw ValidationError("duplicate tile id '" + t.id + "'");
    }
    if (!names.contains(t.split)) {
      throw ValidationError("tile '" + t.id + "' has unknown split '" +
                            t.split + "'");
    }
    const auto [it, inserted] =
        band_split.emplace(AxisCoord(t, split_axis), t.split);
    if (!inserted && it->second != t.split) {
      throw ValidationError("tiles of band " + std::to_string(it->first) +
                            " fall in more than one split");
    }
  }
  for (const auto& [split, counts] : class_histogram) {
    if (!names.contains(split)) {
      throw ValidationError("histogram names unknown split '" + split + "'");
    }
    if (counts.size() != static_cast<std::size_t>(num_classes)) {
      throw ValidationError("histogram for '" + split +
                            "' does not have num_classes entries");
    }
  }
}

DatasetManifest SplitGeographic(std::vector<TileRecord> tiles,
                                const std::vector<int>& ratios,
                                SplitAxis axis, int tile_size, int stride,
                                int num_classes) {
  std::set<int> coords;
  for (const auto& t : tiles) coords.insert(AxisCoord(t, axis));
  const std::vector<int> columns(coords.begin(), coords.end());
  const auto bounds = SplitBoundaries(static_cast<int>(columns.size()), ratios);

  DatasetManifest manifest;
  manifest.tile_size = tile_size;
  manifest.stride = stride;
  manifest.split_ratios = ratios;
  manifest.split_names = DefaultSplitNames(ratios.size());
  manifest.split_axis = axis;
  manifest.num_classes = num_classes;
  for (auto& t : tiles) {
    const int column = static_cast<int>(
        std::lower_bound(columns.begin(), columns.end(), AxisCoord(t, axis)) -
        columns.begin());
    const auto band = static_cast<std::size_t>(
        std::upper_bound(bounds.begin(), bounds.end(), column) - bounds.begin());
    t.split = manifest.split_names[std::min(band, bounds.size() - 1)];
  }
  manifest.tiles = std::move(tiles);
  for (const auto& name : manifest.split_names) {
    manifest.class_histogram[name].assign(num_classes, 0);
  }
  manifest.Validate();
  return manifest;
}

void RecomputeHistogram(DatasetManifest& manifest,
                        const TileLabelSource& labels) {
  const std::size_t k = static_cast<std::size_t>(manifest.num_classes);
  std::vector<std::vector<std::uint64_t>> per_tile(manifest.tiles.size());
  ParallelFor(0, manifest.tiles.size(), [&](std::size_t i) {
    const LabelRaster raster = labels(manifest.tiles[i]);
    std::vector<std::uint64_t> counts(k, 0);
    for (auto l : raster.label) {
      if (l == kInvalidLabel) continue;
      if (l >= k) {
        throw ValidationError("label " + std::to_string(l) + " in tile '" +
                              manifest.tiles[i].id + "' exceeds class count");
      }
      ++counts[l];
    }
    per_tile[i] = std::move(counts);
  });
  manifest.class_histogram.clear();
  for (const auto& name : manifest.split_names) {
    manifest.class_histogram[name].assign(k, 0);
  }
  for (std::size_t i = 0; i < manifest.tiles.size(); ++i) {
    auto& hist = manifest.class_histogram[manifest.tiles[i].split];
    for (std::size_t c = 0; c < k; ++c) hist[c] += per_tile[i][c];
  }
}

DatasetManifest FilterPureClass(const DatasetManifest& manifest,
                                const TileLabelSource& labels, int class_id,
                                double purity) {
  if (class_id < 0 || class_id >= manifest.num_classes) {
    throw ValidationError("unknown class id " + std::to_string(class_id));
  }
  if (!(purity > 0.0 && purity <= 1.0)) {
    throw ValidationError("purity must lie in (0, 1]");
  }
  std::vector<std::uint8_t> keep(manifest.tiles.size(), 1);
  ParallelFor(0, manifest.tiles.size(), [&](std::size_t i) {
    const LabelRaster raster = labels(manifest.tiles[i]);
    const auto total = raster.label.size();
    const auto hits = static_cast<std::size_t>(
        std::count(raster.label.begin(), raster.label.end(),
                   static_cast<std::uint8_t>(class_id)));
    if (total > 0 && static_cast<double>(hits) >=
                         purity * static_cast<double>(total)) {
      keep[i] = 0;
    }
  });
  DatasetManifest out = manifest;
  out.tiles.clear();
  for (std::size_t i = 0; i < manifest.tiles.size(); ++i) {
    if (keep[i]) out.tiles.push_back(manifest.tiles[i]);
  }
  RecomputeHistogram(out, labels);
  return out;
}

std::string ManifestToJson(const DatasetManifest& manifest) {
  manifest.Validate();
  json doc;
  doc["version"] = DatasetManifest::kVersion;
  doc["tile_size"] = manifest.tile_size;
  doc["stride"] = manifest.stride;
  doc["split_ratios"] = manifest.split_ratios;
  doc["split_names"] = manifest.split_names;
  doc["split_axis"] = std::string(1, SplitAxisName(manifest.split_axis));
  doc["num_classes"] = manifest.num_classes;
  json tiles = json::array();
  for (const auto& t : manifest.tiles) {
    json files = json::object();
    for (const auto& [role, path] : t.files) files[role] = path;
    tiles.push_back({{"id", t.id},
                     {"scene", t.scene},
                     {"x", t.x},
                     {"y", t.y},
                     {"split", t.split},
                     {"files", files}});
  }
  doc["tiles"] = tiles;
  json hist = json::object();
  for (const auto& name : manifest.split_names) {
    const auto it = manifest.class_histogram.find(name);
    hist[name] = it == manifest.class_histogram.end()
                     ? std::vector<std::uint64_t>(manifest.num_classes, 0)
                     : it->second;
  }
  doc["class_histogram"] = hist;
  return doc.dump(2) + "\n";
}

DatasetManifest ManifestFromJson(const std::string& text) {
  DatasetManifest m;
  try {
    const json doc = json::parse(text);
    const int version = doc.at("version").get<int>();
    if (version != DatasetManifest::kVersion) {
      throw VersionError("unsupported manifest version " +
                         std::to_string(version));
    }
    m.tile_size = doc.at("tile_size").get<int>();
    m.stride = doc.at("stride").get<int>();
    m.split_ratios = doc.at("split_ratios").get<std::vector<int>>();
    m.split_names = doc.at("split_names").get<std::vector<std::string>>();
    m.split_axis = ParseSplitAxis(doc.at("split_axis").get<std::string>());
    m.num_classes = doc.at("num_classes").get<int>();
    for (const auto& t : doc.at("tiles")) {
      TileRecord r;
      r.id = t.at("id").get<std::string>();
      r.scene = t.at("scene").get<std::string>();
      r.x = t.at("x").get<int>();
      r.y = t.at("y").get<int>();
      r.split = t.at("split").get<std::string>();
      for (const auto& [role, path] : t.at("files").items()) {
        r.files[role] = path.get<std::string>();
      }
      m.tiles.push_back(std::move(r));
    }
    for (const auto& [split, counts] : doc.at("class_histogram").items()) {
      m.class_histogram[split] = counts.get<std::vector<std::uint64_t>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed manifest: ") + e.what());
  }
  m.Validate();
  return m;
}

void WriteManifest(const std::filesystem::path& path,
                   const DatasetManifest& manifest) {
  const std::string text = ManifestToJson(manifest);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
}

DatasetManifest ReadManifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ManifestFromJson(buffer.str());
}

}  // namespace polsar
