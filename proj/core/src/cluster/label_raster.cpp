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

#include "polsar/cluster/label_raster.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>

#include "json.hpp"
#include "polsar/common/error.hpp"
#include "polsar/common/stack_io.hpp"

namespace polsar {
namespace {

using json = nlohmann::ordered_json;

constexpr int kLabelVersion = 1;

}  // namespace

LabelRaster LabelRaster::Filled(int width, int height, int class_count,
                                std::uint8_t value) {
  LabelRaster r;
  r.width = width;
  r.height = height;
  r.class_count = class_count;
  r.label.assign(r.PixelCount(), value);
  return r;
}

std::size_t LabelRaster::ValidCount() const {
  return static_cast<std::size_t>(
      std::count_if(label.begin(), label.end(),
                    [](std::uint8_t l) { return l != kInvalidLabel; }));
}

void LabelRaster::Validate() const {
  if (width < 0 || height < 0) throw ValidationError("negative raster size");
  if (class_count < 0 || class_count > kInvalidLabel) {
    throw ValidationError("label raster class count out of range");
  }
  if (label.size() != PixelCount()) {
    throw ValidationError("label buffer length != width*height");
  }
  if (!class_names.empty() &&
      class_names.size() != static_cast<std::size_t>(class_count)) {
    throw ValidationError("class name list does not match class count");
  }
  for (auto l : label) {
    if (l != kInvalidLabel && l >= class_count) {
      throw ValidationError("label " + std::to_string(l) +
                            " >= class count " + std::to_string(class_count));
    }
  }
}

std::filesystem::path WriteLabelRaster(const std::filesystem::path& base,
                                       const LabelRaster& raster) {
  raster.Validate();
  const auto manifest = WithExtension(base, ".json");
  const auto payload = WithExtension(base, ".u8");
  json doc;
  doc["version"] = kLabelVersion;
  doc["kind"] = "labels";
  doc["width"] = raster.width;
  doc["height"] = raster.height;
  doc["class_count"] = raster.class_count;
  doc["invalid_label"] = kInvalidLabel;
  doc["class_names"] = raster.class_names;
  doc["payload"] = payload.filename().string();
  {
    std::ofstream out(manifest, std::ios::trunc);
    if (!out) throw IoError("cannot write " + manifest.string());
    out << doc.dump(2) << '\n';
  }
  std::ofstream out(payload, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + payload.string());
  out.write(reinterpret_cast<const char*>(raster.label.data()),
            static_cast<std::streamsize>(raster.label.size()));
  return manifest;
}

LabelRaster ReadLabelRaster(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw IoError("cannot open " + manifest_path.string());
  LabelRaster raster;
  std::filesystem::path payload;
  try {
    const json doc = json::parse(in);
    if (doc.at("version").get<int>() != kLabelVersion) {
      throw VersionError("unsupported label raster version in " +
                         manifest_path.string());
    }
    if (doc.at("kind").get<std::string>() != "labels") {
      throw ValidationError(manifest_path.string() + " is not a label raster");
    }
    raster.width = doc.at("width").get<int>();
    raster.height = doc.at("height").get<int>();
    raster.class_count = doc.at("class_count").get<int>();
    raster.class_names = doc.at("class_names").get<std::vector<std::string>>();
    payload = manifest_path.parent_path() / doc.at("payload").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("malformed label manifest " +
                          manifest_path.string() + ": " + e.what());
  }
  std::ifstream bin(payload, std::ios::binary);
  if (!bin) throw IoError("cannot open " + payload.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(bin)),
                          std::istreambuf_iterator<char>());
  if (raster.width < 0 || raster.height < 0 ||
      bytes.size() != raster.PixelCount()) {
    throw SizeMismatchError("label payload " + payload.string() +
                            " does not match declared dimensions");
  }
  raster.label.assign(bytes.begin(), bytes.end());
  raster.Validate();
  return raster;
}

}  // namespace polsar
