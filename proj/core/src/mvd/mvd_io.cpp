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

#include <fstream>
#include <iterator>

#include "json.hpp"
#include "polsar/common/error.hpp"
#include "polsar/mvd/mvd.hpp"

namespace polsar {
namespace {

using json = nlohmann::ordered_json;

constexpr char kMagic[4] = {'M', 'V', 'D', '1'};

std::string_view KindName(MvdClassKind kind) {
  switch (kind) {
    case MvdClassKind::kScattering:
      return "scattering";
    case MvdClassKind::kMixed:
      return "mixed";
    case MvdClassKind::kOther:
      return "other";
  }
  return "unknown";
}

MvdClassKind ParseKind(const std::string& name) {
  if (name == "scattering") return MvdClassKind::kScattering;
  if (name == "mixed") return MvdClassKind::kMixed;
  if (name == "other") return MvdClassKind::kOther;
  throw ValidationError("unknown legend class kind '" + name + "'");
}

}  // namespace

void WriteMvdFile(const std::filesystem::path& path, const MvdRaster& mvd) {
  if (mvd.class_count() < 1 || mvd.class_count() > 255) {
    throw ValidationError("MVD1 stores 1..255 classes");
  }
  if (mvd.width > 0xFFFF || mvd.height > 0xFFFF || mvd.width < 0 ||
      mvd.height < 0) {
    throw ValidationError("MVD1 dimensions must fit in 16 bits");
  }
  if (mvd.class_index.size() != mvd.PixelCount()) {
    throw ValidationError("class index buffer size mismatch");
  }
  std::string out(kMagic, 4);
  auto put_u16 = [&](int v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
  };
  put_u16(mvd.width);
  put_u16(mvd.height);
  out.push_back(static_cast<char>(mvd.class_count()));
  for (const auto& e : mvd.legend) {
    for (auto b : e.color) out.push_back(static_cast<char>(b));
  }
  for (auto c : mvd.class_index) {
    if (c >= mvd.class_count()) throw ValidationError("class index out of range");
    out.push_back(static_cast<char>(c));
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + path.string());
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
}

MvdRaster ReadMvdFile(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(file)),
                          std::istreambuf_iterator<char>());
  if (bytes.size() < MvdHeaderBytes(0) ||
      bytes.compare(0, 4, std::string(kMagic, 4)) != 0) {
    throw ValidationError(path.string() + " is not an MVD1 file");
  }
  auto u8 = [&](std::size_t i) { return static_cast<unsigned char>(bytes[i]); };
  MvdRaster mvd;
  mvd.width = u8(4) | (u8(5) << 8);
  mvd.height = u8(6) | (u8(7) << 8);
  const int count = u8(8);
  if (bytes.size() != MvdHeaderBytes(count) + mvd.PixelCount()) {
    throw SizeMismatchError("MVD1 payload size does not match header in " +
                            path.string());
  }
  for (int c = 0; c < count; ++c) {
    MvdLegendEntry e;
    e.name = "class" + std::to_string(c);
    const std::size_t p = 9 + 3 * static_cast<std::size_t>(c);
    e.color = {u8(p), u8(p + 1), u8(p + 2)};
    mvd.legend.push_back(e);
  }
  mvd.class_index.assign(bytes.begin() + static_cast<long>(MvdHeaderBytes(count)),
                         bytes.end());
  for (auto c : mvd.class_index) {
    if (c >= count) throw ValidationError("MVD1 class index out of range");
  }
  return mvd;
}

void WriteLegendJson(const std::filesystem::path& path, const MvdRaster& mvd) {
  json doc;
  doc["version"] = 1;
  doc["kind"] = "mvd_legend";
  doc["class_count"] = mvd.class_count();
  json classes = json::array();
  for (int c = 0; c < mvd.class_count(); ++c) {
    const auto& e = mvd.legend[c];
    json entry;
    entry["index"] = c;
    entry["name"] = e.name;
    entry["kind"] = std::string(KindName(e.kind));
    if (e.primary_type) {
      entry["primary_type"] = std::string(PrimaryTypeName(*e.primary_type));
    } else {
      entry["primary_type"] = nullptr;
    }
    entry["tier"] = e.tier;
    entry["rgb"] = {e.color[0], e.color[1], e.color[2]};
    classes.push_back(entry);
  }
  doc["classes"] = classes;
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

std::vector<MvdLegendEntry> ReadLegendJson(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    const json doc = json::parse(in);
    if (doc.at("version").get<int>() != 1) {
      throw VersionError("unsupported legend version");
    }
    std::vector<MvdLegendEntry> legend;
    for (const auto& entry : doc.at("classes")) {
      MvdLegendEntry e;
      e.name = entry.at("name").get<std::string>();
      e.kind = ParseKind(entry.at("kind").get<std::string>());
      const auto& pt = entry.at("primary_type");
      if (!pt.is_null()) {
        e.primary_type = ParsePrimaryType(pt.get<std::string>());
        if (!e.primary_type) throw ValidationError("unknown primary type");
      }
      e.tier = entry.at("tier").get<int>();
      const auto rgb = entry.at("rgb").get<std::vector<int>>();
      if (rgb.size() != 3) throw ValidationError("legend colour needs 3 bytes");
      for (int i = 0; i < 3; ++i) e.color[i] = static_cast<std::uint8_t>(rgb[i]);
      legend.push_back(e);
    }
    return legend;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("malformed legend " + path.string() + ": " + e.what());
  }
}

}  // namespace polsar
