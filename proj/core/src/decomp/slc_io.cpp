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

#include "polsar/decomp/slc_io.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "polsar/common/error.hpp"

namespace polsar {
namespace {

constexpr std::string_view kMagic = "PSLC";
constexpr std::size_t kMaxHeaderBytes = 128;

void PutF32(std::string& out, float value) {
  const auto bits = std::bit_cast<std::uint32_t>(value);
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>(bits >> (8 * b)));
}

float GetF32(const char* p) {
  std::uint32_t bits = 0;
  for (int b = 0; b < 4; ++b) {
    bits |= static_cast<std::uint32_t>(static_cast<unsigned char>(p[b]))
            << (8 * b);
  }
  return std::bit_cast<float>(bits);
}

}  // namespace

ScatteringField ScatteringField::Zeros(int width, int height) {
  ScatteringField f;
  f.width = width;
  f.height = height;
  const std::size_t n = f.PixelCount();
  f.s_hh.assign(n, {});
  f.s_hv.assign(n, {});
  f.s_vv.assign(n, {});
  return f;
}

void ScatteringField::Validate() const {
  if (width < 0 || height < 0) {
    throw ValidationError("scattering field has negative dimensions");
  }
  const std::size_t n = PixelCount();
  if (s_hh.size() != n || s_hv.size() != n || s_vv.size() != n) {
    throw ValidationError("scattering field channel length != width*height");
  }
}

ScatteringField LoadSlc(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open SLC file " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  const auto newline = bytes.find('\n');
  if (newline == std::string::npos || newline > kMaxHeaderBytes) {
    throw ValidationError("SLC header line missing in " + path.string());
  }
  std::istringstream header(bytes.substr(0, newline));
  std::string tag;
  long long width = -1;
  long long height = -1;
  header >> tag;
  if (tag.size() <= kMagic.size() || tag.compare(0, kMagic.size(), kMagic) != 0) {
    throw ValidationError("not an SLC container: " + path.string());
  }
  if (tag.substr(kMagic.size()) != "1") {
    throw VersionError("unsupported SLC version '" + tag + "' in " +
                       path.string());
  }
  if (!(header >> width >> height) || width < 0 || height < 0 ||
      width > 1 << 20 || height > 1 << 20) {
    throw ValidationError("malformed SLC dimensions in " + path.string());
  }
  std::string rest;
  if (header >> rest) {
    throw ValidationError("trailing tokens in SLC header of " + path.string());
  }

  ScatteringField field = ScatteringField::Zeros(static_cast<int>(width),
                                                 static_cast<int>(height));
  const std::size_t n = field.PixelCount();
  const std::size_t payload = bytes.size() - newline - 1;
  if (payload != 3 * n * 8) {
    throw SizeMismatchError("SLC header declares " + std::to_string(width) +
                            "x" + std::to_string(height) + " (" +
                            std::to_string(3 * n * 8) + " payload bytes) but " +
                            std::to_string(payload) + " bytes follow");
  }
  const char* p = bytes.data() + newline + 1;
  for (auto* channel : {&field.s_hh, &field.s_hv, &field.s_vv}) {
    for (std::size_t i = 0; i < n; ++i, p += 8) {
      (*channel)[i] = {GetF32(p), GetF32(p + 4)};
    }
  }
  return field;
}

void WriteSlc(const std::filesystem::path& path, const ScatteringField& field) {
  field.Validate();
  std::string out = "PSLC1 " + std::to_string(field.width) + " " +
                    std::to_string(field.height) + "\n";
  out.reserve(out.size() + 3 * field.PixelCount() * 8);
  for (const auto* channel : {&field.s_hh, &field.s_hv, &field.s_vv}) {
    for (const auto& s : *channel) {
      PutF32(out, s.real());
      PutF32(out, s.imag());
    }
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write SLC file " + path.string());
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw IoError("short write to " + path.string());
}

}  // namespace polsar
