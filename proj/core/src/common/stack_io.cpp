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

#include "polsar/common/stack_io.hpp"

#include <bit>
#include <fstream>
#include <iterator>

#include "json.hpp"
#include "polsar/common/error.hpp"

namespace polsar {
namespace {

using json = nlohmann::ordered_json;

constexpr int kStackVersion = 1;

}  // namespace

void WriteF32Payload(const std::filesystem::path& path,
                     std::span<const double> values) {
  std::vector<char> bytes(values.size() * 4);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(values[i]));
    for (int b = 0; b < 4; ++b) {
      bytes[4 * i + b] = static_cast<char>((bits >> (8 * b)) & 0xFFu);
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write to " + path.string());
}

std::vector<double> ReadF32Payload(const std::filesystem::path& path,
                                   std::size_t expected_count) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  if (bytes.size() != expected_count * 4) {
    throw SizeMismatchError("payload " + path.string() + " holds " +
                            std::to_string(bytes.size()) + " bytes, expected " +
                            std::to_string(expected_count * 4));
  }
  std::vector<double> values(expected_count);
  for (std::size_t i = 0; i < expected_count; ++i) {
    std::uint32_t bits = 0;
    for (int b = 0; b < 4; ++b) {
      bits |= static_cast<std::uint32_t>(
                  static_cast<unsigned char>(bytes[4 * i + b]))
              << (8 * b);
    }
    values[i] = std::bit_cast<float>(bits);
  }
  return values;
}

std::filesystem::path WithExtension(std::filesystem::path base,
                                    const std::string& extension) {
  base.replace_extension(extension);
  return base;
}

std::filesystem::path WriteFloatStack(const std::filesystem::path& base,
                                      const FloatStack& stack) {
  if (stack.data.size() != stack.PixelCount() * stack.channels.size()) {
    throw ValidationError("float stack data size does not match channels");
  }
  const auto manifest_path = WithExtension(base, ".json");
  const auto payload_path = WithExtension(base, ".f32");
  json doc;
  doc["version"] = kStackVersion;
  doc["kind"] = stack.kind;
  doc["width"] = stack.width;
  doc["height"] = stack.height;
  doc["dtype"] = "float32";
  doc["byte_order"] = "little";
  doc["layout"] = "channel-major,row-major";
  doc["channels"] = stack.channels;
  doc["payload"] = payload_path.filename().string();
  std::ofstream out(manifest_path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + manifest_path.string());
  out << doc.dump(2) << '\n';
  WriteF32Payload(payload_path, stack.data);
  return manifest_path;
}

FloatStack ReadFloatStack(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw IoError("cannot open " + manifest_path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("malformed stack manifest " +
                          manifest_path.string() + ": " + e.what());
  }
  try {
    if (doc.at("version").get<int>() != kStackVersion) {
      throw VersionError("unsupported stack manifest version in " +
                         manifest_path.string());
    }
    FloatStack stack;
    stack.kind = doc.at("kind").get<std::string>();
    stack.width = doc.at("width").get<int>();
    stack.height = doc.at("height").get<int>();
    stack.channels = doc.at("channels").get<std::vector<std::string>>();
    if (stack.width < 0 || stack.height < 0) {
      throw ValidationError("negative stack dimensions");
    }
    const auto payload =
        manifest_path.parent_path() / doc.at("payload").get<std::string>();
    stack.data =
        ReadF32Payload(payload, stack.PixelCount() * stack.channels.size());
    return stack;
  } catch (const json::exception& e) {
    throw ValidationError("malformed stack manifest " +
                          manifest_path.string() + ": " + e.what());
  }
}

}  // namespace polsar
