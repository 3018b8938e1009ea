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

#include "polsar/common/png_io.hpp"

#include <png.h>

#include <cstdio>
#include <memory>
#include <string>

#include "polsar/common/error.hpp"

namespace polsar {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr OpenOrThrow(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw IoError("cannot open " + path.string());
  return f;
}

[[noreturn]] void PngFailure(png_structp, png_const_charp message) {
  throw IoError(std::string("png: ") + message);
}

void PngWarning(png_structp, png_const_charp) {}

void WriteRows(const std::filesystem::path& path, int width, int height,
               int color_type, const std::uint8_t* data, int row_bytes,
               std::span<const Rgb> palette) {
  FilePtr file = OpenOrThrow(path, "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                            PngFailure, PngWarning);
  if (png == nullptr) throw IoError("png: cannot allocate writer");
  png_infop info = png_create_info_struct(png);
  struct Guard {
    png_structp* png;
    png_infop* info;
    ~Guard() { png_destroy_write_struct(png, info); }
  } guard{&png, &info};
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width),
               static_cast<png_uint_32>(height), 8, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  std::vector<png_color> colors;
  if (color_type == PNG_COLOR_TYPE_PALETTE) {
    for (const auto& c : palette) colors.push_back({c[0], c[1], c[2]});
    png_set_PLTE(png, info, colors.data(), static_cast<int>(colors.size()));
  }
  png_write_info(png, info);
  for (int y = 0; y < height; ++y) {
    png_write_row(png, const_cast<png_bytep>(data + y * row_bytes));
  }
  png_write_end(png, nullptr);
}

}  // namespace

void WritePng(const std::filesystem::path& path, const Image8& image) {
  if (image.channels != 1 && image.channels != 3) {
    throw ValidationError("png: unsupported channel count");
  }
  if (image.pixels.size() != static_cast<std::size_t>(image.width) *
                                 image.height * image.channels) {
    throw ValidationError("png: pixel buffer size mismatch");
  }
  WriteRows(path, image.width, image.height,
            image.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
            image.pixels.data(), image.width * image.channels, {});
}

void WriteIndexedPng(const std::filesystem::path& path, int width, int height,
                     std::span<const std::uint8_t> indices,
                     std::span<const Rgb> palette) {
  if (palette.empty() || palette.size() > 256) {
    throw ValidationError("png: palette must hold 1..256 entries");
  }
  if (indices.size() != static_cast<std::size_t>(width) * height) {
    throw ValidationError("png: index buffer size mismatch");
  }
  WriteRows(path, width, height, PNG_COLOR_TYPE_PALETTE, indices.data(), width,
            palette);
}

Image8 ReadPngRgb(const std::filesystem::path& path) {
  FilePtr file = OpenOrThrow(path, "rb");
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                           PngFailure, PngWarning);
  if (png == nullptr) throw IoError("png: cannot allocate reader");
  png_infop info = png_create_info_struct(png);
  struct Guard {
    png_structp* png;
    png_infop* info;
    ~Guard() { png_destroy_read_struct(png, info, nullptr); }
  } guard{&png, &info};
  png_init_io(png, file.get());
  png_read_info(png, info);
  const int color_type = png_get_color_type(png, info);
  if (png_get_bit_depth(png, info) == 16) png_set_strip_16(png);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY ||
      color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_expand_gray_1_2_4_to_8(png);
    png_set_gray_to_rgb(png);
  }
  if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);

  Image8 image;
  image.width = static_cast<int>(png_get_image_width(png, info));
  image.height = static_cast<int>(png_get_image_height(png, info));
  image.channels = 3;
  const std::size_t row_bytes = png_get_rowbytes(png, info);
  if (row_bytes != static_cast<std::size_t>(image.width) * 3) {
    throw IoError("png: unexpected row layout in " + path.string());
  }
  image.pixels.resize(row_bytes * image.height);
  for (int y = 0; y < image.height; ++y) {
    png_read_row(png, image.pixels.data() + y * row_bytes, nullptr);
  }
  png_read_end(png, nullptr);
  return image;
}

}  // namespace polsar
