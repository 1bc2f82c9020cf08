// Copyright 2026 The Grasp Forge Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "graspforge/io/image_io.hpp"

#include <png.h>
#include <tiffio.h>

#include <cstring>
#include <memory>
#include <vector>

#include "graspforge/errors.hpp"

namespace graspforge::io {

ImageU8 read_png_rgb(const std::filesystem::path& path) {
  png_image png;
  std::memset(&png, 0, sizeof png);
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.c_str())) {
    throw DataError("cannot read PNG " + path.string() + ": " + png.message);
  }
  png.format = PNG_FORMAT_RGB;
  ImageU8 image(static_cast<int>(png.width), static_cast<int>(png.height), 3);
  if (!png_image_finish_read(&png, nullptr, image.pixels.data(), 0, nullptr)) {
    png_image_free(&png);
    throw DataError("cannot decode PNG " + path.string() + ": " + png.message);
  }
  return image;
}

void write_png(const std::filesystem::path& path, const ImageU8& image) {
  png_image png;
  std::memset(&png, 0, sizeof png);
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width);
  png.height = static_cast<png_uint_32>(image.height);
  switch (image.channels) {
    case 1: png.format = PNG_FORMAT_GRAY; break;
    case 3: png.format = PNG_FORMAT_RGB; break;
    case 4: png.format = PNG_FORMAT_RGBA; break;
    default: throw InvalidArgument("write_png supports 1, 3 or 4 channels");
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  if (!png_image_write_to_file(&png, path.c_str(), 0, image.pixels.data(), 0, nullptr)) {
    throw DataError("cannot write PNG " + path.string() + ": " + png.message);
  }
}

namespace {
struct TiffCloser {
  void operator()(TIFF* t) const { TIFFClose(t); }
};
using TiffHandle = std::unique_ptr<TIFF, TiffCloser>;

template <typename S>
void convert_row(const std::vector<unsigned char>& row, int width, int spp, double scale, float* out) {
  const S* samples = reinterpret_cast<const S*>(row.data());
  for (int x = 0; x < width; ++x) out[x] = static_cast<float>(static_cast<double>(samples[x * spp]) * scale);
}
}  // namespace

ImageF read_tiff_depth(const std::filesystem::path& path, double integer_scale) {
  TIFFSetWarningHandler(nullptr);
  TiffHandle tif(TIFFOpen(path.c_str(), "r"));
  if (!tif) throw DataError("cannot open TIFF " + path.string());
  uint32_t width = 0, height = 0;
  uint16_t bits = 0, spp = 1, format = SAMPLEFORMAT_UINT;
  TIFFGetField(tif.get(), TIFFTAG_IMAGEWIDTH, &width);
  TIFFGetField(tif.get(), TIFFTAG_IMAGELENGTH, &height);
  TIFFGetFieldDefaulted(tif.get(), TIFFTAG_BITSPERSAMPLE, &bits);
  TIFFGetFieldDefaulted(tif.get(), TIFFTAG_SAMPLESPERPIXEL, &spp);
  TIFFGetFieldDefaulted(tif.get(), TIFFTAG_SAMPLEFORMAT, &format);
  if (width == 0 || height == 0) throw DataError("empty TIFF " + path.string());

  ImageF image(static_cast<int>(width), static_cast<int>(height));
  std::vector<unsigned char> row(static_cast<std::size_t>(TIFFScanlineSize(tif.get())));
  for (uint32_t y = 0; y < height; ++y) {
    if (TIFFReadScanline(tif.get(), row.data(), y, 0) < 0) throw DataError("corrupt TIFF " + path.string());
    float* out = image.pixels.data() + static_cast<std::size_t>(y) * width;
    const int w = static_cast<int>(width);
    if (format == SAMPLEFORMAT_IEEEFP && bits == 32) {
      convert_row<float>(row, w, spp, 1.0, out);
    } else if (format == SAMPLEFORMAT_IEEEFP && bits == 64) {
      convert_row<double>(row, w, spp, 1.0, out);
    } else if (bits == 16) {
      convert_row<uint16_t>(row, w, spp, integer_scale, out);
    } else if (bits == 32) {
      convert_row<uint32_t>(row, w, spp, integer_scale, out);
    } else if (bits == 8) {
      convert_row<uint8_t>(row, w, spp, integer_scale, out);
    } else {
      throw DataError("unsupported TIFF sample layout in " + path.string());
    }
  }
  return image;
}

void write_tiff_depth(const std::filesystem::path& path, const ImageF& depth) {
  if (depth.channels != 1) throw InvalidArgument("write_tiff_depth expects a single-channel image");
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  TiffHandle tif(TIFFOpen(path.c_str(), "w"));
  if (!tif) throw DataError("cannot create TIFF " + path.string());
  TIFFSetField(tif.get(), TIFFTAG_IMAGEWIDTH, static_cast<uint32_t>(depth.width));
  TIFFSetField(tif.get(), TIFFTAG_IMAGELENGTH, static_cast<uint32_t>(depth.height));
  TIFFSetField(tif.get(), TIFFTAG_SAMPLESPERPIXEL, 1);
  TIFFSetField(tif.get(), TIFFTAG_BITSPERSAMPLE, 32);
  TIFFSetField(tif.get(), TIFFTAG_SAMPLEFORMAT, SAMPLEFORMAT_IEEEFP);
  TIFFSetField(tif.get(), TIFFTAG_PHOTOMETRIC, PHOTOMETRIC_MINISBLACK);
  TIFFSetField(tif.get(), TIFFTAG_PLANARCONFIG, PLANARCONFIG_CONTIG);
  TIFFSetField(tif.get(), TIFFTAG_ROWSPERSTRIP, 1);
  std::vector<float> row(static_cast<std::size_t>(depth.width));
  for (int y = 0; y < depth.height; ++y) {
    std::memcpy(row.data(), depth.pixels.data() + static_cast<std::size_t>(y) * depth.width,
                row.size() * sizeof(float));
    if (TIFFWriteScanline(tif.get(), row.data(), static_cast<uint32_t>(y), 0) < 0) {
      throw DataError("failed writing TIFF " + path.string());
    }
  }
}

}  // namespace graspforge::io
