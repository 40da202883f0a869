#include "skintone/image.hpp"

#include <png.h>

#include <algorithm>
#include <cstdio>
#include <memory>
#include <string>

#include "skintone/error.hpp"

namespace skintone {

RgbImage::RgbImage(std::size_t width, std::size_t height, Srgb8 fill)
    : width_(width), height_(height), pixels_(width * height, fill) {}

RgbImage::RgbImage(std::size_t width, std::size_t height, std::vector<Srgb8> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (pixels_.size() != width * height) {
    throw Error(ErrorCode::kDimensionMismatch, "pixel buffer does not match " +
                                                   std::to_string(width) + "x" +
                                                   std::to_string(height));
  }
}

SkinMask::SkinMask(std::size_t width, std::size_t height, bool fill)
    : width_(width), height_(height), data_(width * height, fill ? 1 : 0) {}

SkinMask SkinMask::from_gray(std::size_t width, std::size_t height,
                             std::span<const std::uint8_t> gray) {
  if (gray.size() != width * height) {
    throw Error(ErrorCode::kDimensionMismatch, "mask buffer does not match dimensions");
  }
  SkinMask mask(width, height);
  std::transform(gray.begin(), gray.end(), mask.data_.begin(),
                 [](std::uint8_t v) -> std::uint8_t { return v > kSkinThreshold ? 1 : 0; });
  return mask;
}

std::size_t SkinMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.string().c_str(), mode));
  if (!f) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  return f;
}

[[noreturn]] void png_fail(png_structp png, png_const_charp msg) {
  auto* out = static_cast<std::string*>(png_get_error_ptr(png));
  if (out) *out = msg;
  png_longjmp(png, 1);
}

void png_warn(png_structp, png_const_charp) {}

// Decodes to 8-bit with `channels` = 3 (RGB) or 1 (gray).
std::vector<std::uint8_t> decode_png(const std::filesystem::path& path, int channels,
                                     std::size_t& width, std::size_t& height) {
  FilePtr file = open_file(path, "rb");
  std::string error;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &error, png_fail, png_warn);
  if (!png) throw Error(ErrorCode::kIoFailure, "png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  std::vector<std::uint8_t> buffer;
  std::vector<png_bytep> rows;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorCode::kIoFailure, path.string() + ": " + error);
  }

  png_init_io(png, file.get());
  png_read_info(png, info);

  const png_byte color_type = png_get_color_type(png, info);
  const png_byte bit_depth = png_get_bit_depth(png, info);
  if (bit_depth == 16) png_set_strip_16(png);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color_type & PNG_COLOR_MASK_ALPHA || png_get_valid(png, info, PNG_INFO_tRNS)) {
    png_set_strip_alpha(png);
  }
  const bool is_color = (color_type & PNG_COLOR_MASK_COLOR) != 0;
  if (channels == 3 && !is_color) png_set_gray_to_rgb(png);
  if (channels == 1 && is_color) png_set_rgb_to_gray_fixed(png, 1, -1, -1);
  png_read_update_info(png, info);

  width = png_get_image_width(png, info);
  height = png_get_image_height(png, info);
  const std::size_t stride = png_get_rowbytes(png, info);
  if (stride != width * static_cast<std::size_t>(channels)) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorCode::kIoFailure, path.string() + ": unsupported pixel layout");
  }
  buffer.resize(stride * height);
  rows.resize(height);
  for (std::size_t y = 0; y < height; ++y) rows[y] = buffer.data() + y * stride;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return buffer;
}

void encode_png(const std::filesystem::path& path, const std::uint8_t* data, std::size_t width,
                std::size_t height, int channels) {
  FilePtr file = open_file(path, "wb");
  std::string error;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &error, png_fail, png_warn);
  if (!png) throw Error(ErrorCode::kIoFailure, "png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  std::vector<png_bytep> rows(height);

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::kIoFailure, path.string() + ": " + error);
  }

  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
               channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const std::size_t stride = width * static_cast<std::size_t>(channels);
  for (std::size_t y = 0; y < height; ++y) {
    rows[y] = const_cast<png_bytep>(data + y * stride);
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

RgbImage read_png_rgb(const std::filesystem::path& path) {
  std::size_t width = 0;
  std::size_t height = 0;
  const std::vector<std::uint8_t> raw = decode_png(path, 3, width, height);
  std::vector<Srgb8> pixels(width * height);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    pixels[i] = {raw[3 * i], raw[3 * i + 1], raw[3 * i + 2]};
  }
  return RgbImage(width, height, std::move(pixels));
}

SkinMask read_png_mask(const std::filesystem::path& path) {
  std::size_t width = 0;
  std::size_t height = 0;
  const std::vector<std::uint8_t> raw = decode_png(path, 1, width, height);
  return SkinMask::from_gray(width, height, raw);
}

void write_png_rgb(const std::filesystem::path& path, const RgbImage& image) {
  std::vector<std::uint8_t> raw;
  raw.reserve(image.size() * 3);
  for (const Srgb8& p : image.pixels()) {
    raw.push_back(p.r);
    raw.push_back(p.g);
    raw.push_back(p.b);
  }
  encode_png(path, raw.data(), image.width(), image.height(), 3);
}

void write_png_mask(const std::filesystem::path& path, const SkinMask& mask) {
  std::vector<std::uint8_t> raw(mask.size());
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = mask[i] ? 255 : 0;
  encode_png(path, raw.data(), mask.width(), mask.height(), 1);
}

}  // namespace skintone
