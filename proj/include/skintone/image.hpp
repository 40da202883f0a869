#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "skintone/colorimetry.hpp"

namespace skintone {

// Row-major 8-bit sRGB raster.
class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(std::size_t width, std::size_t height, Srgb8 fill = {});
  RgbImage(std::size_t width, std::size_t height, std::vector<Srgb8> pixels);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  bool empty() const noexcept { return pixels_.empty(); }

  Srgb8& at(std::size_t x, std::size_t y) { return pixels_[y * width_ + x]; }
  const Srgb8& at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }

  std::span<const Srgb8> pixels() const noexcept { return pixels_; }
  std::span<Srgb8> pixels() noexcept { return pixels_; }

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<Srgb8> pixels_;
};

// Per-pixel skin flag, same layout as RgbImage.
class SkinMask {
 public:
  // 8-bit grayscale mask values above this count as skin.
  static constexpr std::uint8_t kSkinThreshold = 127;

  SkinMask() = default;
  SkinMask(std::size_t width, std::size_t height, bool fill = false);

  static SkinMask from_gray(std::size_t width, std::size_t height,
                            std::span<const std::uint8_t> gray);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }

  bool at(std::size_t x, std::size_t y) const { return data_[y * width_ + x] != 0; }
  void set(std::size_t x, std::size_t y, bool skin) { data_[y * width_ + x] = skin ? 1 : 0; }
  bool operator[](std::size_t index) const { return data_[index] != 0; }

  std::size_t count() const noexcept;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> data_;
};

// PNG I/O. Any colour type is normalized to 8-bit RGB (or gray for masks);
// alpha is dropped. All failures throw Error{kIoFailure}.
RgbImage read_png_rgb(const std::filesystem::path& path);
SkinMask read_png_mask(const std::filesystem::path& path);
void write_png_rgb(const std::filesystem::path& path, const RgbImage& image);
void write_png_mask(const std::filesystem::path& path, const SkinMask& mask);

}  // namespace skintone
