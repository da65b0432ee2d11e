#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace scripta {

// 8-bit grayscale raster, row-major, origin at the top-left corner.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // width * height intensities in [0,255]

  GrayImage() = default;
  GrayImage(int w, int h, std::uint8_t fill = 255)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {}

  std::uint8_t at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
  std::uint8_t& at(int x, int y) {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
  bool empty() const { return width <= 0 || height <= 0; }
};

// Binary ink mask with the same geometry as its source GrayImage.
// ink(x,y) == 1 means foreground (ink), 0 means background.
struct BinaryImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> ink;  // 0/1 per pixel, row-major

  BinaryImage() = default;
  BinaryImage(int w, int h, std::uint8_t fill = 0)
      : width(w), height(h), ink(static_cast<std::size_t>(w) * h, fill) {}

  std::uint8_t at(int x, int y) const {
    return ink[static_cast<std::size_t>(y) * width + x];
  }
  std::uint8_t& at(int x, int y) {
    return ink[static_cast<std::size_t>(y) * width + x];
  }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height;
  }
  bool empty() const { return width <= 0 || height <= 0; }
};

std::size_t ink_count(const BinaryImage& img);

// Raster file I/O. Supported formats are the NetPBM family:
// PBM (P1/P4, 1-bit), PGM (P2/P5, 8-bit gray), PPM (P3/P6, 8-bit color).
// Color input is reduced to luminance with weights 0.299/0.587/0.114.
GrayImage load_gray(const std::filesystem::path& path);
void save_pgm(const GrayImage& img, const std::filesystem::path& path);

// Binary masks persist as 1-bit PBM rasters.
BinaryImage load_mask(const std::filesystem::path& path);
void save_mask(const BinaryImage& img, const std::filesystem::path& path);

// RGB color image, used only by the overlay renderer.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // 3 bytes per pixel, row-major

  RgbImage() = default;
  RgbImage(int w, int h, std::uint8_t r = 255, std::uint8_t g = 255,
           std::uint8_t b = 255)
      : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3) {
    for (std::size_t i = 0; i < rgb.size(); i += 3) {
      rgb[i] = r;
      rgb[i + 1] = g;
      rgb[i + 2] = b;
    }
  }
  void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
    rgb[i] = r;
    rgb[i + 1] = g;
    rgb[i + 2] = b;
  }
};

void save_ppm(const RgbImage& img, const std::filesystem::path& path);

}  // namespace scripta
