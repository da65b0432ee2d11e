#include "scripta/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace scripta {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path,
                       const std::string& what) {
  throw std::runtime_error(path.string() + ": " + what);
}

// Reads the next token, skipping whitespace and '#' comment lines.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
      continue;
    }
    if (!std::isspace(c)) {
      tok.push_back(static_cast<char>(c));
      while ((c = in.peek()) != EOF && !std::isspace(c)) {
        tok.push_back(static_cast<char>(in.get()));
      }
      return tok;
    }
  }
  return tok;
}

int next_int(std::istream& in, const std::filesystem::path& path) {
  const std::string tok = next_token(in);
  if (tok.empty()) fail(path, "truncated header");
  try {
    return std::stoi(tok);
  } catch (const std::exception&) {
    fail(path, "bad header token '" + tok + "'");
  }
}

}  // namespace

std::size_t ink_count(const BinaryImage& img) {
  std::size_t n = 0;
  for (std::uint8_t v : img.ink) n += v != 0;
  return n;
}

GrayImage load_gray(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open");
  std::string magic = next_token(in);
  if (magic.size() != 2 || magic[0] != 'P') fail(path, "not a PNM raster");
  const char kind = magic[1];
  if (kind < '1' || kind > '6') fail(path, "unsupported PNM variant");

  const int w = next_int(in, path);
  const int h = next_int(in, path);
  if (w <= 0 || h <= 0) fail(path, "bad dimensions");
  int maxval = 1;
  if (kind != '1' && kind != '4') {
    maxval = next_int(in, path);
    if (maxval <= 0 || maxval > 65535) fail(path, "bad maxval");
  }

  GrayImage img(w, h);
  const std::size_t n = static_cast<std::size_t>(w) * h;

  auto scale = [&](long v) -> std::uint8_t {
    if (v < 0 || v > maxval) fail(path, "sample out of range");
    return static_cast<std::uint8_t>((v * 255 + maxval / 2) / maxval);
  };

  switch (kind) {
    case '1': {  // ascii bitmap: 1 = black ink
      for (std::size_t i = 0; i < n; ++i) {
        int v = next_int(in, path);
        img.pixels[i] = v ? 0 : 255;
      }
      break;
    }
    case '2': {  // ascii graymap
      for (std::size_t i = 0; i < n; ++i) img.pixels[i] = scale(next_int(in, path));
      break;
    }
    case '3': {  // ascii pixmap
      for (std::size_t i = 0; i < n; ++i) {
        const double r = scale(next_int(in, path));
        const double g = scale(next_int(in, path));
        const double b = scale(next_int(in, path));
        img.pixels[i] = static_cast<std::uint8_t>(
            std::lround(0.299 * r + 0.587 * g + 0.114 * b));
      }
      break;
    }
    case '4': {  // raw bitmap, rows padded to whole bytes
      in.get();  // single whitespace after header
      const int stride = (w + 7) / 8;
      std::vector<char> row(stride);
      for (int y = 0; y < h; ++y) {
        if (!in.read(row.data(), stride)) fail(path, "truncated pixel data");
        for (int x = 0; x < w; ++x) {
          const bool bit = (row[x >> 3] >> (7 - (x & 7))) & 1;
          img.at(x, y) = bit ? 0 : 255;
        }
      }
      break;
    }
    case '5': {  // raw graymap (8-bit only)
      if (maxval > 255) fail(path, "16-bit PGM not supported");
      in.get();
      std::vector<char> buf(n);
      if (!in.read(buf.data(), static_cast<std::streamsize>(n)))
        fail(path, "truncated pixel data");
      for (std::size_t i = 0; i < n; ++i)
        img.pixels[i] = scale(static_cast<unsigned char>(buf[i]));
      break;
    }
    case '6': {  // raw pixmap
      if (maxval > 255) fail(path, "16-bit PPM not supported");
      in.get();
      std::vector<char> buf(n * 3);
      if (!in.read(buf.data(), static_cast<std::streamsize>(n * 3)))
        fail(path, "truncated pixel data");
      for (std::size_t i = 0; i < n; ++i) {
        const double r = scale(static_cast<unsigned char>(buf[3 * i]));
        const double g = scale(static_cast<unsigned char>(buf[3 * i + 1]));
        const double b = scale(static_cast<unsigned char>(buf[3 * i + 2]));
        img.pixels[i] = static_cast<std::uint8_t>(
            std::lround(0.299 * r + 0.587 * g + 0.114 * b));
      }
      break;
    }
    default:
      fail(path, "unsupported PNM variant");
  }
  return img;
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(path, "cannot write");
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
  if (!out) fail(path, "write failed");
}

BinaryImage load_mask(const std::filesystem::path& path) {
  const GrayImage g = load_gray(path);
  BinaryImage b(g.width, g.height);
  // Dark pixels are ink; accept both PBM and thresholded grayscale masks.
  for (std::size_t i = 0; i < g.pixels.size(); ++i) b.ink[i] = g.pixels[i] < 128;
  return b;
}

void save_mask(const BinaryImage& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(path, "cannot write");
  out << "P4\n" << img.width << " " << img.height << "\n";
  const int stride = (img.width + 7) / 8;
  std::vector<char> row(stride);
  for (int y = 0; y < img.height; ++y) {
    std::fill(row.begin(), row.end(), 0);
    for (int x = 0; x < img.width; ++x) {
      if (img.at(x, y)) row[x >> 3] |= static_cast<char>(1 << (7 - (x & 7)));
    }
    out.write(row.data(), stride);
  }
  if (!out) fail(path, "write failed");
}

void save_ppm(const RgbImage& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(path, "cannot write");
  out << "P6\n" << img.width << " " << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.rgb.data()),
            static_cast<std::streamsize>(img.rgb.size()));
  if (!out) fail(path, "write failed");
}

}  // namespace scripta
