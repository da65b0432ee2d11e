#include "scripta/preproc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "scripta/contour.hpp"

namespace scripta {

int otsu_threshold(const GrayImage& img) {
  if (img.empty()) throw std::invalid_argument("binarize_otsu: empty image");
  std::array<std::size_t, 256> hist{};
  for (std::uint8_t v : img.pixels) ++hist[v];

  const double total = static_cast<double>(img.pixels.size());
  double sum_all = 0.0;
  for (int i = 0; i < 256; ++i) sum_all += static_cast<double>(i) * hist[i];

  // Candidate threshold T assigns {v < T} to ink; scan all 256 choices.
  int best_t = -1;
  double best_var = -1.0;
  double w0 = 0.0;     // pixel count below T
  double sum0 = 0.0;   // intensity sum below T
  for (int t = 1; t <= 255; ++t) {
    w0 += hist[t - 1];
    sum0 += static_cast<double>(t - 1) * hist[t - 1];
    const double w1 = total - w0;
    if (w0 == 0.0 || w1 == 0.0) continue;
    const double mu0 = sum0 / w0;
    const double mu1 = (sum_all - sum0) / w1;
    const double between = (w0 / total) * (w1 / total) * (mu0 - mu1) * (mu0 - mu1);
    if (between > best_var) {
      best_var = between;
      best_t = t;
    }
  }
  if (best_t < 0) throw std::runtime_error("binarize_otsu: no contrast");
  return best_t;
}

BinaryImage binarize_otsu(const GrayImage& img) {
  const int t = otsu_threshold(img);
  BinaryImage out(img.width, img.height);
  for (std::size_t i = 0; i < img.pixels.size(); ++i)
    out.ink[i] = img.pixels[i] < t;
  return out;
}

BinaryImage binarize_sauvola(const GrayImage& img, int window, double k) {
  if (img.empty()) throw std::invalid_argument("binarize_sauvola: empty image");
  if (window < 3 || window % 2 == 0)
    throw std::invalid_argument("binarize_sauvola: window must be odd and >= 3");
  if (k <= 0.0 || k >= 1.0)
    throw std::invalid_argument("binarize_sauvola: k must be in (0,1)");
  if (window > img.width && window > img.height)
    throw std::invalid_argument(
        "binarize_sauvola: window larger than both image dimensions");

  const int w = img.width;
  const int h = img.height;
  // Integral images over intensity and squared intensity, (w+1)x(h+1).
  std::vector<double> integ(static_cast<std::size_t>(w + 1) * (h + 1), 0.0);
  std::vector<double> integ2(integ.size(), 0.0);
  for (int y = 0; y < h; ++y) {
    double row = 0.0, row2 = 0.0;
    for (int x = 0; x < w; ++x) {
      const double v = img.at(x, y);
      row += v;
      row2 += v * v;
      const std::size_t i = static_cast<std::size_t>(y + 1) * (w + 1) + (x + 1);
      integ[i] = integ[i - (w + 1)] + row;
      integ2[i] = integ2[i - (w + 1)] + row2;
    }
  }
  auto box_sum = [&](const std::vector<double>& ii, int x0, int y0, int x1,
                     int y1) {
    // Inclusive box [x0,x1] x [y0,y1].
    const std::size_t stride = w + 1;
    return ii[static_cast<std::size_t>(y1 + 1) * stride + (x1 + 1)] -
           ii[static_cast<std::size_t>(y0) * stride + (x1 + 1)] -
           ii[static_cast<std::size_t>(y1 + 1) * stride + x0] +
           ii[static_cast<std::size_t>(y0) * stride + x0];
  };

  constexpr double R = 128.0;
  const int half = window / 2;
  BinaryImage out(w, h);
  for (int y = 0; y < h; ++y) {
    const int y0 = std::max(0, y - half);
    const int y1 = std::min(h - 1, y + half);
    for (int x = 0; x < w; ++x) {
      const int x0 = std::max(0, x - half);
      const int x1 = std::min(w - 1, x + half);
      const double area = static_cast<double>(x1 - x0 + 1) * (y1 - y0 + 1);
      const double mean = box_sum(integ, x0, y0, x1, y1) / area;
      const double var =
          std::max(0.0, box_sum(integ2, x0, y0, x1, y1) / area - mean * mean);
      const double sd = std::sqrt(var);
      const double t = mean * (1.0 + k * (sd / R - 1.0));
      out.at(x, y) = img.at(x, y) < t;
    }
  }
  return out;
}

BinaryImage clean_margins(const BinaryImage& img, double left_frac,
                          double right_frac) {
  if (left_frac < 0.0 || right_frac < 0.0 || left_frac + right_frac >= 1.0)
    throw std::invalid_argument("clean_margins: bad margin fractions");
  if (left_frac == 0.0 && right_frac == 0.0) return img;

  const double lo = left_frac * img.width;
  const double hi = (1.0 - right_frac) * img.width;
  BinaryImage out = img;
  for (const auto& comp : connected_components(img)) {
    double cx = 0.0;
    for (const auto& p : comp.pixels) cx += p.x;
    cx /= static_cast<double>(comp.pixels.size());
    if (cx < lo || cx > hi) {
      for (const auto& p : comp.pixels) out.at(p.x, p.y) = 0;
    }
  }
  return out;
}

BinaryImage rotate_binary(const BinaryImage& img, double angle_deg) {
  if (angle_deg == 0.0) return img;
  const double rad = angle_deg * 3.14159265358979323846 / 180.0;
  // Positive angle: counter-clockwise with y up, i.e. clockwise in screen
  // coordinates; implemented by inverse-mapping each destination pixel.
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  const double cx = (img.width - 1) / 2.0;
  const double cy = (img.height - 1) / 2.0;
  BinaryImage out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const double dx = x - cx;
      const double dy = y - cy;
      // Inverse rotation (screen coords): rotate destination by -angle.
      const int sx = static_cast<int>(std::lround(cx + c * dx - s * dy));
      const int sy = static_cast<int>(std::lround(cy + s * dx + c * dy));
      if (img.in_bounds(sx, sy)) out.at(x, y) = img.at(sx, sy);
    }
  }
  return out;
}

namespace {

// Variance of the horizontal projection profile of the image rotated by
// `angle`, computed by inverse mapping without materializing the rotation.
double projection_variance(const BinaryImage& img, double angle_deg) {
  const double rad = angle_deg * 3.14159265358979323846 / 180.0;
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  const double cx = (img.width - 1) / 2.0;
  const double cy = (img.height - 1) / 2.0;
  std::vector<double> rows(img.height, 0.0);
  for (int y = 0; y < img.height; ++y) {
    double count = 0.0;
    for (int x = 0; x < img.width; ++x) {
      const double dx = x - cx;
      const double dy = y - cy;
      const int sx = static_cast<int>(std::lround(cx + c * dx - s * dy));
      const int sy = static_cast<int>(std::lround(cy + s * dx + c * dy));
      if (img.in_bounds(sx, sy) && img.at(sx, sy)) count += 1.0;
    }
    rows[y] = count;
  }
  double mean = 0.0;
  for (double v : rows) mean += v;
  mean /= static_cast<double>(rows.size());
  double var = 0.0;
  for (double v : rows) var += (v - mean) * (v - mean);
  return var / static_cast<double>(rows.size());
}

}  // namespace

DeskewResult deskew(const BinaryImage& img, double max_angle_deg) {
  if (max_angle_deg <= 0.0 || max_angle_deg > 15.0)
    throw std::invalid_argument("deskew: max angle must be in (0, 15]");
  if (ink_count(img) == 0) throw std::runtime_error("deskew: blank image");

  const int steps = static_cast<int>(std::lround(max_angle_deg / 0.1));
  double best_angle = 0.0;
  double best_var = -1.0;
  for (int i = -steps; i <= steps; ++i) {
    const double angle = 0.1 * i;
    const double var = projection_variance(img, angle);
    const bool better =
        var > best_var ||
        (var == best_var && std::abs(angle) < std::abs(best_angle));
    if (better) {
      best_var = var;
      best_angle = angle;
    }
  }
  return {rotate_binary(img, best_angle), best_angle};
}

SplitPair split_column(const BinaryImage& img, SplitAxis axis) {
  SplitPair pair;
  pair.axis = axis;
  if (axis == SplitAxis::horizontal_cut) {
    if (img.height < 2)
      throw std::invalid_argument("split_column: fewer than 2 rows");
    const int ha = img.height / 2;  // half_a gets the smaller part
    pair.half_a = BinaryImage(img.width, ha);
    pair.half_b = BinaryImage(img.width, img.height - ha);
    std::copy_n(img.ink.begin(), pair.half_a.ink.size(),
                pair.half_a.ink.begin());
    std::copy(img.ink.begin() + pair.half_a.ink.size(), img.ink.end(),
              pair.half_b.ink.begin());
  } else {
    if (img.width < 2)
      throw std::invalid_argument("split_column: fewer than 2 columns");
    const int wa = img.width / 2;
    pair.half_a = BinaryImage(wa, img.height);
    pair.half_b = BinaryImage(img.width - wa, img.height);
    for (int y = 0; y < img.height; ++y) {
      for (int x = 0; x < wa; ++x) pair.half_a.at(x, y) = img.at(x, y);
      for (int x = wa; x < img.width; ++x)
        pair.half_b.at(x - wa, y) = img.at(x, y);
    }
  }
  return pair;
}

}  // namespace scripta
