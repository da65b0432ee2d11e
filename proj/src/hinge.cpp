#include "scripta/hinge.hpp"

#include <cmath>
#include <stdexcept>

namespace scripta {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

int hinge_angle_bin(double dx, double dy, int nbins) {
  // y is flipped so angles follow the usual math convention; folding into
  // [0, pi) makes the direction along the leg irrelevant.
  double a = std::atan2(-dy, dx);
  if (a < 0.0) a += kPi;
  if (a >= kPi) a -= kPi;  // atan2 == pi folds to 0
  int bin = static_cast<int>(a / (kPi / nbins));
  if (bin >= nbins) bin = nbins - 1;
  return bin;
}

std::size_t hinge_pair_index(int i, int j, int nbins) {
  // Row-major upper triangle without the diagonal.
  return static_cast<std::size_t>(i) * nbins -
         static_cast<std::size_t>(i) * (i + 1) / 2 + (j - i - 1);
}

std::vector<std::size_t> hinge_counts(const BinaryImage& img,
                                      const HingeConfig& cfg,
                                      HingeDiagnostics* diag) {
  if (cfg.nbins < 2 || cfg.nvec < 2)
    throw std::invalid_argument("hinge: nbins and nvec must be >= 2");

  std::vector<std::size_t> counts(cfg.dim(), 0);
  HingeDiagnostics local;
  const std::size_t min_len = 2 * static_cast<std::size_t>(cfg.nvec) + 1;

  for (const auto& contour : outer_contours(img)) {
    ++local.contours_total;
    const std::size_t n = contour.size();
    if (n < min_len) {
      ++local.contours_skipped;
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const PixelPoint& anchor = contour[i];
      const PixelPoint& fwd = contour[(i + cfg.nvec) % n];
      const PixelPoint& bwd = contour[(i + n - cfg.nvec) % n];
      const int b1 = hinge_angle_bin(fwd.x - anchor.x, fwd.y - anchor.y, cfg.nbins);
      const int b2 = hinge_angle_bin(bwd.x - anchor.x, bwd.y - anchor.y, cfg.nbins);
      if (b1 == b2) continue;  // equal orientations carry no hinge angle
      const int lo = std::min(b1, b2);
      const int hi = std::max(b1, b2);
      ++counts[hinge_pair_index(lo, hi, cfg.nbins)];
    }
  }
  if (diag) *diag = local;
  return counts;
}

FeatureVector hinge_feature(const BinaryImage& img, const HingeConfig& cfg,
                            HingeDiagnostics* diag) {
  const auto counts = hinge_counts(img, cfg, diag);
  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  if (total == 0) throw std::runtime_error("hinge: insufficient ink");

  FeatureVector f;
  f.kind = FeatureKind::hinge;
  f.values.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    f.values[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  return f;
}

}  // namespace scripta
