#pragma once

#include <cstdint>
#include <vector>

#include "scripta/contour.hpp"
#include "scripta/features.hpp"
#include "scripta/image.hpp"

namespace scripta {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline constexpr int kFragletPoints = 200;  // 400 feature values

// A fragmented connected-component contour: 200 counter-clockwise points,
// centred on its centre of gravity and scaled to a mean radius of 1.
struct Fraglet {
  std::vector<Vec2> points;  // exactly kFragletPoints entries

  Vec2 centroid() const;
  double mean_radius() const;
  std::vector<double> flatten() const;  // x0 y0 x1 y1 ...
};

// Positional coordinates replaced by (cos phi, sin phi) of each point's
// angle with the horizontal axis; every pair has unit norm.
struct CosineFraglet {
  std::vector<Vec2> pairs;       // exactly kFragletPoints entries
  int degenerate_points = 0;     // points at the origin, mapped to phi = 0

  std::vector<double> flatten() const;
};

struct FragletConfig {
  // Plate admission threshold for codebook training corpora only; query
  // columns are never filtered by it.
  std::size_t min_ink_pixels = 100000;
  int spread_k = 30;
  // Contours longer than 1.5x this arc length are cut at curvature maxima;
  // <= 0 disables fragmentation.
  double target_arc_len = 120.0;
};

// One extracted fraglet with enough provenance to paint it back onto the
// source image.
struct ExtractedFraglet {
  Fraglet shape;
  std::vector<Vec2> raw;  // the same 200 samples in image coordinates
  int component_id = 0;
};

std::vector<ExtractedFraglet> extract_fraglets_detailed(
    const BinaryImage& img, const FragletConfig& cfg);
std::vector<Fraglet> extract_fraglets(const BinaryImage& img,
                                      const FragletConfig& cfg);

CosineFraglet to_cosine(const Fraglet& f);

// Resamples a pixel contour to n equidistant points by arc length and
// applies the centroid/mean-radius normalization. Exposed for the glyph
// recognizer, which reuses the same normalization without fragmentation.
// Returns false when the contour is too degenerate to normalize.
bool normalize_contour(const std::vector<PixelPoint>& contour, bool closed,
                       int n, Fraglet& out, std::vector<Vec2>* raw = nullptr);

// Weighted concatenation [w_h * hinge, w_f * fraglet]; w_h + w_f = 1,
// both strictly positive. The result is again a normalized histogram.
FeatureVector adjoin(const FeatureVector& hinge, const FeatureVector& fraglet,
                     double w_h = 0.5, double w_f = 0.5);

}  // namespace scripta
