#pragma once

#include "scripta/contour.hpp"
#include "scripta/features.hpp"
#include "scripta/image.hpp"

namespace scripta {

// Joint orientation histogram of paired contour legs. Two legs of nvec
// contour steps are anchored at every contour point; their orientations
// against the horizontal are folded into [0, 180) and quantized into nbins
// bins, and only strictly ordered bin pairs (i < j) are counted. The output
// dimensionality is nbins*(nbins-1)/2, 465 for the defaults.
struct HingeConfig {
  int nbins = 31;
  int nvec = 13;

  std::size_t dim() const {
    return static_cast<std::size_t>(nbins) * (nbins - 1) / 2;
  }
};

struct HingeDiagnostics {
  std::size_t contours_total = 0;
  std::size_t contours_skipped = 0;  // shorter than 2*nvec+1 points
};

FeatureVector hinge_feature(const BinaryImage& img, const HingeConfig& cfg,
                            HingeDiagnostics* diag = nullptr);

// Raw (unnormalized) bin counts, exposed for oracle comparison in tests.
std::vector<std::size_t> hinge_counts(const BinaryImage& img,
                                      const HingeConfig& cfg,
                                      HingeDiagnostics* diag = nullptr);

// Orientation of the vector (dx, dy) in image coordinates, read with y up,
// folded into [0, pi). Quantization helper shared with the feature proper.
int hinge_angle_bin(double dx, double dy, int nbins);

// Flat index of the strictly ordered bin pair (i, j), i < j.
std::size_t hinge_pair_index(int i, int j, int nbins);

}  // namespace scripta
