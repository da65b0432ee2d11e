#pragma once

#include <vector>

#include "scripta/image.hpp"

namespace scripta {

struct PixelPoint {
  int x = 0;
  int y = 0;
  friend bool operator==(const PixelPoint&, const PixelPoint&) = default;
};

// One 8-connected ink component: its pixels and bounding box.
struct Component {
  std::vector<PixelPoint> pixels;  // row-major discovery order
  int min_x = 0, min_y = 0, max_x = 0, max_y = 0;

  int bbox_w() const { return max_x - min_x + 1; }
  int bbox_h() const { return max_y - min_y + 1; }
};

// 8-connected components of the ink mask, in row-major order of their
// first (topmost, then leftmost) pixel. Deterministic.
std::vector<Component> connected_components(const BinaryImage& img);

// Outer boundary of the component that contains `start` (which must be its
// topmost-leftmost ink pixel), traced with Moore neighbourhood tracing and
// returned in counter-clockwise order (screen coordinates, y down; the
// orientation is counter-clockwise when y is read as pointing up).
// A closed cyclic sequence of boundary pixels; length >= 1.
std::vector<PixelPoint> trace_outer_contour(const BinaryImage& img,
                                            PixelPoint start);

// Convenience: outer contours of all components, same order as
// connected_components.
std::vector<std::vector<PixelPoint>> outer_contours(const BinaryImage& img);

// Twice the signed area of a closed pixel polygon; positive means
// counter-clockwise when the y axis points up.
long long signed_area2(const std::vector<PixelPoint>& contour);

}  // namespace scripta
