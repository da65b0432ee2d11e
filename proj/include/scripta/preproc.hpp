#pragma once

#include <utility>

#include "scripta/image.hpp"

namespace scripta {

enum class SplitAxis { horizontal_cut, vertical_cut };

// The two halves of a split column scan. For horizontal_cut, half_a is the
// top rows and half_b the bottom rows; the halves tile the parent exactly.
struct SplitPair {
  BinaryImage half_a;
  BinaryImage half_b;
  SplitAxis axis = SplitAxis::horizontal_cut;
};

struct DeskewResult {
  BinaryImage image;
  double angle_deg = 0.0;  // correction that was applied
};

// Global threshold maximizing between-class variance of the 256-bin
// intensity histogram. Pixels strictly below the threshold are ink.
// Throws "no contrast" for constant images.
BinaryImage binarize_otsu(const GrayImage& img);
int otsu_threshold(const GrayImage& img);

// Local adaptive threshold t = m * (1 + k * (s / R - 1)), R = 128, with
// m, s the mean/stddev over a centered window (clamped at the borders).
// A pixel is ink iff its intensity is strictly below t.
BinaryImage binarize_sauvola(const GrayImage& img, int window, double k);

// Erases ink components whose centroid falls inside the left/right cut
// margins; components straddling a boundary survive if the centroid is in
// the kept zone.
BinaryImage clean_margins(const BinaryImage& img, double left_frac,
                          double right_frac);

// Rotates about the image center (nearest-neighbour resampling) by the
// angle in [-max_angle_deg, +max_angle_deg] on a 0.1 degree grid that
// maximizes the variance of the horizontal ink-projection profile. Ties
// prefer the angle closest to zero. Throws on a blank image.
DeskewResult deskew(const BinaryImage& img, double max_angle_deg);

// Nearest-neighbour rotation about the image center; positive angle rotates
// the content counter-clockwise (y up convention). Dimensions preserved.
BinaryImage rotate_binary(const BinaryImage& img, double angle_deg);

// Splits into two halves along the given axis; for odd extents half_a gets
// the smaller part.
SplitPair split_column(const BinaryImage& img, SplitAxis axis);

}  // namespace scripta
