#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "scripta/featurespace.hpp"
#include "scripta/fraglet.hpp"
#include "scripta/image.hpp"
#include "scripta/sofm.hpp"

namespace scripta {

// One automatically recognized letter instance, traceable to its exact
// position in the source scan.
struct GlyphInstance {
  std::string letter;
  std::string scan_id;
  int column_index = 0;
  int bbox_x = 0, bbox_y = 0, bbox_w = 0, bbox_h = 0;
  std::vector<PixelPoint> contour;  // outer contour in source coordinates
  BinaryImage crop;                 // bbox-local ink mask
  double match_distance = 0.0;
};

struct GlyphTemplate {
  std::string letter;
  std::vector<Fraglet> exemplars;  // 200-point normalized contours
};

enum class HeatmapGroup { all, first_half, second_half };
std::string to_string(HeatmapGroup g);

// Centroid-aligned, scale-normalized average shape of one letter.
struct Heatmap {
  int grid = 64;
  std::vector<double> intensity;  // grid*grid values in [0,1]
  std::size_t n_instances = 0;
  HeatmapGroup group = HeatmapGroup::all;

  double at(int x, int y) const { return intensity[static_cast<std::size_t>(y) * grid + x]; }
};

// Signed per-cell discriminability of codebook usage between the left and
// right column groups.
struct FragletSaliency {
  int rows = 0;
  int cols = 0;
  std::vector<double> score;       // standardized mean difference per cell
  std::vector<std::int8_t> side;   // +1 left, -1 right, 0 neutral
  double tau = 1.0;

  int cells() const { return rows * cols; }
};

enum class GroupLabel { left, right, undecided };
std::string to_string(GroupLabel label);

struct GroupPrediction {
  GroupLabel label = GroupLabel::undecided;
  double margin = 0.0;
};

// Template matching over connected components: each component contour is
// resampled/normalized like a fraglet (without fragmentation) and accepted
// for the nearest template letter iff the mean pointwise distance is
// strictly below theta. Partial recall is expected; tuned for precision.
std::vector<GlyphInstance> recognize_glyphs(const BinaryImage& img,
                                            const std::string& scan_id,
                                            int column_index,
                                            const std::vector<GlyphTemplate>& templates,
                                            double theta);

// Per-pixel mean of centroid-aligned, mean-radius-normalized binary rasters.
Heatmap heatmap(const std::vector<GlyphInstance>& instances, int grid = 64,
                HeatmapGroup group = HeatmapGroup::all);

// One bootstrap draw of the heatmap (instances resampled with replacement).
Heatmap heatmap_bootstrap(const std::vector<GlyphInstance>& instances,
                          int grid, std::uint64_t seed);

void save_heatmap_text(const Heatmap& h, const std::filesystem::path& path);
void render_heatmap_svg(const Heatmap& h, const std::filesystem::path& path);

// Chart of individual glyph shapes grouped by serial column, each cell
// annotated with its provenance.
void render_chart(const std::string& letter,
                  const std::vector<GlyphInstance>& instances,
                  const std::filesystem::path& path);

// score = (mean_left - mean_right) / pooled sd per codebook cell;
// side is +1/-1 where |score| exceeds tau, else neutral.
FragletSaliency rank_discriminative_fraglets(
    const std::vector<FeatureVector>& histograms,
    const std::vector<bool>& is_left, int rows, int cols, double tau = 1.0);

// label = sign of the score-weighted histogram mass over the top-k cells by
// |score|; margin is the absolute sum.
GroupPrediction predict_group(const FeatureVector& h, const FragletSaliency& s,
                              int k);

void save_saliency(const FragletSaliency& s, const std::filesystem::path& path);

// Ink fragments colored by their best-matching codebook cell: green for
// top-k left cells, red for top-k right cells, gray otherwise. A blob pair
// below the column shows ground truth (left blob) and prediction (right).
RgbImage render_overlay(const BinaryImage& img, const Codebook& cb,
                        const FragletSaliency& s, int k,
                        const FragletConfig& cfg, GroupLabel truth,
                        GroupLabel predicted);

// 2-D projections of the 3-D embedding with per-group colors and a legend.
// Group A renders red, group B green.
void render_scatter(const Embedding3D& e, const std::vector<bool>& is_group_a,
                    const std::string& label_a, const std::string& label_b,
                    const std::filesystem::path& path);

// Glyph template file: `letter` then 400 reals per line.
void save_templates(const std::vector<GlyphTemplate>& templates,
                    const std::filesystem::path& path);
std::vector<GlyphTemplate> load_templates(const std::filesystem::path& path);

}  // namespace scripta
