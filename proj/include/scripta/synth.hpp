#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "scripta/fraglet.hpp"
#include "scripta/image.hpp"

namespace scripta {

// A parametric glyph: stroke skeletons as control polylines in the unit box
// (y grows downward). Rendering bends each segment by the style curvature,
// shears by the slant, and dilates to the stroke width.
struct GlyphDef {
  std::string letter;
  std::vector<std::vector<Vec2>> strokes;
};

std::vector<GlyphDef> default_glyph_set();

struct JitterParams {
  double pos = 0.0;            // px noise per control point, per instance
  double slant = 0.0;          // deg per instance
  double curvature = 0.0;      // per instance
  double width = 0.0;          // px per instance
  // Column-level style drift, shared by both halves of a column. Models the
  // slow hand drift that makes split siblings closer than other columns.
  double col_slant = 0.0;      // deg
  double col_curvature = 0.0;
  double col_width = 0.0;      // px

  bool all_zero() const {
    return pos == 0.0 && slant == 0.0 && curvature == 0.0 && width == 0.0 &&
           col_slant == 0.0 && col_curvature == 0.0 && col_width == 0.0;
  }
};

struct StyleParams {
  double slant_deg = 0.0;
  double curvature = 0.25;   // dimensionless bend factor
  double stroke_width = 3.0; // px
  std::vector<GlyphDef> glyph_set;  // empty = default_glyph_set()
  JitterParams jitter;
};

struct SynthCorpusSpec {
  int n_columns = 54;
  std::optional<int> switch_column;  // columns <= switch use style_left
  StyleParams style_left;
  StyleParams style_right;
  int lines_per_column = 10;
  int glyphs_per_line = 12;
  std::uint64_t seed = 1;
};

struct GlyphTruth {
  int column_index = 0;
  std::string letter;
  int x = 0, y = 0, w = 0, h = 0;  // ink bounding box in the column image
};

struct SynthResult {
  std::filesystem::path manifest_path;
  std::filesystem::path ground_truth_path;
  std::filesystem::path templates_path;
  std::vector<std::string> warnings;
};

// Writes column images (PGM), the manifest, a ground-truth sidecar
// (switch column plus per-glyph letter/boxes) and clean glyph templates
// into out_dir. Deterministic per seed; per-column seeds are derived, so
// output is independent of generation order.
SynthResult generate_corpus(const SynthCorpusSpec& spec,
                            const std::filesystem::path& out_dir);

// Renders one column in memory (same pixels the corpus writer produces).
GrayImage render_column(const SynthCorpusSpec& spec, int column_index,
                        std::vector<GlyphTruth>* truth = nullptr);

// Normalized Euclidean gap over (slant, curvature, stroke_width).
double style_distance(const StyleParams& a, const StyleParams& b);

struct GroundTruth {
  int switch_column = 0;  // 0 = none
  std::vector<GlyphTruth> glyphs;
};
GroundTruth load_ground_truth(const std::filesystem::path& path);

// Ready-made corpus specs used by the test suites and the `synth` command.
SynthCorpusSpec paper_like_spec(std::uint64_t seed);  // 54 cols, switch 27, subtle gap
SynthCorpusSpec null_spec(std::uint64_t seed);        // single style throughout
// Preset style pairs with increasing gap level 1..5 ("subtle" is level 2).
std::pair<StyleParams, StyleParams> style_gap_preset(int level);

}  // namespace scripta
