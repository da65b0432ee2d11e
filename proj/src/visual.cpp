#include "scripta/visual.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "scripta/rng.hpp"
#include "scripta/svg.hpp"

namespace scripta {

std::string to_string(HeatmapGroup g) {
  switch (g) {
    case HeatmapGroup::all: return "all";
    case HeatmapGroup::first_half: return "first-half";
    case HeatmapGroup::second_half: return "second-half";
  }
  return "?";
}

std::string to_string(GroupLabel label) {
  switch (label) {
    case GroupLabel::left: return "left";
    case GroupLabel::right: return "right";
    case GroupLabel::undecided: return "undecided";
  }
  return "?";
}

namespace {

// Mean pointwise distance between two 200-point contours, minimized over a
// small cyclic shift so that jittered start points do not dominate.
double contour_distance(const Fraglet& a, const Fraglet& b) {
  const int n = static_cast<int>(a.points.size());
  constexpr int kMaxShift = 10;
  double best = std::numeric_limits<double>::infinity();
  for (int shift = -kMaxShift; shift <= kMaxShift; ++shift) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto& p = a.points[i];
      const auto& q = b.points[(i + shift + n) % n];
      sum += std::hypot(p.x - q.x, p.y - q.y);
    }
    best = std::min(best, sum / n);
  }
  return best;
}

}  // namespace

std::vector<GlyphInstance> recognize_glyphs(
    const BinaryImage& img, const std::string& scan_id, int column_index,
    const std::vector<GlyphTemplate>& templates, double theta) {
  if (templates.empty())
    throw std::invalid_argument("recognize_glyphs: no templates");
  if (theta < 0.0)
    throw std::invalid_argument("recognize_glyphs: theta must be >= 0");

  std::vector<GlyphInstance> out;
  for (const auto& comp : connected_components(img)) {
    const auto contour = trace_outer_contour(img, comp.pixels.front());
    Fraglet shape;
    if (!normalize_contour(contour, true, kFragletPoints, shape)) continue;

    double best = std::numeric_limits<double>::infinity();
    const GlyphTemplate* best_tpl = nullptr;
    for (const auto& tpl : templates) {
      for (const auto& ex : tpl.exemplars) {
        const double d = contour_distance(shape, ex);
        if (d < best) {
          best = d;
          best_tpl = &tpl;
        }
      }
    }
    if (!best_tpl || !(best < theta)) continue;

    GlyphInstance gi;
    gi.letter = best_tpl->letter;
    gi.scan_id = scan_id;
    gi.column_index = column_index;
    gi.bbox_x = comp.min_x;
    gi.bbox_y = comp.min_y;
    gi.bbox_w = comp.bbox_w();
    gi.bbox_h = comp.bbox_h();
    gi.contour = contour;
    gi.crop = BinaryImage(gi.bbox_w, gi.bbox_h);
    for (const auto& p : comp.pixels)
      gi.crop.at(p.x - comp.min_x, p.y - comp.min_y) = 1;
    gi.match_distance = best;
    out.push_back(std::move(gi));
  }
  return out;
}

namespace {

// Rasterizes one instance onto the grid: ink centroid to the grid center,
// mean radius to a quarter of the grid, nearest-neighbour sampling.
void rasterize_instance(const GlyphInstance& gi, int grid,
                        std::vector<std::uint8_t>& raster) {
  raster.assign(static_cast<std::size_t>(grid) * grid, 0);
  double cx = 0.0, cy = 0.0;
  std::size_t n_ink = 0;
  for (int y = 0; y < gi.crop.height; ++y) {
    for (int x = 0; x < gi.crop.width; ++x) {
      if (gi.crop.at(x, y)) {
        cx += x;
        cy += y;
        ++n_ink;
      }
    }
  }
  if (n_ink == 0) return;
  cx /= static_cast<double>(n_ink);
  cy /= static_cast<double>(n_ink);
  double mean_r = 0.0;
  for (int y = 0; y < gi.crop.height; ++y) {
    for (int x = 0; x < gi.crop.width; ++x) {
      if (gi.crop.at(x, y)) mean_r += std::hypot(x - cx, y - cy);
    }
  }
  mean_r /= static_cast<double>(n_ink);
  if (mean_r <= 0.0) mean_r = 1.0;
  const double scale = (grid / 4.0) / mean_r;

  const double half = grid / 2.0;
  for (int gy = 0; gy < grid; ++gy) {
    for (int gx = 0; gx < grid; ++gx) {
      const double sx = cx + (gx + 0.5 - half) / scale;
      const double sy = cy + (gy + 0.5 - half) / scale;
      const int ix = static_cast<int>(std::lround(sx));
      const int iy = static_cast<int>(std::lround(sy));
      if (gi.crop.in_bounds(ix, iy) && gi.crop.at(ix, iy))
        raster[static_cast<std::size_t>(gy) * grid + gx] = 1;
    }
  }
}

Heatmap heatmap_of_indices(const std::vector<GlyphInstance>& instances,
                           const std::vector<std::size_t>& idx, int grid,
                           HeatmapGroup group) {
  Heatmap h;
  h.grid = grid;
  h.group = group;
  h.n_instances = idx.size();
  h.intensity.assign(static_cast<std::size_t>(grid) * grid, 0.0);
  std::vector<std::uint8_t> raster;
  for (std::size_t i : idx) {
    rasterize_instance(instances[i], grid, raster);
    for (std::size_t j = 0; j < h.intensity.size(); ++j)
      h.intensity[j] += raster[j];
  }
  const double n = static_cast<double>(idx.size());
  for (double& v : h.intensity) v /= n;
  return h;
}

}  // namespace

Heatmap heatmap(const std::vector<GlyphInstance>& instances, int grid,
                HeatmapGroup group) {
  if (instances.empty()) throw std::invalid_argument("heatmap: no instances");
  if (grid < 4) throw std::invalid_argument("heatmap: grid too small");
  std::vector<std::size_t> idx(instances.size());
  std::iota(idx.begin(), idx.end(), 0);
  return heatmap_of_indices(instances, idx, grid, group);
}

Heatmap heatmap_bootstrap(const std::vector<GlyphInstance>& instances,
                          int grid, std::uint64_t seed) {
  if (instances.empty()) throw std::invalid_argument("heatmap: no instances");
  Rng rng(seed);
  std::vector<std::size_t> idx(instances.size());
  for (auto& i : idx) i = rng.below(instances.size());
  return heatmap_of_indices(instances, idx, grid, HeatmapGroup::all);
}

void save_heatmap_text(const Heatmap& h, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write heatmap: " + path.string());
  char buf[32];
  for (int y = 0; y < h.grid; ++y) {
    for (int x = 0; x < h.grid; ++x) {
      std::snprintf(buf, sizeof(buf), "%.6f", h.at(x, y));
      if (x) out << ' ';
      out << buf;
    }
    out << "\n";
  }
}

void render_heatmap_svg(const Heatmap& h, const std::filesystem::path& path) {
  const double cell = 8.0;
  SvgDocument doc(h.grid * cell + 20, h.grid * cell + 40);
  doc.text(10, 16, "n=" + std::to_string(h.n_instances) + " group=" +
                       to_string(h.group), 11.0);
  for (int y = 0; y < h.grid; ++y) {
    for (int x = 0; x < h.grid; ++x) {
      const double v = h.at(x, y);
      if (v <= 0.0) continue;
      // Warm colormap: low = pale yellow, mid = orange, high = dark red.
      const int r = static_cast<int>(255 - 105 * v);
      const int g = static_cast<int>(230 - 190 * v);
      const int b = static_cast<int>(180 - 160 * v);
      char color[16];
      std::snprintf(color, sizeof(color), "#%02x%02x%02x", r, g, b);
      doc.rect(10 + x * cell, 24 + y * cell, cell, cell, color);
    }
  }
  doc.write(path);
}

void render_chart(const std::string& letter,
                  const std::vector<GlyphInstance>& instances,
                  const std::filesystem::path& path) {
  if (instances.empty()) throw std::invalid_argument("render_chart: no instances");

  std::map<int, std::vector<const GlyphInstance*>> by_column;
  for (const auto& gi : instances) by_column[gi.column_index].push_back(&gi);

  const double cell = 48.0;
  const double label_w = 60.0;
  std::size_t max_per_col = 0;
  for (const auto& [col, list] : by_column)
    max_per_col = std::max(max_per_col, list.size());

  SvgDocument doc(label_w + max_per_col * cell + 20,
                  by_column.size() * (cell + 14) + 40);
  doc.text(10, 20, "letter: " + letter, 13.0);
  double y = 36.0;
  for (const auto& [col, list] : by_column) {
    doc.text(10, y + cell / 2, "col " + std::to_string(col), 11.0);
    double x = label_w;
    for (const GlyphInstance* gi : list) {
      // Fit the contour into the cell, preserving aspect.
      const double sx = (cell - 8) / std::max(1, gi->bbox_w);
      const double sy = (cell - 8) / std::max(1, gi->bbox_h);
      const double s = std::min(sx, sy);
      std::vector<std::pair<double, double>> pts;
      pts.reserve(gi->contour.size());
      for (const auto& p : gi->contour) {
        pts.push_back({x + 4 + (p.x - gi->bbox_x) * s,
                       y + 4 + (p.y - gi->bbox_y) * s});
      }
      doc.polygon(pts, "#1a1a1a");
      char note[64];
      std::snprintf(note, sizeof(note), "%d,%d %dx%d", gi->bbox_x, gi->bbox_y,
                    gi->bbox_w, gi->bbox_h);
      doc.text(x + 2, y + cell + 9, note, 6.0, "#666666");
      x += cell;
    }
    y += cell + 14.0;
  }
  doc.write(path);
}

FragletSaliency rank_discriminative_fraglets(
    const std::vector<FeatureVector>& histograms,
    const std::vector<bool>& is_left, int rows, int cols, double tau) {
  if (histograms.size() != is_left.size())
    throw std::invalid_argument("rank_discriminative_fraglets: label mismatch");
  const std::size_t cells = static_cast<std::size_t>(rows) * cols;
  for (const auto& h : histograms) {
    if (h.dim() != cells)
      throw std::invalid_argument("rank_discriminative_fraglets: dim mismatch");
  }
  std::size_t n_left = 0, n_right = 0;
  for (bool l : is_left) (l ? n_left : n_right) += 1;
  if (n_left < 2 || n_right < 2)
    throw std::invalid_argument(
        "rank_discriminative_fraglets: need >= 2 columns per side");

  FragletSaliency s;
  s.rows = rows;
  s.cols = cols;
  s.tau = tau;
  s.score.assign(cells, 0.0);
  s.side.assign(cells, 0);

  for (std::size_t c = 0; c < cells; ++c) {
    double ml = 0.0, mr = 0.0;
    for (std::size_t i = 0; i < histograms.size(); ++i)
      (is_left[i] ? ml : mr) += histograms[i].values[c];
    ml /= static_cast<double>(n_left);
    mr /= static_cast<double>(n_right);
    double vl = 0.0, vr = 0.0;
    for (std::size_t i = 0; i < histograms.size(); ++i) {
      const double d = histograms[i].values[c] - (is_left[i] ? ml : mr);
      (is_left[i] ? vl : vr) += d * d;
    }
    const double pooled =
        std::sqrt((vl + vr) / static_cast<double>(n_left + n_right - 2));
    if (pooled <= 0.0) continue;  // score 0, neutral
    s.score[c] = (ml - mr) / pooled;
    if (s.score[c] > tau) s.side[c] = 1;
    else if (s.score[c] < -tau) s.side[c] = -1;
  }
  return s;
}

namespace {

// Cells ranked by |score| descending, ties to the lower index.
std::vector<int> top_cells_by_magnitude(const FragletSaliency& s, int k) {
  std::vector<int> order(s.cells());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(s.score[a]) > std::abs(s.score[b]);
  });
  order.resize(std::min<std::size_t>(order.size(), k));
  return order;
}

}  // namespace

GroupPrediction predict_group(const FeatureVector& h, const FragletSaliency& s,
                              int k) {
  if (k < 1) throw std::invalid_argument("predict_group: k must be >= 1");
  if (h.dim() != static_cast<std::size_t>(s.cells()))
    throw std::invalid_argument("predict_group: dimension mismatch");

  double sum = 0.0;
  for (int cell : top_cells_by_magnitude(s, k))
    sum += s.score[cell] * h.values[cell];

  GroupPrediction pred;
  pred.margin = std::abs(sum);
  if (sum > 0.0) pred.label = GroupLabel::left;
  else if (sum < 0.0) pred.label = GroupLabel::right;
  else pred.label = GroupLabel::undecided;
  return pred;
}

void save_saliency(const FragletSaliency& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write saliency: " + path.string());
  out << "cell_row,cell_col,score,side\n";
  char buf[48];
  for (int r = 0; r < s.rows; ++r) {
    for (int c = 0; c < s.cols; ++c) {
      const int cell = r * s.cols + c;
      std::snprintf(buf, sizeof(buf), "%.12g", s.score[cell]);
      const char* side = s.side[cell] > 0 ? "left"
                         : s.side[cell] < 0 ? "right"
                                            : "neutral";
      out << r << ',' << c << ',' << buf << ',' << side << "\n";
    }
  }
}

RgbImage render_overlay(const BinaryImage& img, const Codebook& cb,
                        const FragletSaliency& s, int k,
                        const FragletConfig& cfg, GroupLabel truth,
                        GroupLabel predicted) {
  if (cb.cells() != s.cells())
    throw std::invalid_argument("render_overlay: codebook/saliency mismatch");

  // Top-k most-left and most-right cells among those labeled by side.
  std::vector<char> cell_color(cb.cells(), 0);  // 0 gray, 1 green, 2 red
  {
    std::vector<int> order(cb.cells());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return s.score[a] > s.score[b]; });
    int taken = 0;
    for (int cell : order) {
      if (taken >= k || s.side[cell] <= 0) break;
      cell_color[cell] = 1;
      ++taken;
    }
    taken = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (taken >= k || s.side[*it] >= 0) break;
      cell_color[*it] = 2;
      ++taken;
    }
  }

  const int blob_strip = 24;
  RgbImage out(img.width, img.height + blob_strip);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (img.at(x, y)) out.set(x, y, 120, 120, 120);
    }
  }

  for (const auto& ef : extract_fraglets_detailed(img, cfg)) {
    const auto flat = ef.shape.flatten();
    const int bmu = best_matching_unit(cb, flat.data());
    const char color = cell_color[bmu];
    if (color == 0) continue;
    const std::uint8_t r = color == 2 ? 200 : 0;
    const std::uint8_t g = color == 1 ? 160 : 0;
    // Paint the fragment trace and its immediate ink neighbourhood.
    for (const auto& p : ef.raw) {
      const int px = static_cast<int>(std::lround(p.x));
      const int py = static_cast<int>(std::lround(p.y));
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = px + dx, ny = py + dy;
          if (img.in_bounds(nx, ny) && img.at(nx, ny)) out.set(nx, ny, r, g, 0);
        }
      }
    }
  }

  // Ground-truth blob (left) and prediction blob (right) under the column.
  auto blob_rgb = [](GroupLabel label) -> std::array<std::uint8_t, 3> {
    switch (label) {
      case GroupLabel::left: return {0, 160, 0};
      case GroupLabel::right: return {200, 0, 0};
      case GroupLabel::undecided: return {150, 150, 150};
    }
    return {150, 150, 150};
  };
  const auto tc = blob_rgb(truth);
  const auto pc = blob_rgb(predicted);
  const int bw = std::max(8, img.width / 8);
  for (int y = img.height + 4; y < img.height + blob_strip - 4; ++y) {
    for (int x = 4; x < 4 + bw && x < img.width; ++x)
      out.set(x, y, tc[0], tc[1], tc[2]);
    for (int x = 8 + bw; x < 8 + 2 * bw && x < img.width; ++x)
      out.set(x, y, pc[0], pc[1], pc[2]);
  }
  return out;
}

void render_scatter(const Embedding3D& e, const std::vector<bool>& is_group_a,
                    const std::string& label_a, const std::string& label_b,
                    const std::filesystem::path& path) {
  if (e.labels.empty()) throw std::invalid_argument("render_scatter: empty embedding");
  if (is_group_a.size() != e.labels.size())
    throw std::invalid_argument("render_scatter: group size mismatch");

  // Two panels: PC1 vs PC2 and PC1 vs PC3.
  const double panel_w = 320, panel_h = 280, margin = 56;
  SvgDocument doc(2 * (panel_w + margin) + 40, panel_h +.2 * margin + 110);

  for (int panel = 0; panel < 2; ++panel) {
    const int yc = panel == 0 ? 1 : 2;  // component on the vertical axis
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (std::size_t i = 0; i < e.labels.size(); ++i) {
      xmin = std::min(xmin, e.coords[i * 3]);
      xmax = std::max(xmax, e.coords[i * 3]);
      ymin = std::min(ymin, e.coords[i * 3 + yc]);
      ymax = std::max(ymax, e.coords[i * 3 + yc]);
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;
    const double padx = 0.05 * (xmax - xmin);
    const double pady = 0.05 * (ymax - ymin);
    PlotFrame frame{margin + panel * (panel_w + margin + 20),
                    40,
                    panel_w,
                    panel_h,
                    xmin - padx,
                    xmax + padx,
                    ymin - pady,
                    ymax + pady};
    frame.draw_axes(doc, "PC1", panel == 0 ? "PC2" : "PC3");
    for (std::size_t i = 0; i < e.labels.size(); ++i) {
      const std::string color = is_group_a[i] ? "#cc2222" : "#22aa22";
      doc.circle(frame.px(e.coords[i * 3]), frame.py(e.coords[i * 3 + yc]),
                 3.0, color);
    }
  }
  // Legend.
  const double ly = panel_h + 84;
  doc.circle(margin, ly, 4.0, "#cc2222");
  doc.text(margin + 10, ly + 4, label_a, 11.0);
  doc.circle(margin + 140, ly, 4.0, "#22aa22");
  doc.text(margin + 150, ly + 4, label_b, 11.0);
  doc.write(path);
}

void save_templates(const std::vector<GlyphTemplate>& templates,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write templates: " + path.string());
  char buf[48];
  for (const auto& tpl : templates) {
    for (const auto& ex : tpl.exemplars) {
      out << tpl.letter;
      for (const auto& p : ex.points) {
        std::snprintf(buf, sizeof(buf), "%.12g", p.x);
        out << ' ' << buf;
        std::snprintf(buf, sizeof(buf), "%.12g", p.y);
        out << ' ' << buf;
      }
      out << "\n";
    }
  }
}

std::vector<GlyphTemplate> load_templates(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("templates not found: " + path.string());
  std::map<std::string, std::vector<Fraglet>> by_letter;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string letter;
    ls >> letter;
    Fraglet f;
    f.points.reserve(kFragletPoints);
    double x, y;
    while (ls >> x >> y) f.points.push_back({x, y});
    if (f.points.size() != kFragletPoints)
      throw std::runtime_error("bad template line in " + path.string());
    by_letter[letter].push_back(std::move(f));
  }
  std::vector<GlyphTemplate> out;
  for (auto& [letter, exemplars] : by_letter)
    out.push_back({letter, std::move(exemplars)});
  return out;
}

}  // namespace scripta
