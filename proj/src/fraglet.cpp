#include "scripta/fraglet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace scripta {

Vec2 Fraglet::centroid() const {
  Vec2 c;
  for (const auto& p : points) {
    c.x += p.x;
    c.y += p.y;
  }
  const double n = static_cast<double>(points.size());
  return {c.x / n, c.y / n};
}

double Fraglet::mean_radius() const {
  double r = 0.0;
  for (const auto& p : points) r += std::hypot(p.x, p.y);
  return r / static_cast<double>(points.size());
}

std::vector<double> Fraglet::flatten() const {
  std::vector<double> v;
  v.reserve(points.size() * 2);
  for (const auto& p : points) {
    v.push_back(p.x);
    v.push_back(p.y);
  }
  return v;
}

std::vector<double> CosineFraglet::flatten() const {
  std::vector<double> v;
  v.reserve(pairs.size() * 2);
  for (const auto& p : pairs) {
    v.push_back(p.x);
    v.push_back(p.y);
  }
  return v;
}

namespace {

// Cumulative arc length over the polyline; closed polylines wrap around.
std::vector<double> cumulative_lengths(const std::vector<Vec2>& pts,
                                       bool closed) {
  const std::size_t n = pts.size();
  std::vector<double> cum(closed ? n + 1 : n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    cum[i] = cum[i - 1] + std::hypot(pts[i].x - pts[i - 1].x,
                                     pts[i].y - pts[i - 1].y);
  }
  if (closed) {
    cum[n] = cum[n - 1] + std::hypot(pts[0].x - pts[n - 1].x,
                                     pts[0].y - pts[n - 1].y);
  }
  return cum;
}

Vec2 point_at(const std::vector<Vec2>& pts, const std::vector<double>& cum,
              double t) {
  const std::size_t n = pts.size();
  const double total = cum.back();
  if (total <= 0.0) return pts.front();
  t = std::clamp(t, 0.0, total);
  // Find the segment containing t.
  const auto it = std::upper_bound(cum.begin(), cum.end(), t);
  std::size_t seg = it == cum.begin()
                        ? 0
                        : static_cast<std::size_t>(it - cum.begin()) - 1;
  if (seg >= cum.size() - 1) seg = cum.size() - 2;
  const Vec2& a = pts[seg % n];
  const Vec2& b = pts[(seg + 1) % n];
  const double len = cum[seg + 1] - cum[seg];
  const double u = len > 0.0 ? (t - cum[seg]) / len : 0.0;
  return {a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)};
}

std::vector<Vec2> to_vec2(const std::vector<PixelPoint>& contour) {
  std::vector<Vec2> pts;
  pts.reserve(contour.size());
  for (const auto& p : contour)
    pts.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
  return pts;
}

// Turning sharpness at each contour point: the exterior angle between the
// chords to points `support` steps away on either side. Range [0, pi],
// straight runs score 0.
std::vector<double> turning_profile(const std::vector<Vec2>& pts,
                                    int support) {
  const std::size_t n = pts.size();
  std::vector<double> sharp(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& prev = pts[(i + n - support) % n];
    const Vec2& cur = pts[i];
    const Vec2& next = pts[(i + support) % n];
    const double ax = cur.x - prev.x, ay = cur.y - prev.y;
    const double bx = next.x - cur.x, by = next.y - cur.y;
    const double na = std::hypot(ax, ay), nb = std::hypot(bx, by);
    if (na <= 0.0 || nb <= 0.0) continue;
    double c = (ax * bx + ay * by) / (na * nb);
    c = std::clamp(c, -1.0, 1.0);
    sharp[i] = std::acos(c);
  }
  return sharp;
}

// Cyclic arc distance between contour indices.
double cyclic_arc(const std::vector<double>& cum, std::size_t i,
                  std::size_t j) {
  const double total = cum.back();
  const double d = std::abs(cum[i] - cum[j]);
  return std::min(d, total - d);
}

bool resample_and_normalize(const std::vector<Vec2>& pts, bool closed, int n,
                            Fraglet& out, std::vector<Vec2>* raw) {
  const auto cum = cumulative_lengths(pts, closed);
  const double total = cum.back();
  std::vector<Vec2> samples(n);
  if (total <= 0.0) {
    for (auto& s : samples) s = pts.front();
  } else {
    for (int k = 0; k < n; ++k) {
      const double t = closed ? total * k / n : total * k / (n - 1);
      samples[k] = point_at(pts, cum, t);
    }
  }
  if (raw) *raw = samples;

  Vec2 c;
  for (const auto& s : samples) {
    c.x += s.x;
    c.y += s.y;
  }
  c.x /= n;
  c.y /= n;
  double mean_r = 0.0;
  for (auto& s : samples) {
    s.x -= c.x;
    s.y -= c.y;
    mean_r += std::hypot(s.x, s.y);
  }
  mean_r /= n;
  if (mean_r < 1e-9) return false;  // speckle, no usable shape
  for (auto& s : samples) {
    s.x /= mean_r;
    s.y /= mean_r;
  }
  out.points = std::move(samples);
  return true;
}

}  // namespace

bool normalize_contour(const std::vector<PixelPoint>& contour, bool closed,
                       int n, Fraglet& out, std::vector<Vec2>* raw) {
  if (contour.empty()) return false;
  return resample_and_normalize(to_vec2(contour), closed, n, out, raw);
}

std::vector<ExtractedFraglet> extract_fraglets_detailed(
    const BinaryImage& img, const FragletConfig& cfg) {
  std::vector<ExtractedFraglet> out;
  const auto contours = outer_contours(img);
  for (std::size_t ci = 0; ci < contours.size(); ++ci) {
    const auto pts = to_vec2(contours[ci]);
    if (pts.size() < 8) continue;  // too small to carry shape
    const auto cum = cumulative_lengths(pts, true);
    const double total = cum.back();

    std::vector<std::vector<Vec2>> pieces;
    std::vector<bool> piece_closed;
    const bool fragment = cfg.target_arc_len > 0.0 &&
                          total > 1.5 * cfg.target_arc_len;
    if (!fragment) {
      pieces.push_back(pts);
      piece_closed.push_back(true);
    } else {
      const int n_frag = std::max(
          2, static_cast<int>(std::lround(total / cfg.target_arc_len)));
      const int support = std::max(
          2, std::min<int>(5, static_cast<int>(pts.size()) / 4));
      const auto sharp = turning_profile(pts, support);

      // Greedily pick the sharpest turning points, keeping cuts at least
      // half a fragment apart along the arc.
      std::vector<std::size_t> order(pts.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return sharp[a] > sharp[b];
                       });
      const double min_sep = total / (2.0 * n_frag);
      std::vector<std::size_t> cuts;
      for (std::size_t idx : order) {
        if (static_cast<int>(cuts.size()) >= n_frag) break;
        bool ok = true;
        for (std::size_t c : cuts) {
          if (cyclic_arc(cum, idx, c) < min_sep) {
            ok = false;
            break;
          }
        }
        if (ok) cuts.push_back(idx);
      }
      if (static_cast<int>(cuts.size()) < 2) {
        // Degenerate curvature landscape (e.g. a perfect circle): fall back
        // to equally spaced cuts.
        cuts.clear();
        for (int i = 0; i < n_frag; ++i)
          cuts.push_back(i * pts.size() / n_frag);
      }
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

      for (std::size_t i = 0; i < cuts.size(); ++i) {
        const std::size_t from = cuts[i];
        const std::size_t to = cuts[(i + 1) % cuts.size()];
        std::vector<Vec2> arc;
        for (std::size_t j = from;; j = (j + 1) % pts.size()) {
          arc.push_back(pts[j]);
          if (j == to) break;
        }
        if (arc.size() >= 4) {
          pieces.push_back(std::move(arc));
          piece_closed.push_back(false);
        }
      }
    }

    for (std::size_t pi = 0; pi < pieces.size(); ++pi) {
      ExtractedFraglet ef;
      ef.component_id = static_cast<int>(ci);
      if (resample_and_normalize(pieces[pi], piece_closed[pi], kFragletPoints,
                                 ef.shape, &ef.raw)) {
        out.push_back(std::move(ef));
      }
    }
  }
  return out;
}

std::vector<Fraglet> extract_fraglets(const BinaryImage& img,
                                      const FragletConfig& cfg) {
  std::vector<Fraglet> out;
  for (auto& ef : extract_fraglets_detailed(img, cfg))
    out.push_back(std::move(ef.shape));
  return out;
}

CosineFraglet to_cosine(const Fraglet& f) {
  CosineFraglet out;
  out.pairs.reserve(f.points.size());
  for (const auto& p : f.points) {
    if (p.x == 0.0 && p.y == 0.0) {
      ++out.degenerate_points;
      out.pairs.push_back({1.0, 0.0});  // phi defined as 0
    } else {
      const double phi = std::atan2(p.y, p.x);
      out.pairs.push_back({std::cos(phi), std::sin(phi)});
    }
  }
  return out;
}

FeatureVector adjoin(const FeatureVector& hinge, const FeatureVector& fraglet,
                     double w_h, double w_f) {
  if (hinge.kind != FeatureKind::hinge)
    throw std::invalid_argument("adjoin: first argument must be a hinge vector");
  if (fraglet.kind != FeatureKind::fraglet &&
      fraglet.kind != FeatureKind::fraglet_cos)
    throw std::invalid_argument("adjoin: second argument must be a fraglet vector");
  if (!(w_h > 0.0) || !(w_f > 0.0) || std::abs(w_h + w_f - 1.0) > 1e-12)
    throw std::invalid_argument("adjoin: weights must be positive and sum to 1");
  if (std::abs(hinge.sum() - 1.0) > 1e-6 || std::abs(fraglet.sum() - 1.0) > 1e-6)
    throw std::invalid_argument("adjoin: inputs must be normalized");

  FeatureVector out;
  out.kind = FeatureKind::adjoined;
  out.values.reserve(hinge.dim() + fraglet.dim());
  for (double v : hinge.values) out.values.push_back(w_h * v);
  for (double v : fraglet.values) out.values.push_back(w_f * v);
  return out;
}

}  // namespace scripta
