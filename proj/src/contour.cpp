#include "scripta/contour.hpp"

#include <algorithm>
#include <stdexcept>

namespace scripta {

std::vector<Component> connected_components(const BinaryImage& img) {
  std::vector<Component> comps;
  if (img.empty()) return comps;
  std::vector<std::uint8_t> visited(img.ink.size(), 0);
  std::vector<PixelPoint> stack;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * img.width + x;
      if (!img.ink[idx] || visited[idx]) continue;
      Component comp;
      comp.min_x = comp.max_x = x;
      comp.min_y = comp.max_y = y;
      visited[idx] = 1;
      stack.push_back({x, y});
      while (!stack.empty()) {
        const PixelPoint p = stack.back();
        stack.pop_back();
        comp.pixels.push_back(p);
        comp.min_x = std::min(comp.min_x, p.x);
        comp.max_x = std::max(comp.max_x, p.x);
        comp.min_y = std::min(comp.min_y, p.y);
        comp.max_y = std::max(comp.max_y, p.y);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const int nx = p.x + dx;
            const int ny = p.y + dy;
            if (!img.in_bounds(nx, ny)) continue;
            const std::size_t nidx =
                static_cast<std::size_t>(ny) * img.width + nx;
            if (img.ink[nidx] && !visited[nidx]) {
              visited[nidx] = 1;
              stack.push_back({nx, ny});
            }
          }
        }
      }
      // The component's first pixel is its topmost-leftmost one because the
      // outer scan is row-major, but BFS order inside `pixels` is not sorted;
      // restore the canonical anchor.
      auto top_left = std::min_element(
          comp.pixels.begin(), comp.pixels.end(),
          [](const PixelPoint& l, const PixelPoint& r) {
            return l.y != r.y ? l.y < r.y : l.x < r.x;
          });
      std::iter_swap(comp.pixels.begin(), top_left);
      comps.push_back(std::move(comp));
    }
  }
  return comps;
}

namespace {

// Moore neighbourhood in clockwise screen order (y down), starting east.
constexpr int kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr int kDy[8] = {0, 1, 1, 1, 0, -1, -1, -1};

int dir_index(int dx, int dy) {
  for (int d = 0; d < 8; ++d) {
    if (kDx[d] == dx && kDy[d] == dy) return d;
  }
  throw std::logic_error("dir_index: not a Moore neighbour");
}

}  // namespace

std::vector<PixelPoint> trace_outer_contour(const BinaryImage& img,
                                            PixelPoint start) {
  if (!img.in_bounds(start.x, start.y) || !img.at(start.x, start.y))
    throw std::invalid_argument("trace_outer_contour: start is not ink");

  // `start` must be the topmost-leftmost pixel of its component, so the
  // west neighbour is guaranteed background; use it as the initial backtrack.
  PixelPoint cur = start;
  int back = 4;  // direction from cur to its backtrack (west)
  int first_move = -1;

  std::vector<PixelPoint> contour;
  const std::size_t hard_limit = img.ink.size() * 4 + 16;
  while (true) {
    // Sweep clockwise starting just after the backtrack direction.
    int found = -1;
    int last_bg = back;
    for (int i = 1; i <= 8; ++i) {
      const int d = (back + i) % 8;
      const int nx = cur.x + kDx[d];
      const int ny = cur.y + kDy[d];
      if (img.in_bounds(nx, ny) && img.at(nx, ny)) {
        found = d;
        break;
      }
      last_bg = d;
    }
    if (found < 0) {
      contour.push_back(cur);  // isolated pixel
      break;
    }
    if (cur == start) {
      if (first_move < 0) {
        first_move = found;
      } else if (found == first_move) {
        break;  // about to repeat the very first move: the loop is closed
      }
    }
    contour.push_back(cur);

    // New backtrack: the background neighbour examined just before the hit,
    // re-expressed relative to the new current pixel. Consecutive ring
    // positions are 8-adjacent, so the lookup is always valid.
    const PixelPoint bg{cur.x + kDx[last_bg], cur.y + kDy[last_bg]};
    cur = {cur.x + kDx[found], cur.y + kDy[found]};
    back = dir_index(bg.x - cur.x, bg.y - cur.y);

    if (contour.size() > hard_limit)
      throw std::runtime_error("trace_outer_contour: tracing did not close");
  }

  // The sweep above walks clockwise in screen coordinates, i.e.
  // counter-clockwise with y up. Normalize in case of degenerate shapes.
  if (contour.size() > 2 && signed_area2(contour) < 0)
    std::reverse(contour.begin() + 1, contour.end());
  return contour;
}

std::vector<std::vector<PixelPoint>> outer_contours(const BinaryImage& img) {
  std::vector<std::vector<PixelPoint>> out;
  for (const auto& comp : connected_components(img)) {
    out.push_back(trace_outer_contour(img, comp.pixels.front()));
  }
  return out;
}

long long signed_area2(const std::vector<PixelPoint>& contour) {
  // Shoelace with y negated so that positive area = counter-clockwise in
  // conventional math orientation.
  long long a2 = 0;
  const std::size_t n = contour.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = contour[i];
    const auto& q = contour[(i + 1) % n];
    a2 += static_cast<long long>(p.x) * (-q.y) -
          static_cast<long long>(q.x) * (-p.y);
  }
  return a2;
}

}  // namespace scripta
