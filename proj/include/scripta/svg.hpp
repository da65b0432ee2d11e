#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace scripta {

// Minimal deterministic SVG emitter: fixed number formatting, elements in
// insertion order, no timestamps, so identical inputs give identical bytes.
class SvgDocument {
 public:
  SvgDocument(double width, double height);

  void rect(double x, double y, double w, double h, const std::string& fill,
            const std::string& stroke = "none", double stroke_width = 0.0);
  void circle(double cx, double cy, double r, const std::string& fill);
  void line(double x1, double y1, double x2, double y2,
            const std::string& stroke, double width = 1.0);
  void polyline(const std::vector<std::pair<double, double>>& pts,
                const std::string& stroke, double width = 1.0);
  void polygon(const std::vector<std::pair<double, double>>& pts,
               const std::string& fill);
  void text(double x, double y, const std::string& content, double size = 10.0,
            const std::string& fill = "#000000",
            const std::string& anchor = "start");

  std::string str() const;
  void write(const std::filesystem::path& path) const;

  double width() const { return width_; }
  double height() const { return height_; }

 private:
  double width_;
  double height_;
  std::string body_;
};

// Shared axis helper: maps data coordinates onto a plot box and draws the
// frame with tick labels.
struct PlotFrame {
  double x0, y0, w, h;        // plot box in SVG coordinates
  double xmin, xmax, ymin, ymax;

  double px(double x) const { return x0 + (x - xmin) / (xmax - xmin) * w; }
  double py(double y) const { return y0 + h - (y - ymin) / (ymax - ymin) * h; }
  void draw_axes(SvgDocument& doc, const std::string& xlabel,
                 const std::string& ylabel, int xticks = 6,
                 int yticks = 5) const;
};

std::string format_number(double v);

}  // namespace scripta
