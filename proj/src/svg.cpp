#include "scripta/svg.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace scripta {

std::string format_number(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

namespace {

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

SvgDocument::SvgDocument(double width, double height)
    : width_(width), height_(height) {}

void SvgDocument::rect(double x, double y, double w, double h,
                       const std::string& fill, const std::string& stroke,
                       double stroke_width) {
  body_ += "<rect x=\"" + format_number(x) + "\" y=\"" + format_number(y) +
           "\" width=\"" + format_number(w) + "\" height=\"" +
           format_number(h) + "\" fill=\"" + fill + "\"";
  if (stroke != "none") {
    body_ += " stroke=\"" + stroke + "\" stroke-width=\"" +
             format_number(stroke_width) + "\"";
  }
  body_ += "/>\n";
}

void SvgDocument::circle(double cx, double cy, double r,
                         const std::string& fill) {
  body_ += "<circle cx=\"" + format_number(cx) + "\" cy=\"" +
           format_number(cy) + "\" r=\"" + format_number(r) + "\" fill=\"" +
           fill + "\"/>\n";
}

void SvgDocument::line(double x1, double y1, double x2, double y2,
                       const std::string& stroke, double width) {
  body_ += "<line x1=\"" + format_number(x1) + "\" y1=\"" + format_number(y1) +
           "\" x2=\"" + format_number(x2) + "\" y2=\"" + format_number(y2) +
           "\" stroke=\"" + stroke + "\" stroke-width=\"" +
           format_number(width) + "\"/>\n";
}

void SvgDocument::polyline(const std::vector<std::pair<double, double>>& pts,
                           const std::string& stroke, double width) {
  body_ += "<polyline fill=\"none\" stroke=\"" + stroke +
           "\" stroke-width=\"" + format_number(width) + "\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) body_ += ' ';
    body_ += format_number(pts[i].first) + "," + format_number(pts[i].second);
  }
  body_ += "\"/>\n";
}

void SvgDocument::polygon(const std::vector<std::pair<double, double>>& pts,
                          const std::string& fill) {
  body_ += "<polygon fill=\"" + fill + "\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) body_ += ' ';
    body_ += format_number(pts[i].first) + "," + format_number(pts[i].second);
  }
  body_ += "\"/>\n";
}

void SvgDocument::text(double x, double y, const std::string& content,
                       double size, const std::string& fill,
                       const std::string& anchor) {
  body_ += "<text x=\"" + format_number(x) + "\" y=\"" + format_number(y) +
           "\" font-size=\"" + format_number(size) +
           "\" font-family=\"sans-serif\" fill=\"" + fill +
           "\" text-anchor=\"" + anchor + "\">" + escape(content) +
           "</text>\n";
}

std::string SvgDocument::str() const {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         format_number(width_) + "\" height=\"" + format_number(height_) +
         "\" viewBox=\"0 0 " + format_number(width_) + " " +
         format_number(height_) + "\">\n";
  out += body_;
  out += "</svg>\n";
  return out;
}

void SvgDocument::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write svg: " + path.string());
  const std::string s = str();
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void PlotFrame::draw_axes(SvgDocument& doc, const std::string& xlabel,
                          const std::string& ylabel, int xticks,
                          int yticks) const {
  doc.rect(x0, y0, w, h, "none", "#444444", 1.0);
  for (int i = 0; i <= xticks; ++i) {
    const double x = xmin + (xmax - xmin) * i / xticks;
    const double sx = px(x);
    doc.line(sx, y0 + h, sx, y0 + h + 4, "#444444", 1.0);
    doc.text(sx, y0 + h + 16, format_number(x), 9.0, "#444444", "middle");
  }
  for (int i = 0; i <= yticks; ++i) {
    const double y = ymin + (ymax - ymin) * i / yticks;
    const double sy = py(y);
    doc.line(x0 - 4, sy, x0, sy, "#444444", 1.0);
    doc.text(x0 - 6, sy + 3, format_number(y), 9.0, "#444444", "end");
  }
  doc.text(x0 + w / 2, y0 + h + 30, xlabel, 11.0, "#000000", "middle");
  doc.text(x0 - 40, y0 - 8, ylabel, 11.0, "#000000", "start");
}

}  // namespace scripta
