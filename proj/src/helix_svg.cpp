#include "torstab/helix_svg.hpp"

#include <cstdio>
#include <string>

#include "torstab/error.hpp"

namespace torstab {

namespace {

std::string fmt(const char* pattern, double a, double b) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

std::string pt(double x, double y) { return fmt("%.2f %.2f", x, y); }

std::string text(double x, double y, const std::string& cls, const std::string& body) {
  return "  <text class=\"" + cls + "\" x=\"" + fmt("%.2f", x, 0) + "\" y=\"" + fmt("%.2f", y, 0) +
         "\">" + body + "</text>\n";
}

}  // namespace

std::string helix_svg(int d, const HelixStyle& style) {
  if (d < 3) fail(ErrorCode::kDomainError, "dimension must be at least 3");
  const double cx = 240.0, top = 60.0;
  const double rx = style.radius, ry = style.radius * 0.22, h = style.turn_height;
  const double helix_bottom = top + h * d;
  const double base_y = helix_bottom + 110.0;
  const double width = 560.0, height = base_y + ry + 50.0;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         fmt("%.2f", width, 0) + "\" height=\"" + fmt("%.2f", height, 0) + "\" viewBox=\"0 0 " +
         pt(width, height) + "\">\n";
  out += "  <defs>\n    <marker id=\"arrow\" markerWidth=\"10\" markerHeight=\"8\" refX=\"9\" "
         "refY=\"4\" orient=\"auto\"><path d=\"M0 0 L10 4 L0 8 z\" fill=\"#333\"/></marker>\n"
         "  </defs>\n";
  out += "  <style>.cell{fill:none;stroke:#1f5fa8;stroke-width:2}"
         ".wall{fill:none;stroke:#c0392b;stroke-width:3}"
         ".base{fill:none;stroke:#333;stroke-width:1.5}"
         ".map{stroke:#333;stroke-width:1.5}"
         "text{font-family:serif;font-size:14px}</style>\n";

  // turn k runs from the left rim at height y0 to the left rim at y0 + h,
  // front half then back half
  for (int k = 0; k < d; ++k) {
    double y0 = top + h * k;
    double y1 = y0 + h / 2, y2 = y0 + h;
    out += "  <path class=\"cell\" d=\"M" + pt(cx - rx, y0) + " C" +
           pt(cx - rx, y0 + ry * 1.33) + " " + pt(cx + rx, y1 + ry * 1.33) + " " +
           pt(cx + rx, y1) + " C" + pt(cx + rx, y1 - ry * 1.33) + " " +
           pt(cx - rx, y2 - ry * 1.33) + " " + pt(cx - rx, y2) + "\"/>\n";
  }
  for (int p = 1; p < d; ++p) {
    double y = top + h * p;
    out += "  <path class=\"wall\" d=\"M" + pt(cx - rx - 8, y - 10) + " Q" + pt(cx - rx - 16, y) +
           " " + pt(cx - rx - 8, y + 10) + "\"/>\n";
  }
  out += "  <ellipse class=\"base\" cx=\"" + fmt("%.2f", cx, 0) + "\" cy=\"" +
         fmt("%.2f", base_y, 0) + "\" rx=\"" + fmt("%.2f", rx, 0) + "\" ry=\"" +
         fmt("%.2f", ry, 0) + "\"/>\n";
  out += "  <line class=\"map\" x1=\"" + fmt("%.2f", cx, 0) + "\" y1=\"" +
         fmt("%.2f", helix_bottom + 20, 0) + "\" x2=\"" + fmt("%.2f", cx, 0) + "\" y2=\"" +
         fmt("%.2f", base_y - ry - 8, 0) + "\" marker-end=\"url(#arrow)\"/>\n";

  if (style.labels) {
    for (int k = 0; k < d; ++k)
      out += text(cx + rx + 14, top + h * k + h / 2 + 5, "cell-label",
                  "σ<tspan baseline-shift=\"sub\">(" + std::to_string(k) + ")</tspan>");
    for (int p = 1; p < d; ++p)
      out += text(cx - rx - 96, top + h * p + 5, "wall-label",
                  "σ<tspan baseline-shift=\"sub\">(" + std::to_string(p) +
                      ")</tspan><tspan baseline-shift=\"super\">γ</tspan>");
    out += text(cx + rx + 70, top + 18, "annotation", "≅ universal cover");
    out += text(16, top + 18, "annotation", "fundamental group Z");
    out += text(cx + 10, (helix_bottom + base_y - ry) / 2 + 5, "map-label", "𝒵");
  }
  out += "</svg>\n";
  return out;
}

}  // namespace torstab
