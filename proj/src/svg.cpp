#include "r0/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "r0/errors.hpp"

namespace r0 {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return std::string(buf);
}

}  // namespace

void write_line_chart(const std::string& path, const std::string& title,
                      const std::vector<SvgSeries>& series) {
  const double width = 720, height = 400;
  const double ml = 60, mr = 160, mt = 40, mb = 40;
  double lo = 0.0, hi = 1.0;
  std::size_t n = 0;
  bool any = false;
  for (const SvgSeries& s : series) {
    n = std::max(n, s.ys.size());
    for (double y : s.ys) {
      if (!std::isfinite(y)) continue;
      if (!any) {
        lo = hi = y;
        any = true;
      } else {
        lo = std::min(lo, y);
        hi = std::max(hi, y);
      }
    }
  }
  if (!any || hi == lo) {
    hi = (any ? hi : 1.0) + 0.5;
    lo = (any ? lo : 0.0) - 0.5;
  }
  double span = hi - lo;
  auto px = [&](std::size_t i) {
    return ml + (n > 1 ? (width - ml - mr) * double(i) / double(n - 1) : 0.0);
  };
  auto py = [&](double y) { return height - mb - (height - mt - mb) * (y - lo) / span; };

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FileError("cannot open '" + path + "' for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << ml << "\" y=\"24\" font-family=\"monospace\" font-size=\"14\">"
      << title << "</text>\n";
  // Axes and the value range.
  out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\""
      << width - mr << "\" y2=\"" << height - mb << "\" stroke=\"#333\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
      << height - mb << "\" stroke=\"#333\"/>\n";
  out << "<text x=\"8\" y=\"" << mt + 4
      << "\" font-family=\"monospace\" font-size=\"11\">" << num(hi) << "</text>\n";
  out << "<text x=\"8\" y=\"" << height - mb
      << "\" font-family=\"monospace\" font-size=\"11\">" << num(lo) << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const SvgSeries& s = series[si];
    const char* color = kColors[si % (sizeof kColors / sizeof *kColors)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool pen_down = false;
    for (std::size_t i = 0; i < s.ys.size(); ++i) {
      if (!std::isfinite(s.ys[i])) {
        if (pen_down) {
          out << "\"/>\n<polyline fill=\"none\" stroke=\"" << color
              << "\" stroke-width=\"1.5\" points=\"";
          pen_down = false;
        }
        continue;
      }
      out << num(px(i)) << "," << num(py(s.ys[i])) << " ";
      pen_down = true;
    }
    out << "\"/>\n";
    double ly = mt + 16.0 * double(si);
    out << "<rect x=\"" << width - mr + 10 << "\" y=\"" << ly - 9
        << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
    out << "<text x=\"" << width - mr + 26 << "\" y=\"" << ly
        << "\" font-family=\"monospace\" font-size=\"11\">" << s.label << "</text>\n";
  }
  out << "</svg>\n";
  if (!out.flush()) throw FileError("write failed for '" + path + "'");
}

}  // namespace r0
