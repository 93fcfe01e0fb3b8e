#include "optecot/svg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "optecot/csv.hpp"

namespace optecot {

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                          "#bcbd22", "#17becf"};

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

std::string svg_line_chart(std::span<const QualityCurve> curves,
                           const std::string& title, const std::string& x_label,
                           const std::string& y_label, int width, int height) {
  if (curves.empty()) throw std::invalid_argument("svg_line_chart: no curves");
  double x_min = curves.front().times.front(), x_max = x_min;
  double y_min = curves.front().values.front(), y_max = y_min;
  for (const auto& curve : curves) {
    for (double t : curve.times) {
      x_min = std::min(x_min, t);
      x_max = std::max(x_max, t);
    }
    for (double v : curve.values) {
      y_min = std::min(y_min, v);
      y_max = std::max(y_max, v);
    }
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) y_max = y_min + 1.0;

  const double ml = 72, mr = 140, mt = 36, mb = 48;
  const double pw = width - ml - mr, ph = height - mt - mb;
  auto sx = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * pw; };
  auto sy = [&](double y) { return mt + ph - (y - y_min) / (y_max - y_min) * ph; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         format_int(width) + "\" height=\"" + format_int(height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + format_double(ml) + "\" y=\"22\" font-family=\"sans-serif\" "
         "font-size=\"14\" font-weight=\"bold\">" + title + "</text>\n";

  // axes
  out += "<line x1=\"" + format_double(ml) + "\" y1=\"" + format_double(mt) +
         "\" x2=\"" + format_double(ml) + "\" y2=\"" + format_double(mt + ph) +
         "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + format_double(ml) + "\" y1=\"" + format_double(mt + ph) +
         "\" x2=\"" + format_double(ml + pw) + "\" y2=\"" + format_double(mt + ph) +
         "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x_min + (x_max - x_min) * i / 4.0;
    const double fy = y_min + (y_max - y_min) * i / 4.0;
    out += "<text x=\"" + format_double(sx(fx)) + "\" y=\"" +
           format_double(mt + ph + 18) +
           "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">" +
           fmt_tick(fx) + "</text>\n";
    out += "<text x=\"" + format_double(ml - 6) + "\" y=\"" +
           format_double(sy(fy) + 4) +
           "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" +
           fmt_tick(fy) + "</text>\n";
  }
  out += "<text x=\"" + format_double(ml + pw / 2) + "\" y=\"" +
         format_double(static_cast<double>(height) - 8) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" +
         x_label + "</text>\n";
  out += "<text x=\"16\" y=\"" + format_double(mt + ph / 2) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 16 " + format_double(mt + ph / 2) + ")\">" +
         y_label + "</text>\n";

  for (std::size_t k = 0; k < curves.size(); ++k) {
    const auto& curve = curves[k];
    const char* color = kPalette[k % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::string points;
    for (std::size_t i = 0; i < curve.times.size(); ++i) {
      if (i) points.push_back(' ');
      points += format_double(sx(curve.times[i])) + "," +
                format_double(sy(curve.values[i]));
    }
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    const double ly = mt + 14 + 16 * static_cast<double>(k);
    out += "<line x1=\"" + format_double(ml + pw + 8) + "\" y1=\"" +
           format_double(ly - 4) + "\" x2=\"" + format_double(ml + pw + 28) +
           "\" y2=\"" + format_double(ly - 4) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + format_double(ml + pw + 32) + "\" y=\"" +
           format_double(ly) +
           "\" font-family=\"sans-serif\" font-size=\"10\">" + curve.label +
           "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace optecot
