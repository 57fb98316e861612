#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "zeno/errors.hpp"

namespace zeno {

// Minimal static SVG 1.1 line plots — no external plotting dependency. The
// CSV next to each plot is the byte-exact contract; the SVG is a convenience
// view of the same data.

struct svg_series {
  std::string label;
  std::vector<double> y;
};

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline std::string svg_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

inline const char* svg_color(size_t i) {
  static const char* palette[] = {"#1f6fb2", "#c23b22", "#2e8b57",
                                  "#8e5aa8", "#b8860b", "#444444"};
  return palette[i % 6];
}

}  // namespace detail

// Writes a line plot of the series against the shared x values. Throws
// io_error on ragged/non-finite data or an unwritable path.
inline void write_svg_lineplot(const std::filesystem::path& path,
                               const std::string& title,
                               const std::string& xlabel,
                               const std::string& ylabel,
                               const std::vector<double>& x,
                               const std::vector<svg_series>& series) {
  if (x.size() < 2) throw io_error("write_svg_lineplot: need at least 2 points");
  double xmin = x.front(), xmax = x.front();
  for (double v : x) {
    if (!std::isfinite(v)) throw io_error("write_svg_lineplot: non-finite x");
    xmin = std::min(xmin, v);
    xmax = std::max(xmax, v);
  }
  double ymin = 0, ymax = 0;
  bool first = true;
  for (const auto& s : series) {
    if (s.y.size() != x.size())
      throw io_error("write_svg_lineplot: series '" + s.label +
                     "' length differs from x");
    for (double v : s.y) {
      if (!std::isfinite(v)) throw io_error("write_svg_lineplot: non-finite y");
      if (first) {
        ymin = ymax = v;
        first = false;
      }
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;

  const double W = 860, H = 520;
  const double L = 78, R = 24, T = 46, B = 58;  // margins
  const double pw = W - L - R, ph = H - T - B;
  auto X = [&](double v) { return L + (v - xmin) / (xmax - xmin) * pw; };
  auto Y = [&](double v) { return T + ph - (v - ymin) / (ymax - ymin) * ph; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         detail::svg_num(W) + "\" height=\"" + detail::svg_num(H) +
         "\" viewBox=\"0 0 " + detail::svg_num(W) + " " + detail::svg_num(H) +
         "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + detail::svg_num(W / 2) + "\" y=\"26\" font-size=\"17\" "
         "text-anchor=\"middle\" font-family=\"sans-serif\">" + title + "</text>\n";
  // axes
  out += "<line x1=\"" + detail::svg_num(L) + "\" y1=\"" + detail::svg_num(T) +
         "\" x2=\"" + detail::svg_num(L) + "\" y2=\"" + detail::svg_num(T + ph) +
         "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + detail::svg_num(L) + "\" y1=\"" + detail::svg_num(T + ph) +
         "\" x2=\"" + detail::svg_num(L + pw) + "\" y2=\"" +
         detail::svg_num(T + ph) + "\" stroke=\"black\"/>\n";
  // ticks: 5 per axis
  for (int k = 0; k <= 4; ++k) {
    const double xv = xmin + (xmax - xmin) * k / 4.0;
    const double yv = ymin + (ymax - ymin) * k / 4.0;
    out += "<line x1=\"" + detail::svg_num(X(xv)) + "\" y1=\"" +
           detail::svg_num(T + ph) + "\" x2=\"" + detail::svg_num(X(xv)) +
           "\" y2=\"" + detail::svg_num(T + ph + 5) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + detail::svg_num(X(xv)) + "\" y=\"" +
           detail::svg_num(T + ph + 20) +
           "\" font-size=\"12\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\">" + detail::svg_tick(xv) + "</text>\n";
    out += "<line x1=\"" + detail::svg_num(L - 5) + "\" y1=\"" +
           detail::svg_num(Y(yv)) + "\" x2=\"" + detail::svg_num(L) + "\" y2=\"" +
           detail::svg_num(Y(yv)) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + detail::svg_num(L - 9) + "\" y=\"" +
           detail::svg_num(Y(yv) + 4) +
           "\" font-size=\"12\" text-anchor=\"end\" "
           "font-family=\"sans-serif\">" + detail::svg_tick(yv) + "</text>\n";
  }
  out += "<text x=\"" + detail::svg_num(L + pw / 2) + "\" y=\"" +
         detail::svg_num(H - 14) +
         "\" font-size=\"14\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\">" + xlabel + "</text>\n";
  out += "<text x=\"20\" y=\"" + detail::svg_num(T + ph / 2) +
         "\" font-size=\"14\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" transform=\"rotate(-90 20 " +
         detail::svg_num(T + ph / 2) + ")\">" + ylabel + "</text>\n";
  // series
  for (size_t s = 0; s < series.size(); ++s) {
    out += "<polyline fill=\"none\" stroke=\"";
    out += detail::svg_color(s);
    out += "\" stroke-width=\"1.6\" points=\"";
    for (size_t j = 0; j < x.size(); ++j) {
      if (j) out += " ";
      out += detail::svg_num(X(x[j])) + "," + detail::svg_num(Y(series[s].y[j]));
    }
    out += "\"/>\n";
  }
  // legend
  for (size_t s = 0; s < series.size(); ++s) {
    const double ly = T + 14 + 18 * static_cast<double>(s);
    out += "<line x1=\"" + detail::svg_num(L + pw - 150) + "\" y1=\"" +
           detail::svg_num(ly) + "\" x2=\"" + detail::svg_num(L + pw - 124) +
           "\" y2=\"" + detail::svg_num(ly) + "\" stroke=\"";
    out += detail::svg_color(s);
    out += "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + detail::svg_num(L + pw - 118) + "\" y=\"" +
           detail::svg_num(ly + 4) +
           "\" font-size=\"12\" font-family=\"sans-serif\">" + series[s].label +
           "</text>\n";
  }
  out += "</svg>\n";

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw io_error("write_svg_lineplot: cannot open '" + path.string() + "'");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  f.flush();
  if (!f) throw io_error("write_svg_lineplot: write failed for '" + path.string() + "'");
}

}  // namespace zeno
