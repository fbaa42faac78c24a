#include "fdrlim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace fdrlim {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 24.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 56.0;

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

// Tick spacing of the form {1,2,5} * 10^k giving 4 to 8 intervals.
double nice_step(double span) {
  if (span <= 0.0) return 1.0;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag * (1.0 + 1e-12)) return m * mag;
  }
  return 10.0 * mag;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

Range pad_range(double lo, double hi) {
  if (!(lo < hi)) {
    const double c = std::isfinite(lo) ? lo : 0.0;
    return {c - 0.5, c + 0.5};
  }
  const double pad = 0.04 * (hi - lo);
  Range r{lo - pad, hi + pad};
  if (lo >= 0.0 && r.lo < 0.0) r.lo = 0.0;
  return r;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_svg(const PlotSpec& spec, const std::string& path) {
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const auto& s : spec.series) {
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (!std::isfinite(x_lo)) throw std::runtime_error("plot has no finite points");
  const Range xr = pad_range(x_lo, x_hi);
  const Range yr = pad_range(y_lo, y_hi);

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  const auto py = [&](double y) { return kTop + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h; };

  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  out << "<g font-family=\"Helvetica, Arial, sans-serif\" font-size=\"12\" fill=\"#333\">\n";

  // Gridlines and tick labels.
  const double xs = nice_step(xr.hi - xr.lo);
  const double ys = nice_step(yr.hi - yr.lo);
  out << "<g stroke=\"#ddd\" stroke-width=\"1\">\n";
  for (double t = std::ceil(xr.lo / xs) * xs; t <= xr.hi + 1e-12; t += xs) {
    out << "<line x1=\"" << fmt(px(t)) << "\" y1=\"" << fmt(kTop) << "\" x2=\"" << fmt(px(t))
        << "\" y2=\"" << fmt(kTop + plot_h) << "\"/>\n";
  }
  for (double t = std::ceil(yr.lo / ys) * ys; t <= yr.hi + 1e-12; t += ys) {
    out << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(py(t)) << "\" x2=\""
        << fmt(kLeft + plot_w) << "\" y2=\"" << fmt(py(t)) << "\"/>\n";
  }
  out << "</g>\n";
  for (double t = std::ceil(xr.lo / xs) * xs; t <= xr.hi + 1e-12; t += xs) {
    out << "<text x=\"" << fmt(px(t)) << "\" y=\"" << fmt(kTop + plot_h + 18)
        << "\" text-anchor=\"middle\">" << fmt(std::abs(t) < 1e-12 ? 0.0 : t) << "</text>\n";
  }
  for (double t = std::ceil(yr.lo / ys) * ys; t <= yr.hi + 1e-12; t += ys) {
    out << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(py(t) + 4)
        << "\" text-anchor=\"end\">" << fmt(std::abs(t) < 1e-12 ? 0.0 : t) << "</text>\n";
  }

  // Frame.
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";

  // Data.
  for (const auto& s : spec.series) {
    std::string pts;
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      pts += fmt(px(x)) + "," + fmt(py(y)) + " ";
    }
    out << "<polyline points=\"" << pts << "\" fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.8\"";
    if (s.dashed) out << " stroke-dasharray=\"6 4\"";
    out << "/>\n";
    if (s.markers) {
      for (const auto& [x, y] : s.points) {
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        out << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y))
            << "\" r=\"2.6\" fill=\"" << s.color << "\"/>\n";
      }
    }
  }

  // Labels and title.
  out << "<text x=\"" << fmt(kLeft + plot_w / 2) << "\" y=\"" << fmt(kHeight - 14)
      << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
  out << "<text x=\"16\" y=\"" << fmt(kTop + plot_h / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << fmt(kTop + plot_h / 2)
      << ")\">" << escape(spec.y_label) << "</text>\n";
  out << "<text x=\"" << fmt(kLeft + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-size=\"15\" font-weight=\"bold\">" << escape(spec.title) << "</text>\n";

  // Legend, top-right inside the frame.
  double ly = kTop + 14;
  for (const auto& s : spec.series) {
    const double lx = kLeft + plot_w - 176;
    out << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\"" << fmt(lx + 26)
        << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << s.color << "\" stroke-width=\"1.8\"";
    if (s.dashed) out << " stroke-dasharray=\"6 4\"";
    out << "/>\n";
    out << "<text x=\"" << fmt(lx + 32) << "\" y=\"" << fmt(ly) << "\">" << escape(s.label)
        << "</text>\n";
    ly += 18;
  }

  out << "</g>\n</svg>\n";
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace fdrlim
