#include "multigroup/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace multigroup::io {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Scale {
  double lo, hi, px0, px1;
  double operator()(double v) const {
    const double t = (v - lo) / (hi - lo);
    return px0 + t * (px1 - px0);
  }
};

void open_doc(std::ofstream& f, const std::string& title) {
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
    << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
    << kHeight << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kWidth / 2
    << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"15\">"
    << title << "</text>\n";
}

void axes(std::ofstream& f, const Scale& sy, const std::string& ylabel) {
  const double x0 = kLeft, x1 = kWidth - kRight;
  const double y0 = kHeight - kBottom, y1 = kTop;
  f << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1
    << "\" y2=\"" << y0 << "\" stroke=\"black\"/>\n"
    << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0
    << "\" y2=\"" << y1 << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double v = sy.lo + (sy.hi - sy.lo) * k / 4.0;
    const double y = sy(v);
    f << "<line x1=\"" << x0 - 4 << "\" y1=\"" << y << "\" x2=\"" << x0
      << "\" y2=\"" << y << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << x0 - 8 << "\" y=\"" << y + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
         "font-size=\"11\">"
      << num(v) << "</text>\n";
  }
  f << "<text x=\"16\" y=\"" << (kTop + (kHeight - kBottom)) / 2
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\""
       " transform=\"rotate(-90 16 "
    << (kTop + (kHeight - kBottom)) / 2 << ")\">" << ylabel << "</text>\n";
}

}  // namespace

void write_error_bar_svg(const std::string& path, const std::string& title,
                         const std::string& ylabel,
                         const std::vector<ErrorBarEntry>& entries) {
  if (entries.empty()) throw std::invalid_argument("no entries");
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);

  double lo = entries[0].mean - entries[0].se;
  double hi = entries[0].mean + entries[0].se;
  for (const auto& e : entries) {
    lo = std::min(lo, e.mean - e.se);
    hi = std::max(hi, e.mean + e.se);
  }
  const double pad = (hi - lo) > 0 ? 0.15 * (hi - lo) : std::max(0.1 * std::abs(hi), 1e-6);
  lo -= pad;
  hi += pad;

  const Scale sy{lo, hi, kHeight - kBottom, kTop};
  open_doc(f, title);
  axes(f, sy, ylabel);

  const double span = kWidth - kLeft - kRight;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const double x =
        kLeft + span * (static_cast<double>(i) + 0.5) /
                    static_cast<double>(entries.size());
    const char* color = kPalette[i % 8];
    const double ym = sy(e.mean);
    const double yl = sy(e.mean - e.se);
    const double yh = sy(e.mean + e.se);
    f << "<line x1=\"" << x << "\" y1=\"" << yl << "\" x2=\"" << x
      << "\" y2=\"" << yh << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
      << "<line x1=\"" << x - 6 << "\" y1=\"" << yl << "\" x2=\"" << x + 6
      << "\" y2=\"" << yl << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
      << "<line x1=\"" << x - 6 << "\" y1=\"" << yh << "\" x2=\"" << x + 6
      << "\" y2=\"" << yh << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
      << "<circle cx=\"" << x << "\" cy=\"" << ym << "\" r=\"4\" fill=\""
      << color << "\"/>\n"
      << "<text x=\"" << x << "\" y=\"" << kHeight - kBottom + 16
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"10\">"
      << e.label << "</text>\n";
  }
  f << "</svg>\n";
}

void write_xy_svg(const std::string& path, const std::string& title,
                  const std::string& xlabel, const std::string& ylabel,
                  const std::vector<XySeries>& series) {
  if (series.empty()) throw std::invalid_argument("no series");
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);

  bool first = true;
  double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (first) {
        xlo = xhi = x;
        ylo = yhi = y;
        first = false;
      }
      xlo = std::min(xlo, x);
      xhi = std::max(xhi, x);
      ylo = std::min(ylo, y);
      yhi = std::max(yhi, y);
    }
  }
  if (xhi == xlo) xhi = xlo + 1;
  const double ypad = (yhi - ylo) > 0 ? 0.1 * (yhi - ylo) : 0.5;
  ylo -= ypad;
  yhi += ypad;

  const Scale sx{xlo, xhi, kLeft, kWidth - kRight};
  const Scale sy{ylo, yhi, kHeight - kBottom, kTop};
  open_doc(f, title);
  axes(f, sy, ylabel);
  f << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\""
    << kHeight - 16
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
    << xlabel << "</text>\n";
  for (int k = 0; k <= 4; ++k) {
    const double v = xlo + (xhi - xlo) * k / 4.0;
    f << "<text x=\"" << sx(v) << "\" y=\"" << kHeight - kBottom + 16
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"10\">"
      << num(v) << "</text>\n";
  }

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const std::string color =
        s.color.empty() ? kPalette[si % 8] : s.color;
    if (s.line) {
      f << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : s.points) {
        f << num(sx(x)) << "," << num(sy(y)) << " ";
      }
      f << "\"/>\n";
    } else {
      for (const auto& [x, y] : s.points) {
        f << "<circle cx=\"" << num(sx(x)) << "\" cy=\"" << num(sy(y))
          << "\" r=\"2\" fill=\"" << color << "\" fill-opacity=\"0.6\"/>\n";
      }
    }
    // legend
    const double ly = kTop + 14.0 * static_cast<double>(si);
    f << "<rect x=\"" << kWidth - kRight - 150 << "\" y=\"" << ly - 8
      << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n"
      << "<text x=\"" << kWidth - kRight - 136 << "\" y=\"" << ly + 1
      << "\" font-family=\"sans-serif\" font-size=\"10\">" << s.name
      << "</text>\n";
  }
  f << "</svg>\n";
}

}  // namespace multigroup::io
