#pragma once

// SVG 1.1 pictures of planar nodal domains and k-frames.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "reptile/nodal.hpp"

namespace reptile {

namespace detail {

inline constexpr double kSvgWidth = 480.0;
inline constexpr double kSvgMargin = 10.0;

inline void require_planar(const Domain& d) {
  if (d.dim != 2) throw UnsupportedError("SVG output is available for planar domains only");
}

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

struct Canvas {
  double sx, sy, width, height;

  Canvas(const Domain& d) {
    const auto l = edge_lengths(d);
    sx = sy = kSvgWidth / l[0];
    width = kSvgWidth + 2 * kSvgMargin;
    height = l[1] * sy + 2 * kSvgMargin;
  }
  double x(double v) const { return kSvgMargin + v * sx; }
  double y(double v) const { return height - kSvgMargin - v * sy; }
};

inline std::string header(const Canvas& c) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         fmt(c.width) + "\" height=\"" + fmt(c.height) + "\">\n";
}

inline std::string outline_points(const Domain& d, const Canvas& c) {
  const auto l = edge_lengths(d);
  std::string pts;
  if (d.is_triangle())
    pts = fmt(c.x(0)) + "," + fmt(c.y(0)) + " " + fmt(c.x(l[0])) + "," + fmt(c.y(0)) + " " + fmt(c.x(l[0])) + "," +
          fmt(c.y(l[1]));
  else
    pts = fmt(c.x(0)) + "," + fmt(c.y(0)) + " " + fmt(c.x(l[0])) + "," + fmt(c.y(0)) + " " + fmt(c.x(l[0])) + "," +
          fmt(c.y(l[1])) + " " + fmt(c.x(0)) + "," + fmt(c.y(l[1]));
  return pts;
}

inline std::string outline(const Domain& d, const Canvas& c) {
  return "<polygon points=\"" + outline_points(d, c) + "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
}

/// Distinct fill per component, warm for positive, cool for negative.
/// Hex RGB, since SVG 1.1 has no hsl().
inline std::string component_colour(std::int32_t label, bool positive) {
  const double h = (std::fmod(label * 47.0, 120.0) + (positive ? 0.0 : 180.0)) / 60.0;
  const double s = 0.65, l = positive ? 0.70 : 0.60;
  const double chroma = (1 - std::abs(2 * l - 1)) * s;
  const double x = chroma * (1 - std::abs(std::fmod(h, 2.0) - 1));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(h)) {
    case 0: r = chroma, g = x; break;
    case 1: r = x, g = chroma; break;
    case 2: g = chroma, b = x; break;
    case 3: g = x, b = chroma; break;
    case 4: r = x, b = chroma; break;
    default: r = chroma, b = x; break;
  }
  const double m = l - chroma / 2;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround((r + m) * 255)),
                static_cast<int>(std::lround((g + m) * 255)), static_cast<int>(std::lround((b + m) * 255)));
  return buf;
}

}  // namespace detail

/// Nodal domains of a planar eigenfunction, one filled run per grid row.
inline std::string nodal_svg(const EigenfunctionCombo& f, int resolution = 0) {
  const Domain& d = f.problem().domain;
  detail::require_planar(d);
  const auto res = detail::grid_resolution(f, resolution);
  const auto g = grid_components(f, res);
  const auto l = edge_lengths(d);
  const detail::Canvas c(d);
  const double hx = l[0] / res[0], hy = l[1] / res[1];
  std::ostringstream out;
  out << detail::header(c) << "<defs><clipPath id=\"domain\"><polygon points=\"" << detail::outline_points(d, c)
      << "\"/></clipPath></defs>\n<g clip-path=\"url(#domain)\">\n";
  for (int j = 0; j < res[1]; ++j) {
    int i = 0;
    while (i < res[0]) {
      const std::size_t idx = static_cast<std::size_t>(j) * res[0] + i;
      const std::int32_t lab = g.label[idx];
      int e = i + 1;
      while (e < res[0] && g.label[static_cast<std::size_t>(j) * res[0] + e] == lab) ++e;
      if (lab >= 0) {
        const double x0 = i * hx, y0 = j * hy;
        const double mid = (j + g.offset[1]) * hy;
        const bool positive = f.raw({(i + g.offset[0]) * hx, mid}) > 0;
        out << "<rect x=\"" << detail::fmt(c.x(x0)) << "\" y=\"" << detail::fmt(c.y(y0 + hy)) << "\" width=\""
            << detail::fmt((e - i) * hx * c.sx) << "\" height=\"" << detail::fmt(hy * c.sy) << "\" fill=\""
            << detail::component_colour(lab, positive) << "\" stroke=\"none\"/>\n";
      }
      i = e;
    }
  }
  out << "</g>\n" << detail::outline(d, c) << "</svg>\n";
  return out.str();
}

/// Facets of a planar k-frame drawn over the domain outline.
inline std::string frame_svg(const KFrame& frame) {
  const Domain& d = frame.domain;
  detail::require_planar(d);
  const detail::Canvas c(d);
  const auto l = edge_lengths(d);
  const double pi = std::numbers::pi;
  std::ostringstream out;
  out << detail::header(c) << detail::outline(d, c);
  auto line = [&](double x0, double y0, double x1, double y1) {
    out << "<line x1=\"" << detail::fmt(c.x(x0)) << "\" y1=\"" << detail::fmt(c.y(y0)) << "\" x2=\""
        << detail::fmt(c.x(x1)) << "\" y2=\"" << detail::fmt(c.y(y1)) << "\" stroke=\"crimson\" stroke-width=\"2\"/>\n";
  };
  auto dbl = [](const Rational& r) { return boost::rational_cast<double>(r); };
  for (const auto& s : frame.segments) line(pi * dbl(s.x0), pi * dbl(s.y0), pi * dbl(s.x1), pi * dbl(s.y1));
  for (const auto& s : frame.slabs) {
    const auto& r = s.range;
    line(l[0] * dbl(r[0].first), l[1] * dbl(r[1].first), l[0] * dbl(r[0].second), l[1] * dbl(r[1].second));
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace reptile
