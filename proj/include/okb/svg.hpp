#pragma once

// Static SVG pictures of planar bodies: axes through the origin labelled
// x₁ and x₂, the body filled (or stroked, for segments), vertices annotated
// with their exact coordinates.

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "okb/semigroup.hpp"

namespace okb::svg {

namespace detail {

inline std::string num(const Rational& r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", r.convert_to<double>());
  return buf;
}

// Counterclockwise order of the vertices of a convex polygon.
inline std::vector<QVector> cyclic_order(std::vector<QVector> v) {
  if (v.size() < 3) return v;
  QVector c(2);
  for (const auto& p : v) c = c + p;
  c = Rational(1, static_cast<long long>(v.size())) * c;
  auto half = [&](const QVector& p) {
    Rational x = p[0] - c[0], y = p[1] - c[1];
    return (y > 0 || (y == 0 && x > 0)) ? 0 : 1;
  };
  std::sort(v.begin(), v.end(), [&](const QVector& a, const QVector& b) {
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return (a[0] - c[0]) * (b[1] - c[1]) - (a[1] - c[1]) * (b[0] - c[0]) > 0;
  });
  return v;
}

}  // namespace detail

inline std::string render_svg(const ConvexBody& body) {
  const auto& p = body.polytope;
  if (p.ambient_dim() != 2) throw Error(ErrorCode::invalid_argument, "only planar bodies can be drawn");
  if (p.is_empty()) throw Error(ErrorCode::invalid_argument, "cannot draw the empty body");

  Rational xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  for (const auto& v : p.vertices()) {
    xmin = std::min(xmin, v[0]);
    xmax = std::max(xmax, v[0]);
    ymin = std::min(ymin, v[1]);
    ymax = std::max(ymax, v[1]);
  }
  const Rational size = 400, margin = 50;
  Rational scale = (size - 2 * margin) / std::max(xmax - xmin, ymax - ymin);
  auto sx = [&](const Rational& x) { return detail::num(margin + (x - xmin) * scale); };
  auto sy = [&](const Rational& y) { return detail::num(size - margin - (y - ymin) * scale); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 400 400\" width=\"400\" height=\"400\">\n";
  out << "  <g stroke=\"#888\" stroke-width=\"1\">\n";
  out << "    <line x1=\"" << sx(xmin) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(xmax) << "\" y2=\"" << sy(0) << "\"/>\n";
  out << "    <line x1=\"" << sx(0) << "\" y1=\"" << sy(ymin) << "\" x2=\"" << sx(0) << "\" y2=\"" << sy(ymax) << "\"/>\n";
  out << "  </g>\n";
  out << "  <text x=\"" << detail::num(size - margin / 2) << "\" y=\"" << sy(0) << "\" font-size=\"14\">x₁</text>\n";
  out << "  <text x=\"" << sx(0) << "\" y=\"" << detail::num(margin / 2) << "\" font-size=\"14\">x₂</text>\n";

  auto verts = detail::cyclic_order(p.vertices());
  if (verts.size() == 1) {
    out << "  <circle class=\"body\" cx=\"" << sx(verts[0][0]) << "\" cy=\"" << sy(verts[0][1])
        << "\" r=\"4\" fill=\"#1f4e9c\"/>\n";
  } else {
    out << "  <path class=\"body\" d=\"";
    for (std::size_t i = 0; i < verts.size(); ++i)
      out << (i ? " L " : "M ") << sx(verts[i][0]) << " " << sy(verts[i][1]);
    if (verts.size() >= 3)
      out << " Z\" fill=\"#9cb8e6\" fill-opacity=\"0.6\" stroke=\"#1f4e9c\" stroke-width=\"2\"/>\n";
    else
      out << "\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"3\"/>\n";
  }
  for (const auto& v : verts)
    out << "  <text class=\"vertex\" x=\"" << sx(v[0]) << "\" y=\"" << sy(v[1]) << "\" dx=\"6\" dy=\"-6\" font-size=\"12\">("
        << to_string(v[0]) << ", " << to_string(v[1]) << ")</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace okb::svg
