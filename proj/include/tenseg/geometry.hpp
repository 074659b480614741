#pragma once

#include <cmath>

namespace tenseg {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }

inline double distance(Point2 a, Point2 b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

inline bool lex_less(Point2 a, Point2 b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

// Axis-aligned viewport.  Critical points and traced curves are always
// relative to one of these; nothing outside it is reported.
struct BBox {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double diameter() const { return std::hypot(width(), height()); }
  Point2 center() const { return {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)}; }

  bool valid() const { return xmin < xmax && ymin < ymax; }

  bool contains(Point2 p, double pad = 0.0) const {
    return p.x >= xmin - pad && p.x <= xmax + pad && p.y >= ymin - pad &&
           p.y <= ymax + pad;
  }

  BBox inflated(double pad_x, double pad_y) const {
    return {xmin - pad_x, ymin - pad_y, xmax + pad_x, ymax + pad_y};
  }

  friend bool operator==(const BBox&, const BBox&) = default;
};

}  // namespace tenseg
