#pragma once

#include <cmath>

#include "tenseg/geometry.hpp"

namespace tenseg {

// Constant-coefficient exterior forms on R^3.  A plane point (x0, y0) enters
// the algebra as the 1-form x0 dx + y0 dy + dz; the extra dz term is the
// normalization that lets edge tensions be read off a wedge of two of them.

struct OneForm {
  double a = 0.0;  // coefficient of dx
  double b = 0.0;  // coefficient of dy
  double c = 0.0;  // coefficient of dz

  friend bool operator==(const OneForm&, const OneForm&) = default;
};

struct TwoForm {
  double p = 0.0;  // coefficient of dy^dz
  double q = 0.0;  // coefficient of dz^dx
  double r = 0.0;  // coefficient of dx^dy

  double norm() const { return std::sqrt(p * p + q * q + r * r); }

  friend bool operator==(const TwoForm&, const TwoForm&) = default;

  TwoForm& operator+=(const TwoForm& o) {
    p += o.p;
    q += o.q;
    r += o.r;
    return *this;
  }
};

inline TwoForm operator*(double s, const TwoForm& f) {
  return {s * f.p, s * f.q, s * f.r};
}

// In the (dy^dz, dz^dx, dx^dy) basis the wedge of two 1-forms is the
// ordinary 3D cross product of their coefficient vectors.
constexpr TwoForm wedge(const OneForm& u, const OneForm& v) {
  return {u.b * v.c - u.c * v.b, u.c * v.a - u.a * v.c, u.a * v.b - u.b * v.a};
}

inline OneForm point_form(Point2 p) { return {p.x, p.y, 1.0}; }

}  // namespace tenseg
