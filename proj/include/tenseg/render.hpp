#pragma once

#include <string>

#include "tenseg/morse.hpp"

namespace tenseg {

struct RenderOptions {
  int grid = 512;
  int levels = 8;
  bool stress_labels = false;
  double size = 760.0;    // drawing area, px
  double margin = 40.0;   // border, px
};

/// SVG figure: per-vertex level sets in gray, compact force-line components
/// in black, non-compact ones dashed light gray, critical points as labeled
/// dots, optional edge stresses (first self-stress basis vector, scaled so
/// the largest entry is +-1) at force-line midpoints.
std::string render_svg(const Scene& scene, const RenderOptions& opts);

}  // namespace tenseg
