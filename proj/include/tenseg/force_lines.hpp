#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tenseg/morse.hpp"
#include "tenseg/scalar_field.hpp"

namespace tenseg {

struct Polyline {
  std::vector<Point2> points;  // >= 2, consecutive points distinct
  bool closed = false;
};

enum class TagKind { kCriticalPoint, kBoundary, kClosed };

struct EndpointTag {
  TagKind kind = TagKind::kBoundary;
  std::string vertex_id;  // kCriticalPoint only
  int index = -1;         // position in that vertex's critical point list
};

struct ForceLineComponent {
  Polyline line;
  EndpointTag start;
  EndpointTag end;

  /// Bounded piece whose ends are both critical points, or a loop.
  bool compact() const {
    return line.closed || (start.kind == TagKind::kCriticalPoint &&
                           end.kind == TagKind::kCriticalPoint);
  }
};

/// The traced zero set of df_u ^ df_v for one edge, cut at critical points
/// and with every endpoint identified.
struct ForceLine {
  std::pair<std::string, std::string> edge;
  std::vector<ForceLineComponent> components;
};

/// The Jacobian determinant df/dx * dg/dy - df/dy * dg/dx as a polynomial;
/// its zero set is where the two gradients are parallel.
ScalarField jacobian_field(const ScalarField& f, const ScalarField& g);

/// Marching-squares extraction of {h = 0} on a resolution x resolution cell
/// grid with linear interpolation along cell edges; segments are chained
/// into maximal polylines, ordered by first point (lexicographic).
/// Saddle cells are disambiguated by the sign of h at the cell center.
std::vector<Polyline> trace_zero_set(const ScalarField& h, const BBox& bbox,
                                     int resolution);

inline double cell_diagonal(const BBox& bbox, int resolution) {
  return std::hypot(bbox.width() / resolution, bbox.height() / resolution);
}

inline double default_snap_tol(const BBox& bbox, int resolution) {
  return 2.0 * cell_diagonal(bbox, resolution);
}

/// Splits polylines where they pass within snap_tol of a critical point of
/// either endpoint field, snaps those ends onto the critical point exactly,
/// and tags every endpoint (critical point / boundary / closed).
ForceLine classify(std::pair<std::string, std::string> edge,
                   std::vector<Polyline> polylines,
                   const std::vector<CriticalPoint>& crit_u,
                   const std::vector<CriticalPoint>& crit_v, double snap_tol);

/// Per-edge force lines for a whole scene.  Edges whose Jacobian field is
/// identically zero (parallel gradients everywhere) are flagged degenerate
/// and carry no components.
struct EdgeTrace {
  ForceLine line;
  bool degenerate = false;
};

std::vector<EdgeTrace> trace_scene(const Scene& scene, int resolution);

}  // namespace tenseg
