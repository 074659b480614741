#include "tenseg/force_lines.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>

namespace tenseg {

ScalarField jacobian_field(const ScalarField& f, const ScalarField& g) {
  return f.derivative_x() * g.derivative_y() -
         f.derivative_y() * g.derivative_x();
}

namespace {

double horner(const std::vector<double>& c, double x) {
  double r = 0.0;
  for (std::size_t k = c.size(); k > 0; --k) r = r * x + c[k - 1];
  return r;
}

using SiteKey = std::pair<double, double>;

SiteKey site_key(Point2 p) { return {p.x, p.y}; }

void canonicalize(Polyline& pl) {
  if (pl.closed) {
    // rotate the smallest point to the front, then fix the direction
    std::size_t lo = 0;
    for (std::size_t k = 1; k < pl.points.size(); ++k)
      if (lex_less(pl.points[k], pl.points[lo])) lo = k;
    std::rotate(pl.points.begin(), pl.points.begin() + lo, pl.points.end());
    if (pl.points.size() > 2 && lex_less(pl.points.back(), pl.points[1])) {
      std::reverse(pl.points.begin() + 1, pl.points.end());
    }
  } else {
    if (lex_less(pl.points.back(), pl.points.front()))
      std::reverse(pl.points.begin(), pl.points.end());
  }
}

}  // namespace

std::vector<Polyline> trace_zero_set(const ScalarField& h, const BBox& bbox,
                                     int resolution) {
  if (resolution < 8) throw ValidationError("grid resolution must be >= 8");
  if (!bbox.valid()) throw ValidationError("degenerate bounding box");
  if (h.is_zero())
    throw IdenticallyZeroField("field is identically zero on the plane");

  const int n = resolution;
  std::vector<double> xs(n + 1), ys(n + 1);
  for (int i = 0; i <= n; ++i) xs[i] = bbox.xmin + i * bbox.width() / n;
  for (int j = 0; j <= n; ++j) ys[j] = bbox.ymin + j * bbox.height() / n;

  std::vector<double> val(static_cast<std::size_t>(n + 1) * (n + 1));
  std::vector<double> xcoef;
  for (int j = 0; j <= n; ++j) {
    h.collapse_y(ys[j], xcoef);
    for (int i = 0; i <= n; ++i)
      val[static_cast<std::size_t>(j) * (n + 1) + i] = horner(xcoef, xs[i]);
  }
  auto v = [&](int i, int j) {
    return val[static_cast<std::size_t>(j) * (n + 1) + i];
  };
  auto inside = [](double x) { return x > 0.0; };

  // Crossing points are computed once per grid edge so adjacent cells agree
  // bit for bit; the + 0.0 folds any -0.0 into +0.0.
  auto lerp_zero = [](double a, double b, double v0, double v1) {
    const double t = v0 / (v0 - v1);
    return a + t * (b - a) + 0.0;
  };
  constexpr double kNone = std::numeric_limits<double>::quiet_NaN();
  std::vector<Point2> hcross(static_cast<std::size_t>(n) * (n + 1),
                             {kNone, kNone});
  std::vector<Point2> vcross(static_cast<std::size_t>(n) * (n + 1),
                             {kNone, kNone});
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i < n; ++i)
      if (inside(v(i, j)) != inside(v(i + 1, j)))
        hcross[static_cast<std::size_t>(j) * n + i] = {
            lerp_zero(xs[i], xs[i + 1], v(i, j), v(i + 1, j)), ys[j]};
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= n; ++i)
      if (inside(v(i, j)) != inside(v(i, j + 1)))
        vcross[static_cast<std::size_t>(j) * (n + 1) + i] = {
            xs[i], lerp_zero(ys[j], ys[j + 1], v(i, j), v(i, j + 1))};

  std::vector<std::array<Point2, 2>> segments;
  auto emit = [&](Point2 a, Point2 b) {
    if (!(a == b)) segments.push_back({a, b});
  };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int mask = (inside(v(i, j)) ? 1 : 0) |
                       (inside(v(i + 1, j)) ? 2 : 0) |
                       (inside(v(i + 1, j + 1)) ? 4 : 0) |
                       (inside(v(i, j + 1)) ? 8 : 0);
      if (mask == 0 || mask == 15) continue;
      const Point2 B = hcross[static_cast<std::size_t>(j) * n + i];
      const Point2 T = hcross[static_cast<std::size_t>(j + 1) * n + i];
      const Point2 L = vcross[static_cast<std::size_t>(j) * (n + 1) + i];
      const Point2 R = vcross[static_cast<std::size_t>(j) * (n + 1) + i + 1];
      switch (mask) {
        case 1: emit(L, B); break;
        case 2: emit(B, R); break;
        case 3: emit(L, R); break;
        case 4: emit(R, T); break;
        case 6: emit(B, T); break;
        case 7: emit(T, L); break;
        case 8: emit(T, L); break;
        case 9: emit(B, T); break;
        case 11: emit(R, T); break;
        case 12: emit(L, R); break;
        case 13: emit(B, R); break;
        case 14: emit(L, B); break;
        case 5:
        case 10: {
          // ambiguous saddle: the sign of h at the cell center decides
          // which pair of corners the zero set separates
          const Point2 center{0.5 * (xs[i] + xs[i + 1]),
                              0.5 * (ys[j] + ys[j + 1])};
          const bool cin = inside(h.evaluate(center));
          if (mask == 5) {
            if (cin) {
              emit(B, R);
              emit(T, L);
            } else {
              emit(L, B);
              emit(R, T);
            }
          } else {
            if (cin) {
              emit(L, B);
              emit(R, T);
            } else {
              emit(B, R);
              emit(T, L);
            }
          }
          break;
        }
        default: break;
      }
    }
  }

  // Chain segments into maximal polylines.  Sites are keyed by exact
  // coordinates, so crossings that land on the same grid node merge; sites
  // of degree != 2 (loose ends and junctions) terminate chains.
  std::map<SiteKey, std::vector<int>> incidence;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    incidence[site_key(segments[s][0])].push_back(static_cast<int>(s));
    incidence[site_key(segments[s][1])].push_back(static_cast<int>(s));
  }
  std::vector<char> used(segments.size(), 0);
  std::vector<Polyline> out;

  auto other_end = [&](int s, Point2 from) {
    return segments[s][0] == from ? segments[s][1] : segments[s][0];
  };
  auto walk_open = [&](Point2 start, int seg) {
    Polyline pl;
    pl.points.push_back(start);
    Point2 cur = start;
    int s = seg;
    while (true) {
      used[s] = 1;
      cur = other_end(s, cur);
      pl.points.push_back(cur);
      const auto& inc = incidence[site_key(cur)];
      if (inc.size() != 2) break;
      const int next = inc[0] == s ? inc[1] : inc[0];
      if (used[next]) break;
      s = next;
    }
    canonicalize(pl);
    out.push_back(std::move(pl));
  };

  for (const auto& [pt, inc] : incidence) {
    if (inc.size() == 2) continue;
    for (int s : inc)
      if (!used[s]) walk_open({pt.first, pt.second}, s);
  }
  for (std::size_t s0 = 0; s0 < segments.size(); ++s0) {
    if (used[s0]) continue;
    // remaining segments are in pure cycles
    Polyline pl;
    pl.closed = true;
    Point2 start = segments[s0][0];
    pl.points.push_back(start);
    Point2 cur = start;
    int s = static_cast<int>(s0);
    while (true) {
      used[s] = 1;
      cur = other_end(s, cur);
      if (cur == start) break;
      pl.points.push_back(cur);
      const auto& inc = incidence[site_key(cur)];
      const int next = inc[0] == s ? inc[1] : inc[0];
      if (used[next]) break;
      s = next;
    }
    if (pl.points.size() >= 2) {
      canonicalize(pl);
      out.push_back(std::move(pl));
    }
  }

  std::sort(out.begin(), out.end(), [](const Polyline& a, const Polyline& b) {
    if (!(a.points.front() == b.points.front()))
      return lex_less(a.points.front(), b.points.front());
    if (!(a.points[1] == b.points[1])) return lex_less(a.points[1], b.points[1]);
    return a.points.size() < b.points.size();
  });
  return out;
}

namespace {

struct Candidate {
  Point2 location;
  std::string vertex_id;
  int index = 0;
};

int nearest_candidate(const std::vector<Candidate>& cands, Point2 p,
                      double tol) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < cands.size(); ++c) {
    const double d = distance(cands[c].location, p);
    if (d <= tol && d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

// Splits an open point run at critical-point passages, snaps and tags the
// resulting pieces.  Pieces that collapse below two distinct points are
// dropped (they are sub-cell fragments inside a snap disk).
void split_and_tag(std::vector<Point2> points,
                   const std::vector<Candidate>& cands, double tol,
                   std::vector<ForceLineComponent>& out) {
  const std::size_t n = points.size();
  if (n < 2) return;
  std::vector<int> assign(n);
  for (std::size_t k = 0; k < n; ++k)
    assign[k] = nearest_candidate(cands, points[k], tol);

  struct Split {
    std::size_t at;
    int cand;
  };
  std::vector<Split> splits;
  std::size_t k = 0;
  while (k < n) {
    if (assign[k] < 0) {
      ++k;
      continue;
    }
    const int c = assign[k];
    const std::size_t a = k;
    while (k < n && assign[k] == c) ++k;
    const std::size_t b = k - 1;
    if (a == 0 || b == n - 1) continue;  // endpoint runs are snapped, not split
    std::size_t at = a;
    for (std::size_t t = a + 1; t <= b; ++t)
      if (distance(points[t], cands[c].location) <
          distance(points[at], cands[c].location))
        at = t;
    splits.push_back({at, c});
  }

  std::vector<std::pair<std::size_t, std::size_t>> pieces;
  std::size_t begin = 0;
  for (const Split& s : splits) {
    points[s.at] = cands[s.cand].location;
    pieces.emplace_back(begin, s.at);
    begin = s.at;
  }
  pieces.emplace_back(begin, n - 1);

  for (const auto& [a, b] : pieces) {
    std::vector<Point2> sub(points.begin() + static_cast<long>(a),
                            points.begin() + static_cast<long>(b) + 1);
    ForceLineComponent comp;
    const int cs = nearest_candidate(cands, sub.front(), tol);
    if (cs >= 0) {
      sub.front() = cands[cs].location;
      comp.start = {TagKind::kCriticalPoint, cands[cs].vertex_id,
                    cands[cs].index};
    }
    const int ce = nearest_candidate(cands, sub.back(), tol);
    if (ce >= 0) {
      sub.back() = cands[ce].location;
      comp.end = {TagKind::kCriticalPoint, cands[ce].vertex_id,
                  cands[ce].index};
    }
    sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
    if (sub.size() < 2) continue;
    comp.line.points = std::move(sub);

    // orientation: a critical-point end leads; otherwise lexicographic
    bool flip;
    const bool s_cp = comp.start.kind == TagKind::kCriticalPoint;
    const bool e_cp = comp.end.kind == TagKind::kCriticalPoint;
    if (s_cp != e_cp)
      flip = e_cp;
    else
      flip = lex_less(comp.line.points.back(), comp.line.points.front());
    if (flip) {
      std::reverse(comp.line.points.begin(), comp.line.points.end());
      std::swap(comp.start, comp.end);
    }
    out.push_back(std::move(comp));
  }
}

}  // namespace

ForceLine classify(std::pair<std::string, std::string> edge,
                   std::vector<Polyline> polylines,
                   const std::vector<CriticalPoint>& crit_u,
                   const std::vector<CriticalPoint>& crit_v, double snap_tol) {
  if (snap_tol <= 0.0) throw ValidationError("snap tolerance must be positive");
  std::vector<Candidate> cands;
  for (std::size_t k = 0; k < crit_u.size(); ++k)
    cands.push_back({crit_u[k].location, edge.first, static_cast<int>(k)});
  for (std::size_t k = 0; k < crit_v.size(); ++k)
    cands.push_back({crit_v[k].location, edge.second, static_cast<int>(k)});

  ForceLine result;
  result.edge = std::move(edge);
  for (Polyline& pl : polylines) {
    if (pl.closed) {
      // a loop that passes a critical point is cut there and treated as an
      // open run from the point back to itself
      int best = -1;
      std::size_t best_k = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < pl.points.size(); ++k) {
        const int c = nearest_candidate(cands, pl.points[k], snap_tol);
        if (c < 0) continue;
        const double d = distance(pl.points[k], cands[c].location);
        if (d < best_d) {
          best_d = d;
          best = c;
          best_k = k;
        }
      }
      if (best < 0) {
        ForceLineComponent comp;
        comp.line = std::move(pl);
        comp.start = {TagKind::kClosed, "", -1};
        comp.end = {TagKind::kClosed, "", -1};
        result.components.push_back(std::move(comp));
        continue;
      }
      std::rotate(pl.points.begin(), pl.points.begin() + static_cast<long>(best_k),
                  pl.points.end());
      pl.points.push_back(pl.points.front());
      split_and_tag(std::move(pl.points), cands, snap_tol, result.components);
    } else {
      split_and_tag(std::move(pl.points), cands, snap_tol, result.components);
    }
  }

  std::sort(result.components.begin(), result.components.end(),
            [](const ForceLineComponent& a, const ForceLineComponent& b) {
              if (!(a.line.points.front() == b.line.points.front()))
                return lex_less(a.line.points.front(), b.line.points.front());
              if (!(a.line.points.back() == b.line.points.back()))
                return lex_less(a.line.points.back(), b.line.points.back());
              return a.line.points.size() < b.line.points.size();
            });
  return result;
}

std::vector<EdgeTrace> trace_scene(const Scene& scene, int resolution) {
  const auto crits = scene_critical_points(scene);
  const double snap = default_snap_tol(scene.bbox, resolution);
  std::vector<EdgeTrace> out;
  out.reserve(scene.graph.edges.size());
  for (std::size_t e = 0; e < scene.graph.edges.size(); ++e) {
    const auto& [u, v] = scene.graph.edges[e];
    EdgeTrace trace;
    trace.line.edge = {scene.graph.vertex_ids[u], scene.graph.vertex_ids[v]};
    const ScalarField h = jacobian_field(scene.fields[u], scene.fields[v]);
    if (h.is_zero()) {
      trace.degenerate = true;
    } else {
      trace.line = classify(trace.line.edge,
                            trace_zero_set(h, scene.bbox, resolution),
                            crits[u], crits[v], snap);
    }
    out.push_back(std::move(trace));
  }
  return out;
}

}  // namespace tenseg
