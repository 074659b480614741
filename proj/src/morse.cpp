#include "tenseg/morse.hpp"

#include <algorithm>
#include <cmath>

namespace tenseg {

void Scene::validate() const {
  if (graph.vertex_ids.empty()) throw ValidationError("scene has no vertices");
  if (fields.size() != graph.vertex_ids.size())
    throw ValidationError("scene fields do not match vertex list");
  if (!bbox.valid()) throw ValidationError("scene bbox is not ordered");
  for (const auto& [vertex, points] : pinned) {
    if (vertex < 0 || vertex >= static_cast<int>(fields.size()))
      throw ValidationError("pinned critical points reference a missing vertex");
    if (points.empty())
      throw ValidationError("empty pinned critical point list");
  }
}

std::vector<std::vector<CriticalPoint>> scene_critical_points(
    const Scene& scene) {
  scene.validate();
  std::vector<std::vector<CriticalPoint>> out(scene.fields.size());
  for (std::size_t i = 0; i < scene.fields.size(); ++i) {
    const std::string& id = scene.graph.vertex_ids[i];
    const auto pin = scene.pinned.find(static_cast<int>(i));
    if (pin != scene.pinned.end()) {
      out[i] = pin->second;
      continue;
    }
    try {
      out[i] = find_critical_points(scene.fields[i], scene.bbox, scene.solver);
    } catch (const ZeroGradientField& e) {
      throw ZeroGradientField("vertex '" + id + "': " + e.what());
    } catch (const NonMorseField& e) {
      throw NonMorseField("vertex '" + id + "': " + e.what());
    }
    if (out[i].empty())
      throw NoCriticalPoints("vertex '" + id +
                             "' has no critical point inside the bbox");
  }
  return out;
}

MorseEquilibriumSystem assemble(const Scene& scene, AssemblyMode mode) {
  MorseEquilibriumSystem sys;
  sys.critical_sets = scene_critical_points(scene);

  std::vector<std::pair<ScalarField, ScalarField>> grads;
  grads.reserve(scene.fields.size());
  for (const ScalarField& f : scene.fields) grads.push_back(gradient(f));

  const auto ne = static_cast<Eigen::Index>(scene.graph.edges.size());
  if (mode == AssemblyMode::kSignedSum) {
    const auto nv = static_cast<Eigen::Index>(scene.fields.size());
    sys.matrix = Eigen::MatrixXd::Zero(2 * nv, ne);
    for (Eigen::Index e = 0; e < ne; ++e) {
      const auto& [u, v] = scene.graph.edges[e];
      for (const auto& [i, j] : {std::pair{u, v}, std::pair{v, u}}) {
        double sx = 0.0, sy = 0.0;
        for (const CriticalPoint& cp : sys.critical_sets[i]) {
          sx += cp.sign * grads[j].first.evaluate(cp.location);
          sy += cp.sign * grads[j].second.evaluate(cp.location);
        }
        sys.matrix(2 * i, e) = sx;
        sys.matrix(2 * i + 1, e) = sy;
      }
    }
  } else {
    Eigen::Index rows = 0;
    std::vector<Eigen::Index> block_start(scene.fields.size());
    for (std::size_t i = 0; i < sys.critical_sets.size(); ++i) {
      block_start[i] = rows;
      rows += 2 * static_cast<Eigen::Index>(sys.critical_sets[i].size());
    }
    sys.matrix = Eigen::MatrixXd::Zero(rows, ne);
    for (Eigen::Index e = 0; e < ne; ++e) {
      const auto& [u, v] = scene.graph.edges[e];
      for (const auto& [i, j] : {std::pair{u, v}, std::pair{v, u}}) {
        Eigen::Index row = block_start[i];
        for (const CriticalPoint& cp : sys.critical_sets[i]) {
          sys.matrix(row, e) = grads[j].first.evaluate(cp.location);
          sys.matrix(row + 1, e) = grads[j].second.evaluate(cp.location);
          row += 2;
        }
      }
    }
  }
  return sys;
}

StressBasis self_stress_basis(const Scene& scene, double rank_tol,
                              AssemblyMode mode) {
  return to_stress_basis(kernel_columns(assemble(scene, mode).matrix, rank_tol));
}

double verify(const Scene& scene, const StressVector& w) {
  const MorseEquilibriumSystem sys = assemble(scene);
  if (w.values.size() != scene.graph.edges.size())
    throw ValidationError("stress vector is not keyed by the edge set");
  const Eigen::Map<const Eigen::VectorXd> wv(w.values.data(),
                                             static_cast<Eigen::Index>(w.values.size()));
  const Eigen::VectorXd force = sys.matrix * wv;
  double worst = 0.0;
  for (Eigen::Index i = 0; 2 * i + 1 < force.size(); ++i)
    worst = std::max(worst, std::hypot(force(2 * i), force(2 * i + 1)));
  return worst;
}

Scene paraboloid_lift(const ClassicalFramework& fw) {
  fw.validate();
  Scene scene;
  scene.graph = fw.graph;
  scene.fields.reserve(fw.positions.size());
  for (const Point2& p : fw.positions)
    scene.fields.push_back(ScalarField::paraboloid(p));
  BBox box = fw.bounding_box();
  double pad_x = 0.25 * box.width();
  double pad_y = 0.25 * box.height();
  if (pad_x == 0.0) pad_x = 1.0;
  if (pad_y == 0.0) pad_y = 1.0;
  scene.bbox = box.inflated(pad_x, pad_y);
  return scene;
}

}  // namespace tenseg
