#include "tenseg/framework.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <set>

#include "tenseg/forms.hpp"

namespace tenseg {

Graph Graph::create(
    std::vector<std::string> ids,
    const std::vector<std::pair<std::string, std::string>>& edge_ids) {
  Graph g;
  g.vertex_ids = std::move(ids);
  std::set<std::string> seen;
  for (const std::string& id : g.vertex_ids) {
    if (id.empty()) throw ValidationError("empty vertex id");
    if (!seen.insert(id).second)
      throw ValidationError("duplicate vertex id '" + id + "'");
  }
  std::set<std::pair<int, int>> edge_set;
  for (const auto& [u, v] : edge_ids) {
    const int ui = g.vertex_index(u);
    const int vi = g.vertex_index(v);
    if (ui < 0) throw ValidationError("edge references unknown vertex '" + u + "'");
    if (vi < 0) throw ValidationError("edge references unknown vertex '" + v + "'");
    if (ui == vi) throw ValidationError("loop edge at vertex '" + u + "'");
    if (!edge_set.insert({std::min(ui, vi), std::max(ui, vi)}).second)
      throw ValidationError("duplicate edge " + u + "-" + v);
    g.edges.emplace_back(ui, vi);
  }
  return g;
}

int Graph::vertex_index(const std::string& id) const {
  for (std::size_t k = 0; k < vertex_ids.size(); ++k)
    if (vertex_ids[k] == id) return static_cast<int>(k);
  return -1;
}

std::string Graph::edge_label(int e) const {
  return vertex_ids[edges[e].first] + "-" + vertex_ids[edges[e].second];
}

std::vector<int> Graph::incident_edges(int vertex) const {
  std::vector<int> out;
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (edges[e].first == vertex || edges[e].second == vertex)
      out.push_back(static_cast<int>(e));
  return out;
}

void ClassicalFramework::validate() const {
  if (graph.vertex_ids.empty()) throw ValidationError("framework has no vertices");
  if (positions.size() != graph.vertex_ids.size())
    throw ValidationError("framework positions do not match vertex list");
  for (const Point2& p : positions)
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw ValidationError("non-finite vertex position");
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    const auto& [u, v] = graph.edges[e];
    if (positions[u] == positions[v])
      throw ValidationError("edge " + graph.edge_label(static_cast<int>(e)) +
                            " has coincident endpoints");
  }
}

BBox ClassicalFramework::bounding_box() const {
  BBox b{positions[0].x, positions[0].y, positions[0].x, positions[0].y};
  for (const Point2& p : positions) {
    b.xmin = std::min(b.xmin, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.xmax = std::max(b.xmax, p.x);
    b.ymax = std::max(b.ymax, p.y);
  }
  return b;
}

Eigen::MatrixXd kernel_columns(const Eigen::MatrixXd& m, double rank_tol) {
  const auto cols = m.cols();
  if (cols == 0) return Eigen::MatrixXd(0, 0);
  Eigen::MatrixXd kernel;
  if (m.rows() == 0) {
    kernel = Eigen::MatrixXd::Identity(cols, cols);
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
      if (sv(k) > rank_tol * smax && sv(k) > 0.0) ++rank;
    kernel = svd.matrixV().rightCols(cols - rank);
  }
  // fix signs: first coordinate above noise is positive
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    for (Eigen::Index r = 0; r < kernel.rows(); ++r) {
      if (std::abs(kernel(r, c)) > 1e-9) {
        if (kernel(r, c) < 0.0) kernel.col(c) = -kernel.col(c);
        break;
      }
    }
  }
  return kernel;
}

StressBasis to_stress_basis(const Eigen::MatrixXd& kernel) {
  StressBasis basis;
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    StressVector w;
    w.values.assign(kernel.col(c).data(), kernel.col(c).data() + kernel.rows());
    basis.vectors.push_back(std::move(w));
  }
  return basis;
}

Eigen::MatrixXd equilibrium_matrix(const ClassicalFramework& fw) {
  fw.validate();
  const auto nv = static_cast<Eigen::Index>(fw.graph.vertex_ids.size());
  const auto ne = static_cast<Eigen::Index>(fw.graph.edges.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * nv, ne);
  for (Eigen::Index e = 0; e < ne; ++e) {
    const auto& [u, v] = fw.graph.edges[e];
    const Point2 d{fw.positions[v].x - fw.positions[u].x,
                   fw.positions[v].y - fw.positions[u].y};
    m(2 * u, e) = d.x;
    m(2 * u + 1, e) = d.y;
    m(2 * v, e) = -d.x;
    m(2 * v + 1, e) = -d.y;
  }
  return m;
}

StressBasis self_stress_basis(const ClassicalFramework& fw, double rank_tol) {
  return to_stress_basis(kernel_columns(equilibrium_matrix(fw), rank_tol));
}

double form_residual(const ClassicalFramework& fw, const StressVector& w) {
  fw.validate();
  if (w.values.size() != fw.graph.edges.size())
    throw ValidationError("stress vector is not keyed by the edge set");
  double worst = 0.0;
  for (std::size_t i = 0; i < fw.graph.vertex_ids.size(); ++i) {
    TwoForm sum;
    for (std::size_t e = 0; e < fw.graph.edges.size(); ++e) {
      const auto& [u, v] = fw.graph.edges[e];
      if (static_cast<std::size_t>(u) == i)
        sum += w.values[e] *
               wedge(point_form(fw.positions[v]), point_form(fw.positions[u]));
      else if (static_cast<std::size_t>(v) == i)
        sum += w.values[e] *
               wedge(point_form(fw.positions[u]), point_form(fw.positions[v]));
    }
    worst = std::max(worst, sum.norm());
  }
  return worst;
}

ClassicalFramework projective_transform(const ClassicalFramework& fw,
                                        const Eigen::Matrix3d& map) {
  fw.validate();
  if (std::abs(map.determinant()) < 1e-12)
    throw ValidationError("projective map is singular");
  ClassicalFramework out = fw;
  for (std::size_t k = 0; k < fw.positions.size(); ++k) {
    const Eigen::Vector3d h =
        map * Eigen::Vector3d(fw.positions[k].x, fw.positions[k].y, 1.0);
    if (std::abs(h(2)) < 1e-12)
      throw PointAtInfinity("vertex '" + fw.graph.vertex_ids[k] +
                            "' maps to infinity");
    out.positions[k] = {h(0) / h(2), h(1) / h(2)};
  }
  out.validate();
  return out;
}

}  // namespace tenseg
