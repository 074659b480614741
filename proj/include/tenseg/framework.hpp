#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "tenseg/errors.hpp"
#include "tenseg/geometry.hpp"

namespace tenseg {

inline constexpr double kDefaultRankTol = 1e-10;

/// Simple undirected graph over string vertex ids.  Edges are stored as
/// index pairs into vertex_ids, in input order.
struct Graph {
  std::vector<std::string> vertex_ids;
  std::vector<std::pair<int, int>> edges;

  /// Validates: unique nonempty ids, no loops, no duplicate edges,
  /// endpoints present.
  static Graph create(std::vector<std::string> ids,
                      const std::vector<std::pair<std::string, std::string>>&
                          edge_ids);

  int vertex_index(const std::string& id) const;  // -1 when absent
  std::string edge_label(int e) const;            // "u-v"
  std::vector<int> incident_edges(int vertex) const;
};

/// A graph drawn in the plane, one point per vertex.
struct ClassicalFramework {
  Graph graph;
  std::vector<Point2> positions;  // aligned with graph.vertex_ids

  /// Throws ValidationError unless every vertex is placed and every edge
  /// has distinct endpoint positions.
  void validate() const;
  BBox bounding_box() const;
};

/// Edge tensions w_{ij} = w_{ji}, in graph edge order.
struct StressVector {
  std::vector<double> values;
};

/// Orthonormal basis of a self-stress space.  Each vector's first nonzero
/// coordinate (in edge order) is positive, so output is reproducible.
struct StressBasis {
  std::vector<StressVector> vectors;
  int dimension() const { return static_cast<int>(vectors.size()); }
};

/// Orthonormal kernel of m: columns of V for singular values at or below
/// rank_tol * sigma_max, sign-normalized.
Eigen::MatrixXd kernel_columns(const Eigen::MatrixXd& m, double rank_tol);

StressBasis to_stress_basis(const Eigen::MatrixXd& kernel);

/// The 2|V| x |E| map from edge stresses to per-vertex force sums.  The
/// column of edge {i, j} carries the displacement vector P_j - P_i in row
/// block i and its negation in row block j.
Eigen::MatrixXd equilibrium_matrix(const ClassicalFramework& fw);

StressBasis self_stress_basis(const ClassicalFramework& fw,
                              double rank_tol = kDefaultRankTol);

/// Max over vertices of the 2-form norm of sum_j w_ij dP_j ^ dP_i.
/// Zero exactly on self-stresses; the equilibrium condition and this form
/// condition are the same linear system in different clothes.
double form_residual(const ClassicalFramework& fw, const StressVector& w);

/// Applies a projective map (as a 3x3 matrix on homogeneous coordinates)
/// to every vertex.  Throws PointAtInfinity when an image is too close to
/// the line at infinity, ValidationError for a singular map.
ClassicalFramework projective_transform(const ClassicalFramework& fw,
                                        const Eigen::Matrix3d& map);

}  // namespace tenseg
