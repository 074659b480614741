#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "tenseg/framework.hpp"
#include "tenseg/scalar_field.hpp"

namespace tenseg {

/// A graph whose vertices are scalar fields instead of points, together
/// with the viewport and solver settings the critical-point search uses.
struct Scene {
  Graph graph;
  std::vector<ScalarField> fields;  // aligned with graph.vertex_ids
  BBox bbox;
  SolverOptions solver;
  /// Pre-specified critical points per vertex index; bypasses the solver
  /// for that vertex (reproducibility for published inputs).
  std::map<int, std::vector<CriticalPoint>> pinned;

  void validate() const;
};

/// Critical points per vertex: pinned when available, solved otherwise.
/// Throws NoCriticalPoints / NonMorseField / ZeroGradientField with the
/// offending vertex id in the message.
std::vector<std::vector<CriticalPoint>> scene_critical_points(
    const Scene& scene);

enum class AssemblyMode {
  /// One row block per vertex holding the index-signed sum over its
  /// critical points (the equilibrium condition proper).
  kSignedSum,
  /// One row block per (vertex, critical point): every critical point must
  /// balance on its own.  Strictly stronger; the kernel is a subspace of
  /// the signed-sum kernel.
  kPerCriticalPoint,
};

struct MorseEquilibriumSystem {
  /// kSignedSum: 2|V| x |E|, row blocks in vertex order.
  /// kPerCriticalPoint: 2 * (total critical points) x |E|, blocks in
  /// (vertex, critical point) order.
  Eigen::MatrixXd matrix;
  std::vector<std::vector<CriticalPoint>> critical_sets;  // per vertex
};

/// Builds the equilibrium system.  The entry of row block i, column {i, j}
/// is sum_k (-1)^{ind(P_ik)} grad f_j(P_ik): at a critical point of f_i the
/// wedge dF_j ^ dF_i degenerates to dz ^ df_j, so only the gradient of the
/// far endpoint survives.
MorseEquilibriumSystem assemble(const Scene& scene,
                                AssemblyMode mode = AssemblyMode::kSignedSum);

StressBasis self_stress_basis(const Scene& scene,
                              double rank_tol = kDefaultRankTol,
                              AssemblyMode mode = AssemblyMode::kSignedSum);

/// Max over vertices of |sum_k (-1)^{ind} sum_j w_ij grad f_j(P_ik)|.
double verify(const Scene& scene, const StressVector& w);

/// Replaces each point (x_i, y_i) by the field (x-x_i)^2 + (y-y_i)^2 on the
/// framework's bounding box inflated by half its size.  The resulting scene
/// has the classical self-stress space of the framework.
Scene paraboloid_lift(const ClassicalFramework& fw);

}  // namespace tenseg
