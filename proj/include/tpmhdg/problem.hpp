#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tpmhdg/common.hpp"
#include "tpmhdg/mesh.hpp"

namespace tpmhdg {

/// Data of the optimality system. gamma may be +infinity, which switches the
/// state/adjoint coupling in the state equation off (alpha = 0).
struct ProblemData {
  ScalarField f;
  ScalarField y_d;
  ScalarField g;
  ScalarField g_adj;
  VectorField beta;
  double gamma = 1.0;

  double alpha() const { return 1.0 / gamma; }
};

/// Largest |div beta| over `samples` random points of `box`, by central differences.
double max_divergence(const VectorField& beta, const BBox& box, int samples = 100, std::uint64_t seed = 7,
                      double step = 1e-5);

/// tau1 per facet and tau2 = tau1 - beta.n at the facet quadrature nodes of each side.
///
/// Nodes are the segment rule of the given exactness mapped from facet.v[0] to
/// facet.v[1]; side s uses the outward normal of facet.elem[s].
struct StabilizationPair {
  int exactness = 0;
  std::vector<double> tau1;
  std::vector<std::array<std::vector<double>, 2>> tau2;
  /// min over facets, sides and nodes of tau1 - beta.n / 2.
  double margin = 0.0;
  int worst_facet = -1;

  double tau2_at(int facet, int side, int node) const { return tau2[facet][side][node]; }
};

/// Throws StabilizationViolation naming the first facet with min(tau1 - beta.n / 2) <= 0.
StabilizationPair select_tau(const Triangulation& mesh, const VectorField& beta, double tau1_value, int exactness);

/// Largest |tau2 + beta.n - tau1| over all stored nodes.
double tau_consistency_error(const Triangulation& mesh, const VectorField& beta, const StabilizationPair& tau);

}  // namespace tpmhdg
