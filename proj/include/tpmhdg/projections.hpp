#pragma once

#include <functional>

#include "tpmhdg/basis.hpp"
#include "tpmhdg/mesh.hpp"

namespace tpmhdg {

/// Stabilization as a function of the facet point and the element's outward normal.
using TauField = std::function<double(const Vec2& x, const Vec2& n)>;

inline TauField constant_tau(double tau) {
  return [tau](const Vec2&, const Vec2&) { return tau; };
}

/// Coefficients of the L2 projection of f onto P_k(e) in the orthonormal facet basis from a to b.
Eigen::VectorXd project_facet_l2(const ScalarField& f, const Vec2& a, const Vec2& b, int k, int exactness);

struct ProjectedPair {
  int element = -1;
  Eigen::VectorXd vx;      ///< vector field, x component
  Eigen::VectorXd vy;      ///< vector field, y component
  Eigen::VectorXd scalar;  ///< scalar field
};

/// HDG projection (Pi_V q, Pi_W y) on element K:
///   (Pi_V q + beta Pi_W y, s)_K = (q + beta y, s)_K        s in [P_{k-1}]^2
///   (Pi_W y, t)_K = (y, t)_K                               t in P_{k-1}
///   <Pi_V q.n + beta.n P_M y + tau Pi_W y, mu>_e = <q.n + beta.n y + tau y, mu>_e
/// Throws SingularLocalSystem if the local system cannot be solved.
ProjectedPair project_hdg_state(const Triangulation& mesh, int K, int k, const VectorField& q, const ScalarField& y,
                                const TauField& tau1, const VectorField& beta);

/// Dual projection: the same system with beta replaced by -beta and tau1 by tau2.
ProjectedPair project_hdg_adjoint(const Triangulation& mesh, int K, int k, const VectorField& p, const ScalarField& z,
                                  const TauField& tau2, const VectorField& beta);

/// Largest absolute residual of each defining equation group (volume vector,
/// volume scalar, facet), evaluated directly from the definitions.
struct ProjectionResiduals {
  double vector_eq = 0.0;
  double scalar_eq = 0.0;
  double facet_eq = 0.0;

  double max() const { return std::max({vector_eq, scalar_eq, facet_eq}); }
};

/// sign = +1 checks the state projection, -1 the adjoint one.
ProjectionResiduals projection_residuals(const Triangulation& mesh, int K, int k, const ProjectedPair& pair,
                                         const VectorField& v, const ScalarField& s, const TauField& tau,
                                         const VectorField& beta, double sign);

}  // namespace tpmhdg
