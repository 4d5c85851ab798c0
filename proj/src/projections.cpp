#include "tpmhdg/projections.hpp"

#include <cmath>
#include <sstream>

#include "tpmhdg/error.hpp"
#include "tpmhdg/quadrature.hpp"

namespace tpmhdg {

Eigen::VectorXd project_facet_l2(const ScalarField& f, const Vec2& a, const Vec2& b, int k, int exactness) {
  const FacetBasis basis(a, b, k);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(basis.size());
  for (const auto& qp : map_to_segment(segment_rule(exactness), a, b)) c.noalias() += qp.w * f(qp.x) * basis.values(qp.x);
  return c;
}

namespace {

ProjectedPair project_pair(const Triangulation& mesh, int K, int k, const VectorField& v, const ScalarField& s,
                           const TauField& tau, const VectorField& beta, double sign) {
  const auto verts = mesh.element_vertices(K);
  const ElementBasis basis(verts, k);
  const int n = basis.size();
  const int nt = dim_pk(k - 1);
  const int nf = k + 1;
  const int exactness = 12;

  // Unknown layout: [vx (n), vy (n), s (n)].
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(3 * n, 3 * n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(3 * n);

  for (const auto& qp : map_to_triangle(triangle_rule(exactness), verts)) {
    const Eigen::VectorXd phi = basis.values(qp.x);
    const Eigen::VectorXd test = phi.head(nt);
    const Vec2 b = sign * beta(qp.x);
    const Vec2 vx = v(qp.x);
    const double sx = s(qp.x);
    // Vector equations, component 0 rows [0, nt), component 1 rows [nt, 2 nt).
    A.block(0, 0, nt, n).noalias() += qp.w * test * phi.transpose();
    A.block(0, 2 * n, nt, n).noalias() += qp.w * b.x() * test * phi.transpose();
    A.block(nt, n, nt, n).noalias() += qp.w * test * phi.transpose();
    A.block(nt, 2 * n, nt, n).noalias() += qp.w * b.y() * test * phi.transpose();
    rhs.segment(0, nt) += qp.w * (vx.x() + b.x() * sx) * test;
    rhs.segment(nt, nt) += qp.w * (vx.y() + b.y() * sx) * test;
    // Scalar equation rows [2 nt, 3 nt).
    A.block(2 * nt, 2 * n, nt, n).noalias() += qp.w * test * phi.transpose();
    rhs.segment(2 * nt, nt) += qp.w * sx * test;
  }

  const QuadRule frule = segment_rule(exactness);
  for (int i = 0; i < 3; ++i) {
    const Vec2 a = verts[static_cast<std::size_t>(i)];
    const Vec2 b = verts[static_cast<std::size_t>((i + 1) % 3)];
    const Vec2 normal = mesh.outward_normal(K, i);
    const FacetBasis fb(a, b, k);
    const Eigen::VectorXd pm = project_facet_l2(s, a, b, k, exactness);
    const int row = 3 * nt + i * nf;
    for (const auto& qp : map_to_segment(frule, a, b)) {
      const Eigen::VectorXd mu = fb.values(qp.x);
      const Eigen::VectorXd phi = basis.values(qp.x);
      const double bn = sign * beta(qp.x).dot(normal);
      const double t = tau(qp.x, normal);
      const double sx = s(qp.x);
      A.block(row, 0, nf, n).noalias() += qp.w * normal.x() * mu * phi.transpose();
      A.block(row, n, nf, n).noalias() += qp.w * normal.y() * mu * phi.transpose();
      A.block(row, 2 * n, nf, n).noalias() += qp.w * t * mu * phi.transpose();
      // beta.n P_M s is data: move the difference to the right-hand side.
      const double pms = fb.values(qp.x).dot(pm);
      rhs.segment(row, nf) += qp.w * (v(qp.x).dot(normal) + bn * (sx - pms) + t * sx) * mu;
    }
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) {
    std::ostringstream msg;
    msg << "HDG projection system on element " << K << " is singular (check tau - beta.n/2 > 0)";
    throw SingularLocalSystem(msg.str());
  }
  const Eigen::VectorXd x = lu.solve(rhs);
  return ProjectedPair{K, x.segment(0, n), x.segment(n, n), x.segment(2 * n, n)};
}

}  // namespace

ProjectedPair project_hdg_state(const Triangulation& mesh, int K, int k, const VectorField& q, const ScalarField& y,
                                const TauField& tau1, const VectorField& beta) {
  return project_pair(mesh, K, k, q, y, tau1, beta, 1.0);
}

ProjectedPair project_hdg_adjoint(const Triangulation& mesh, int K, int k, const VectorField& p, const ScalarField& z,
                                  const TauField& tau2, const VectorField& beta) {
  return project_pair(mesh, K, k, p, z, tau2, beta, -1.0);
}

ProjectionResiduals projection_residuals(const Triangulation& mesh, int K, int k, const ProjectedPair& pair,
                                         const VectorField& v, const ScalarField& s, const TauField& tau,
                                         const VectorField& beta, double sign) {
  const auto verts = mesh.element_vertices(K);
  const ElementBasis basis(verts, k);
  const int nt = dim_pk(k - 1);
  const int exactness = 12;
  ProjectionResiduals res;

  Eigen::VectorXd rv = Eigen::VectorXd::Zero(2 * nt);
  Eigen::VectorXd rs = Eigen::VectorXd::Zero(nt);
  for (const auto& qp : map_to_triangle(triangle_rule(exactness), verts)) {
    const Eigen::VectorXd phi = basis.values(qp.x);
    const Vec2 pv(phi.dot(pair.vx), phi.dot(pair.vy));
    const double ps = phi.dot(pair.scalar);
    const Vec2 b = sign * beta(qp.x);
    const Vec2 diff = (pv + b * ps) - (v(qp.x) + b * s(qp.x));
    rv.head(nt) += qp.w * diff.x() * phi.head(nt);
    rv.tail(nt) += qp.w * diff.y() * phi.head(nt);
    rs += qp.w * (ps - s(qp.x)) * phi.head(nt);
  }
  if (nt > 0) {
    res.vector_eq = rv.cwiseAbs().maxCoeff();
    res.scalar_eq = rs.cwiseAbs().maxCoeff();
  }

  for (int i = 0; i < 3; ++i) {
    const Vec2 a = verts[static_cast<std::size_t>(i)];
    const Vec2 b = verts[static_cast<std::size_t>((i + 1) % 3)];
    const Vec2 normal = mesh.outward_normal(K, i);
    const FacetBasis fb(a, b, k);
    const Eigen::VectorXd pm = project_facet_l2(s, a, b, k, exactness);
    Eigen::VectorXd rf = Eigen::VectorXd::Zero(k + 1);
    for (const auto& qp : map_to_segment(segment_rule(exactness), a, b)) {
      const Eigen::VectorXd phi = basis.values(qp.x);
      const Eigen::VectorXd mu = fb.values(qp.x);
      const Vec2 pv(phi.dot(pair.vx), phi.dot(pair.vy));
      const double ps = phi.dot(pair.scalar);
      const double bn = sign * beta(qp.x).dot(normal);
      const double t = tau(qp.x, normal);
      const double lhs = pv.dot(normal) + bn * mu.dot(pm) + t * ps;
      const double rhs = v(qp.x).dot(normal) + bn * s(qp.x) + t * s(qp.x);
      rf += qp.w * (lhs - rhs) * mu;
    }
    res.facet_eq = std::max(res.facet_eq, rf.cwiseAbs().maxCoeff());
  }
  return res;
}

}  // namespace tpmhdg
