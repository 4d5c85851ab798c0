#include "tpmhdg/extrapolation.hpp"

#include <algorithm>
#include <cmath>

#include "tpmhdg/error.hpp"
#include "tpmhdg/quadrature.hpp"

namespace tpmhdg {

double lambda_value(const VectorElementPoly& p, const Vec2& x, const Vec2& m, double l, int seg_exactness) {
  if (l < 1e-14) return 0.0;
  const QuadRule rule = segment_rule(seg_exactness);
  const double px = p(x).dot(m);
  double integral = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double s = l * rule.nodes[i].x();
    integral += rule.weights[i] * l * (px - p(x + s * m).dot(m));
  }
  return integral / l;
}

double lambda_eval(const VectorElementPoly& p, const FacetTransfer& ft, int node) {
  const auto& n = ft.nodes[static_cast<std::size_t>(node)];
  return lambda_value(p, n.x, n.m, n.l, path_exactness(p.basis->degree()));
}

double lambda_weighted_norm(const VectorElementPoly& p, const FacetTransfer& ft) {
  double sum = 0.0;
  for (int i = 0; i < static_cast<int>(ft.nodes.size()); ++i) {
    const auto& n = ft.nodes[static_cast<std::size_t>(i)];
    const double lam = lambda_eval(p, ft, i);
    sum += n.weight * n.l * lam * lam;
  }
  return std::sqrt(sum);
}

namespace {

template <typename F>
double patch_integral(const FacetTransfer& ft, int seg_exactness, F&& integrand) {
  const QuadRule rule = segment_rule(seg_exactness);
  double sum = 0.0;
  for (const auto& n : ft.nodes) {
    if (n.l < 1e-14) continue;
    for (std::size_t i = 0; i < rule.size(); ++i)
      sum += n.weight * n.l * rule.weights[i] * integrand(Vec2(n.x + n.l * rule.nodes[i].x() * n.m));
  }
  return sum;
}

}  // namespace

double triple_norm(const VectorElementPoly& p, const FacetTransfer& ft) {
  return std::sqrt(
      patch_integral(ft, path_exactness(p.basis->degree()), [&](const Vec2& y) { return p(y).squaredNorm(); }));
}

double patch_gradient_norm(const VectorElementPoly& p, const FacetTransfer& ft) {
  return std::sqrt(patch_integral(ft, path_exactness(p.basis->degree()),
                                  [&](const Vec2& y) { return p.jacobian(y).squaredNorm(); }));
}

Eigen::MatrixXd patch_gram(const ElementBasis& basis, const FacetTransfer& ft) {
  const int n = basis.size();
  const QuadRule rule = segment_rule(path_exactness(basis.degree()));
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  for (const auto& node : ft.nodes) {
    if (node.l < 1e-14) continue;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const Eigen::VectorXd v = basis.values(node.x + node.l * rule.nodes[i].x() * node.m);
      gram.noalias() += node.weight * node.l * rule.weights[i] * v * v.transpose();
    }
  }
  return gram;
}

LambdaBounds lambda_bounds(const VectorElementPoly& p, const FacetTransfer& ft, double c_ext, double c_inv) {
  LambdaBounds b;
  b.lhs = lambda_weighted_norm(p, ft);
  b.rhs_a = std::pow(ft.beta_e, -0.5) / std::sqrt(3.0) * ft.r_e * ft.h_perp * patch_gradient_norm(p, ft);
  double norm_sq = 0.0;
  const int ex = std::min(2 * p.basis->degree() + 2, 12);
  for (const auto& qp : map_to_triangle(triangle_rule(ex), p.basis->vertices())) norm_sq += qp.w * p(qp.x).squaredNorm();
  b.rhs_b = std::pow(ft.r_e, 1.5) / std::sqrt(3.0) * c_ext * c_inv * std::sqrt(norm_sq);
  return b;
}

double max_generalized_eigenvalue(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> bsolver(B);
  const Eigen::VectorXd bev = bsolver.eigenvalues();
  if (!(bev.minCoeff() > 1e-12 * std::max(1.0, bev.maxCoeff()))) throw SingularGram("Gram matrix is numerically singular");
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(A, B, Eigen::EigenvaluesOnly);
  return std::max(0.0, solver.eigenvalues().maxCoeff());
}

double ext_constant(const ElementBasis& basis, const FacetTransfer& ft) {
  if (ft.r_e <= 0.0) return 0.0;
  const double lambda = max_generalized_eigenvalue(patch_gram(basis, ft), basis.mass_matrix());
  return std::sqrt(lambda / ft.r_e);
}

double inv_constant(const std::array<Vec2, 3>& vertices, int k) {
  const ElementBasis basis(vertices, k);
  const int n = basis.size();
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
  for (const auto& qp : map_to_triangle(triangle_rule(std::min(2 * k + 2, 12)), vertices)) {
    const GradMatrix g = basis.gradients(qp.x);
    S.noalias() += qp.w * g * g.transpose();
  }
  const double h = std::max({(vertices[1] - vertices[0]).norm(), (vertices[2] - vertices[1]).norm(),
                             (vertices[0] - vertices[2]).norm()});
  return h * std::sqrt(max_generalized_eigenvalue(S, basis.mass_matrix()));
}

double trace_constant(const std::array<Vec2, 3>& vertices, int k) {
  const ElementBasis basis(vertices, k);
  const int n = basis.size();
  const Eigen::MatrixXd M = basis.mass_matrix();
  const double h = std::max({(vertices[1] - vertices[0]).norm(), (vertices[2] - vertices[1]).norm(),
                             (vertices[0] - vertices[2]).norm()});
  double c = 0.0;
  const QuadRule rule = segment_rule(2 * k + 2);
  for (int i = 0; i < 3; ++i) {
    Eigen::MatrixXd Me = Eigen::MatrixXd::Zero(n, n);
    for (const auto& qp : map_to_segment(rule, vertices[static_cast<std::size_t>(i)],
                                         vertices[static_cast<std::size_t>((i + 1) % 3)])) {
      const Eigen::VectorXd v = basis.values(qp.x);
      Me.noalias() += qp.w * v * v.transpose();
    }
    c = std::max(c, std::sqrt(max_generalized_eigenvalue(h * Me, M)));
  }
  return c;
}

}  // namespace tpmhdg
