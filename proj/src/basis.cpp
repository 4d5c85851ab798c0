#include "tpmhdg/basis.hpp"

#include <cmath>
#include <stdexcept>

#include "tpmhdg/error.hpp"

namespace tpmhdg {

ElementBasis::ElementBasis(const std::array<Vec2, 3>& vertices, int degree)
    : vertices_(vertices), degree_(degree) {
  if (degree < 0) throw std::invalid_argument("negative polynomial degree");
  center_ = (vertices[0] + vertices[1] + vertices[2]) / 3.0;
  scale_ = std::max({(vertices[1] - vertices[0]).norm(), (vertices[2] - vertices[1]).norm(),
                     (vertices[0] - vertices[2]).norm()});
  const int n = size();
  coeffs_ = Eigen::MatrixXd::Identity(n, n);

  const auto points = map_to_triangle(triangle_rule(std::min(2 * degree_, 12)), vertices_);
  // Two Cholesky sweeps: the second removes the round-off left by the first.
  for (int sweep = 0; sweep < 2; ++sweep) {
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    for (const auto& qp : points) {
      const Eigen::VectorXd v = values(qp.x);
      gram.noalias() += qp.w * v * v.transpose();
    }
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success) throw SingularGram("element Gram matrix is not positive definite");
    const Eigen::MatrixXd L = llt.matrixL();
    coeffs_ = L.triangularView<Eigen::Lower>().solve(coeffs_);
  }
}

Eigen::VectorXd ElementBasis::monomials(const Vec2& x) const {
  const Vec2 xi = (x - center_) / scale_;
  Eigen::VectorXd m(size());
  int idx = 0;
  for (int d = 0; d <= degree_; ++d)
    for (int j = 0; j <= d; ++j) m(idx++) = std::pow(xi.x(), d - j) * std::pow(xi.y(), j);
  return m;
}

GradMatrix ElementBasis::monomial_gradients(const Vec2& x) const {
  const Vec2 xi = (x - center_) / scale_;
  GradMatrix g(size(), 2);
  int idx = 0;
  for (int d = 0; d <= degree_; ++d) {
    for (int j = 0; j <= d; ++j) {
      const int a = d - j;
      const int b = j;
      g(idx, 0) = a > 0 ? a * std::pow(xi.x(), a - 1) * std::pow(xi.y(), b) / scale_ : 0.0;
      g(idx, 1) = b > 0 ? b * std::pow(xi.x(), a) * std::pow(xi.y(), b - 1) / scale_ : 0.0;
      ++idx;
    }
  }
  return g;
}

Eigen::VectorXd ElementBasis::values(const Vec2& x) const { return coeffs_ * monomials(x); }

GradMatrix ElementBasis::gradients(const Vec2& x) const { return coeffs_ * monomial_gradients(x); }

Eigen::MatrixXd ElementBasis::mass_matrix() const {
  const int n = size();
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  for (const auto& qp : map_to_triangle(triangle_rule(std::min(2 * degree_ + 2, 12)), vertices_)) {
    const Eigen::VectorXd v = values(qp.x);
    gram.noalias() += qp.w * v * v.transpose();
  }
  return gram;
}

FacetBasis::FacetBasis(const Vec2& a, const Vec2& b, int degree)
    : a_(a), b_(b), length_((b - a).norm()), degree_(degree) {}

double FacetBasis::parameter(const Vec2& x) const { return (x - a_).dot(b_ - a_) / (length_ * length_); }

Eigen::VectorXd FacetBasis::values(const Vec2& x) const { return values_at(parameter(x)); }

Eigen::VectorXd FacetBasis::values_at(double s) const {
  Eigen::VectorXd v(size());
  const double t = 2.0 * s - 1.0;
  double p0 = 1.0;
  double p1 = t;
  for (int j = 0; j <= degree_; ++j) {
    double pj = 0.0;
    if (j == 0) {
      pj = 1.0;
    } else if (j == 1) {
      pj = t;
    } else {
      pj = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = pj;
    }
    v(j) = std::sqrt((2.0 * j + 1.0) / length_) * pj;
  }
  return v;
}

ElementPoly l2_project(const ElementBasis& basis, const ScalarField& f, int exactness) {
  ElementPoly p{&basis, Eigen::VectorXd::Zero(basis.size())};
  for (const auto& qp : map_to_triangle(triangle_rule(exactness), basis.vertices()))
    p.coeffs.noalias() += qp.w * f(qp.x) * basis.values(qp.x);
  return p;
}

VectorElementPoly l2_project(const ElementBasis& basis, const VectorField& f, int exactness) {
  VectorElementPoly p{&basis, Eigen::VectorXd::Zero(basis.size()), Eigen::VectorXd::Zero(basis.size())};
  for (const auto& qp : map_to_triangle(triangle_rule(exactness), basis.vertices())) {
    const Eigen::VectorXd v = basis.values(qp.x);
    const Vec2 fx = f(qp.x);
    p.cx.noalias() += qp.w * fx.x() * v;
    p.cy.noalias() += qp.w * fx.y() * v;
  }
  return p;
}

std::vector<Vec2> lattice_nodes(const std::array<Vec2, 3>& v, int k) {
  if (k == 0) return {(v[0] + v[1] + v[2]) / 3.0};
  std::vector<Vec2> nodes{v[0], v[1], v[2]};
  for (int i = 0; i <= k; ++i) {
    for (int j = 0; i + j <= k; ++j) {
      const bool is_vertex = (i == 0 && j == 0) || (i == k && j == 0) || (i == 0 && j == k);
      if (is_vertex) continue;
      const double a = static_cast<double>(i) / k;
      const double b = static_cast<double>(j) / k;
      nodes.push_back(v[0] + a * (v[1] - v[0]) + b * (v[2] - v[0]));
    }
  }
  return nodes;
}

ElementPoly from_nodal(const ElementBasis& basis, const Eigen::VectorXd& values) {
  const auto nodes = lattice_nodes(basis.vertices(), basis.degree());
  const int n = basis.size();
  Eigen::MatrixXd V(n, n);
  for (int i = 0; i < n; ++i) V.row(i) = basis.values(nodes[static_cast<std::size_t>(i)]).transpose();
  return ElementPoly{&basis, V.fullPivLu().solve(values)};
}

}  // namespace tpmhdg
