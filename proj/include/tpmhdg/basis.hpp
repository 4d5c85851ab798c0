#pragma once

#include <array>
#include <vector>

#include "tpmhdg/common.hpp"
#include "tpmhdg/quadrature.hpp"

namespace tpmhdg {

/// dim P_k on a triangle.
constexpr int dim_pk(int k) { return k < 0 ? 0 : (k + 1) * (k + 2) / 2; }

using GradMatrix = Eigen::Matrix<double, Eigen::Dynamic, 2>;

/// L2-orthonormal basis of P_k(K), built from monomials in the scaled
/// coordinates (x - x_K) / h_K and orthonormalized against the element mass.
///
/// Monomials are graded by total degree, so the first dim_pk(j) functions
/// span P_j(K) for every j <= k. Evaluating outside K gives the natural
/// polynomial extension.
class ElementBasis {
 public:
  ElementBasis() = default;
  ElementBasis(const std::array<Vec2, 3>& vertices, int degree);

  int degree() const { return degree_; }
  int size() const { return dim_pk(degree_); }
  const std::array<Vec2, 3>& vertices() const { return vertices_; }

  Eigen::VectorXd values(const Vec2& x) const;
  GradMatrix gradients(const Vec2& x) const;

  /// Gram matrix (phi_i, phi_j)_K evaluated with a fresh quadrature rule.
  Eigen::MatrixXd mass_matrix() const;

 private:
  Eigen::VectorXd monomials(const Vec2& x) const;
  GradMatrix monomial_gradients(const Vec2& x) const;

  std::array<Vec2, 3> vertices_{};
  Vec2 center_ = Vec2::Zero();
  double scale_ = 1.0;
  int degree_ = 0;
  Eigen::MatrixXd coeffs_;  // phi = coeffs_ * monomials
};

/// Scaled Legendre basis of P_k(e), orthonormal in L2(e). Parametrized from a to b.
class FacetBasis {
 public:
  FacetBasis() = default;
  FacetBasis(const Vec2& a, const Vec2& b, int degree);

  int degree() const { return degree_; }
  int size() const { return degree_ + 1; }
  double length() const { return length_; }

  /// Arc-length fraction of the orthogonal projection of x onto the facet.
  double parameter(const Vec2& x) const;
  Eigen::VectorXd values(const Vec2& x) const;
  Eigen::VectorXd values_at(double s) const;

 private:
  Vec2 a_ = Vec2::Zero();
  Vec2 b_ = Vec2::Zero();
  double length_ = 0.0;
  int degree_ = 0;
};

/// Scalar polynomial on one element, stored in the element basis.
struct ElementPoly {
  const ElementBasis* basis = nullptr;
  Eigen::VectorXd coeffs;

  double operator()(const Vec2& x) const { return basis->values(x).dot(coeffs); }
  Vec2 gradient(const Vec2& x) const { return basis->gradients(x).transpose() * coeffs; }
};

/// Vector polynomial, one coefficient vector per component.
struct VectorElementPoly {
  const ElementBasis* basis = nullptr;
  Eigen::VectorXd cx;
  Eigen::VectorXd cy;

  Vec2 operator()(const Vec2& x) const {
    const Eigen::VectorXd v = basis->values(x);
    return Vec2(v.dot(cx), v.dot(cy));
  }
  /// Row i holds the gradient of component i.
  Eigen::Matrix2d jacobian(const Vec2& x) const {
    const GradMatrix g = basis->gradients(x);
    Eigen::Matrix2d J;
    J.row(0) = (g.transpose() * cx).transpose();
    J.row(1) = (g.transpose() * cy).transpose();
    return J;
  }
};

/// Natural extension: the element polynomial evaluated at any point.
inline double extrapolate_eval(const ElementPoly& p, const Vec2& x) { return p(x); }
inline Vec2 extrapolate_eval(const VectorElementPoly& p, const Vec2& x) { return p(x); }

/// L2 projection of f onto the element basis.
ElementPoly l2_project(const ElementBasis& basis, const ScalarField& f, int exactness);
VectorElementPoly l2_project(const ElementBasis& basis, const VectorField& f, int exactness);

/// Equispaced lattice of dim_pk(k) points on the triangle (vertices first).
std::vector<Vec2> lattice_nodes(const std::array<Vec2, 3>& v, int k);

/// Polynomial interpolating the given values at lattice_nodes(basis.vertices(), k).
ElementPoly from_nodal(const ElementBasis& basis, const Eigen::VectorXd& values);

}  // namespace tpmhdg
