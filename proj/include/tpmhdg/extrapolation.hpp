#pragma once

#include <array>

#include "tpmhdg/basis.hpp"
#include "tpmhdg/transfer.hpp"

namespace tpmhdg {

/// Segment rule exactness used along transfer paths for degree k.
inline int path_exactness(int k) { return 2 * k + 2; }

/// Lambda^p(x) = l^-1 int_0^l (p(x) - E(p)(x + s m)) . m ds; zero when l < 1e-14.
double lambda_value(const VectorElementPoly& p, const Vec2& x, const Vec2& m, double l, int seg_exactness);

/// Lambda^p at node `node` of facet transfer `ft`.
double lambda_eval(const VectorElementPoly& p, const FacetTransfer& ft, int node);

/// || l^{1/2} Lambda^p ||_e with the facet quadrature stored in the map.
double lambda_weighted_norm(const VectorElementPoly& p, const FacetTransfer& ft);

/// (int_e int_0^l(x) |p(x + t m(x))|^2 dt dx)^{1/2}.
double triple_norm(const VectorElementPoly& p, const FacetTransfer& ft);

/// || grad p ||_{K_ext^e} (Frobenius) by facet x path tensor quadrature.
double patch_gradient_norm(const VectorElementPoly& p, const FacetTransfer& ft);

/// Gram matrix of the basis over the extrapolation patch K_ext^e.
Eigen::MatrixXd patch_gram(const ElementBasis& basis, const FacetTransfer& ft);

/// C_ext^e = r_e^{-1/2} sup ||E(chi)||_{K_ext^e} / ||chi||_{K^e}, zero for an empty patch.
double ext_constant(const ElementBasis& basis, const FacetTransfer& ft);

/// C_inv = h_K sqrt(lambda_max(S, M)), S the gradient Gram, M the mass.
double inv_constant(const std::array<Vec2, 3>& vertices, int k);

/// C_tr = max_e sqrt(lambda_max(h_K M_e, M)) so that ||v||_{dK}^2 <= C_tr^2 h_K^{-1} ||v||_K^2.
double trace_constant(const std::array<Vec2, 3>& vertices, int k);

/// Both sides of the two bounds on || l^{1/2} Lambda^p ||_e:
///   (a) beta_e^{-1/2} / sqrt(3) r_e h_perp || grad p ||_{K_ext^e}
///   (b) 1 / sqrt(3) r_e^{3/2} C_ext C_inv || p ||_{K^e}   (p polynomial on K^e)
struct LambdaBounds {
  double lhs = 0.0;
  double rhs_a = 0.0;
  double rhs_b = 0.0;

  bool pass_a(double rel_tol = 1e-10) const { return lhs <= rhs_a * (1.0 + rel_tol) + 1e-300; }
  bool pass_b(double rel_tol = 1e-10) const { return lhs <= rhs_b * (1.0 + rel_tol) + 1e-300; }
};

LambdaBounds lambda_bounds(const VectorElementPoly& p, const FacetTransfer& ft, double c_ext, double c_inv);

/// Largest eigenvalue of A x = lambda B x (B symmetric positive definite).
/// Throws SingularGram if B is numerically singular.
double max_generalized_eigenvalue(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

}  // namespace tpmhdg
