#pragma once

#include <string>

#include "tpmhdg/common.hpp"
#include "tpmhdg/problem.hpp"

namespace tpmhdg {

/// Closed-form state and adjoint with their derivatives. q = -grad y, p = -grad z.
struct ExactSolution {
  std::string name;
  ScalarField y;
  VectorField grad_y;
  ScalarField lap_y;
  ScalarField z;
  VectorField grad_z;
  ScalarField lap_z;
  VectorField beta;
  double gamma = 1.0;

  Vec2 q(const Vec2& x) const { return -grad_y(x); }
  Vec2 p(const Vec2& x) const { return -grad_z(x); }
};

/// y = sin(pi x), z = sin(pi x) sin(pi y), beta = (1, 1), gamma = 1.
ExactSolution example1_solution();

/// Same fields with beta = (y, x).
ExactSolution example2_solution();

/// Fixed polynomials of total degree k for y and z (beta = (1, 1)).
ExactSolution polynomial_solution(int k);

/// y = z = 0.
ExactSolution zero_solution(const VectorField& beta, double gamma = 1.0);

/// f = -lap y + beta.grad y - z / gamma, y_d = -lap z - beta.grad z + y, g = y, g_adj = z.
ProblemData derive_data(const ExactSolution& exact);

/// All data zero, same beta and gamma.
ProblemData zero_data(const VectorField& beta, double gamma = 1.0);

}  // namespace tpmhdg
