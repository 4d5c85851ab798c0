#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tpmhdg/manufactured.hpp"
#include "tpmhdg/mesh.hpp"
#include "tpmhdg/solver.hpp"

namespace tpmhdg {

/// Order of the six error quantities everywhere in the verification code.
enum ErrorIndex { err_y = 0, err_q, err_yhat, err_z, err_p, err_zhat };
inline constexpr std::array<const char*, 6> error_names = {"y", "q", "yhat", "z", "p", "zhat"};

using ErrorSet = std::array<double, 6>;

/// Volume errors in L2(T_h); trace errors (sum_e h_e ||yhat - y||_e^2)^{1/2} over all facets.
/// Error integrands use quadrature of exactness min(2k + 4, 12).
ErrorSet l2_errors(const HDGSolution& sol, const ExactSolution& exact, const Triangulation& mesh, int k);

struct ConvergenceRecord {
  int k = 0;
  int N = 0;
  double h = 0.0;
  ErrorSet errors{};
  std::array<std::optional<double>, 6> orders{};
};

/// 2 ln(e_prev / e) / ln(N / N_prev). Throws DegenerateRatio if N <= N_prev or an error is 0.
double eoc_value(double e_prev, double e, int N_prev, int N);

/// Fills the orders of rows 1.. from adjacent rows; row 0 keeps empty orders.
std::vector<ConvergenceRecord> eoc(std::vector<ConvergenceRecord> records);

}  // namespace tpmhdg
