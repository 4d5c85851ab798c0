#pragma once

#include <iosfwd>
#include <string>

#include "tpmhdg/assembly.hpp"

namespace tpmhdg {

/// Coefficients in the element / facet bases; row K (or f) holds one element (facet).
struct HDGSolution {
  int k = 0;
  double alpha = 1.0;
  Eigen::MatrixXd qx, qy, y, px, py, z;
  Eigen::MatrixXd u;  ///< alpha z
  Eigen::MatrixXd yhat, zhat;
};

struct SolveDiagnostics {
  std::string mode;
  int dofs = 0;
  long nnz = 0;
  long nnz_lu = 0;
  double residual = 0.0;  ///< ||A x - b|| / ||b|| (absolute if b = 0)
  bool fallback = false;  ///< condensed mode hit a singular local block
};

/// Writes one key=value per line.
void print_diagnostics(std::ostream& out, const SolveDiagnostics& diag);

/// Sparse LU solve plus unpacking (and local reconstruction in condensed mode).
/// Throws SingularMatrix if the factorization fails or the relative residual exceeds 1e-9.
HDGSolution solve(const LinearSystem& system, SolveDiagnostics* diag = nullptr);

/// Unpacks a full monolithic vector.
HDGSolution unpack(const DofLayout& layout, const Eigen::VectorXd& x, double alpha);

/// Flattens a solution into the monolithic ordering.
Eigen::VectorXd pack(const DofLayout& layout, const HDGSolution& sol);

/// Condensed assembly with monolithic fallback on SingularLocalBlock.
HDGSolution assemble_and_solve(const Triangulation& mesh, const TransferMap& map, const ProblemData& data,
                               const StabilizationPair& tau, int k, AssemblyMode mode, SolveDiagnostics* diag = nullptr);

/// Largest absolute value over all six fields and both traces.
double max_abs(const HDGSolution& sol);

/// max_abs(a - b) / max(max_abs(b), tiny).
double relative_difference(const HDGSolution& a, const HDGSolution& b);

/// Writes <dir>/<field>.csv for every field: element_id (or facet_id), c0, c1, ...
void write_solution_csv(const std::string& dir, const HDGSolution& sol);

}  // namespace tpmhdg
