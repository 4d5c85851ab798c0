#include "tpmhdg/solver.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <Eigen/SparseLU>

#include "tpmhdg/error.hpp"

namespace tpmhdg {

void print_diagnostics(std::ostream& out, const SolveDiagnostics& diag) {
  out << "mode=" << diag.mode << "\n"
      << "dofs=" << diag.dofs << "\n"
      << "nnz=" << diag.nnz << "\n"
      << "nnz_lu=" << diag.nnz_lu << "\n"
      << "residual=" << std::scientific << std::setprecision(3) << diag.residual << std::defaultfloat << "\n"
      << "fallback=" << (diag.fallback ? 1 : 0) << "\n";
}

HDGSolution unpack(const DofLayout& L, const Eigen::VectorXd& x, double alpha) {
  HDGSolution sol;
  sol.k = L.k;
  sol.alpha = alpha;
  const int n = L.n, m = L.k + 1;
  Eigen::MatrixXd* fields[6] = {&sol.qx, &sol.qy, &sol.y, &sol.px, &sol.py, &sol.z};
  for (auto* f : fields) f->resize(L.num_elements, n);
  for (int K = 0; K < L.num_elements; ++K)
    for (int c = 0; c < 6; ++c)
      fields[c]->row(K) = x.segment(L.element_offset(K) + c * n, n).transpose();
  sol.yhat.resize(L.num_facets, m);
  sol.zhat.resize(L.num_facets, m);
  for (int f = 0; f < L.num_facets; ++f) {
    sol.yhat.row(f) = x.segment(L.facet_offset(f), m).transpose();
    sol.zhat.row(f) = x.segment(L.facet_offset(f) + m, m).transpose();
  }
  sol.u = alpha * sol.z;
  return sol;
}

Eigen::VectorXd pack(const DofLayout& L, const HDGSolution& sol) {
  Eigen::VectorXd x(L.size());
  const int n = L.n, m = L.k + 1;
  const Eigen::MatrixXd* fields[6] = {&sol.qx, &sol.qy, &sol.y, &sol.px, &sol.py, &sol.z};
  for (int K = 0; K < L.num_elements; ++K)
    for (int c = 0; c < 6; ++c) x.segment(L.element_offset(K) + c * n, n) = fields[c]->row(K).transpose();
  for (int f = 0; f < L.num_facets; ++f) {
    x.segment(L.facet_offset(f), m) = sol.yhat.row(f).transpose();
    x.segment(L.facet_offset(f) + m, m) = sol.zhat.row(f).transpose();
  }
  return x;
}

HDGSolution solve(const LinearSystem& system, SolveDiagnostics* diag) {
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.analyzePattern(system.matrix);
  lu.factorize(system.matrix);
  if (lu.info() != Eigen::Success) throw SingularMatrix("sparse LU failed: " + lu.lastErrorMessage());
  Eigen::VectorXd x = lu.solve(system.rhs);
  const double bnorm = system.rhs.norm();
  auto residual = [&] { return (system.matrix * x - system.rhs).norm() / (bnorm > 0.0 ? bnorm : 1.0); };
  double res = residual();
  if (res > 1e-12) {  // one step of iterative refinement
    x += lu.solve(system.rhs - system.matrix * x);
    res = residual();
  }
  if (!std::isfinite(res) || res > 1e-9) {
    std::ostringstream msg;
    msg << "relative residual " << res << " exceeds 1e-9";
    throw SingularMatrix(msg.str());
  }
  if (diag) {
    diag->mode = to_string(system.mode);
    diag->dofs = system.rows();
    diag->nnz = static_cast<long>(system.matrix.nonZeros());
    diag->nnz_lu = static_cast<long>(lu.nnzL() + lu.nnzU());
    diag->residual = res;
  }
  if (system.mode == AssemblyMode::monolithic) return unpack(system.layout, x, system.alpha);

  const DofLayout& L = system.layout;
  const int fb = L.facet_block();
  Eigen::VectorXd full(L.size());
  full.tail(L.trace_size()) = x;
  for (int K = 0; K < L.num_elements; ++K) {
    const LocalSolver& ls = system.local[static_cast<std::size_t>(K)];
    Eigen::VectorXd lambda(3 * fb);
    for (int i = 0; i < 3; ++i) lambda.segment(i * fb, fb) = x.segment(ls.facets[static_cast<std::size_t>(i)] * fb, fb);
    full.segment(L.element_offset(K), L.element_block()) = ls.AinvF - ls.AinvB * lambda;
  }
  return unpack(L, full, system.alpha);
}

HDGSolution assemble_and_solve(const Triangulation& mesh, const TransferMap& map, const ProblemData& data,
                               const StabilizationPair& tau, int k, AssemblyMode mode, SolveDiagnostics* diag) {
  if (mode == AssemblyMode::condensed) {
    try {
      return solve(assemble_condensed(mesh, map, data, tau, k), diag);
    } catch (const SingularLocalBlock&) {
      HDGSolution sol = solve(assemble_monolithic(mesh, map, data, tau, k), diag);
      if (diag) diag->fallback = true;
      return sol;
    }
  }
  return solve(assemble_monolithic(mesh, map, data, tau, k), diag);
}

namespace {

const Eigen::MatrixXd* field_list(const HDGSolution& s, int i) {
  const Eigen::MatrixXd* f[8] = {&s.qx, &s.qy, &s.y, &s.px, &s.py, &s.z, &s.yhat, &s.zhat};
  return f[i];
}

}  // namespace

double max_abs(const HDGSolution& sol) {
  double m = 0.0;
  for (int i = 0; i < 8; ++i) {
    const auto* f = field_list(sol, i);
    if (f->size() > 0) m = std::max(m, f->cwiseAbs().maxCoeff());
  }
  return m;
}

double relative_difference(const HDGSolution& a, const HDGSolution& b) {
  double d = 0.0;
  for (int i = 0; i < 8; ++i) {
    const auto* fa = field_list(a, i);
    const auto* fb = field_list(b, i);
    if (fa->size() > 0) d = std::max(d, (*fa - *fb).cwiseAbs().maxCoeff());
  }
  return d / std::max(max_abs(b), 1e-300);
}

void write_solution_csv(const std::string& dir, const HDGSolution& sol) {
  std::filesystem::create_directories(dir);
  const char* names[] = {"qx", "qy", "y", "px", "py", "z", "yhat", "zhat", "u"};
  const Eigen::MatrixXd* fields[] = {&sol.qx, &sol.qy, &sol.y, &sol.px, &sol.py, &sol.z, &sol.yhat, &sol.zhat, &sol.u};
  for (int i = 0; i < 9; ++i) {
    std::ofstream out(std::filesystem::path(dir) / (std::string(names[i]) + ".csv"));
    const bool facet = i == 6 || i == 7;
    out << (facet ? "facet_id" : "element_id");
    for (Eigen::Index c = 0; c < fields[i]->cols(); ++c) out << ",c" << c;
    out << "\n" << std::setprecision(17);
    for (Eigen::Index r = 0; r < fields[i]->rows(); ++r) {
      out << r;
      for (Eigen::Index c = 0; c < fields[i]->cols(); ++c) out << "," << (*fields[i])(r, c);
      out << "\n";
    }
  }
}

}  // namespace tpmhdg
