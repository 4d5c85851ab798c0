#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "tpmhdg/basis.hpp"
#include "tpmhdg/mesh.hpp"
#include "tpmhdg/problem.hpp"
#include "tpmhdg/transfer.hpp"

namespace tpmhdg {

enum class AssemblyMode { monolithic, condensed };

std::string to_string(AssemblyMode mode);
AssemblyMode parse_mode(const std::string& name);

/// Unknown ordering.
///
/// Element K owns the block [qx, qy, y, px, py, z] of 6 n entries (n = dim P_k)
/// starting at element_offset(K). Facet f owns [yhat, zhat] of 2 (k + 1) entries
/// starting at facet_offset(f). Element blocks come first. The condensed
/// system keeps only the facet blocks, shifted to start at 0.
struct DofLayout {
  enum Field { qx = 0, qy = 1, y = 2, px = 3, py = 4, z = 5 };

  int k = 0;
  int n = 1;
  int num_elements = 0;
  int num_facets = 0;

  DofLayout() = default;
  DofLayout(int degree, int elements, int facets)
      : k(degree), n(dim_pk(degree)), num_elements(elements), num_facets(facets) {}

  int element_block() const { return 6 * n; }
  int facet_block() const { return 2 * (k + 1); }
  int element_offset(int K) const { return K * element_block(); }
  int field_offset(int K, Field field) const { return element_offset(K) + field * n; }
  int volume_size() const { return num_elements * element_block(); }
  int trace_size() const { return num_facets * facet_block(); }
  int facet_offset(int f) const { return volume_size() + f * facet_block(); }
  int size() const { return volume_size() + trace_size(); }

  std::string manifest() const;
};

/// Element-local pieces of the HDG system on element K.
///
/// Local traces are ordered by local facet i: [yhat (k+1), zhat (k+1)] at 2 (k+1) i.
/// The element equations read A u + B lambda = F. Facet rows (i-th block of
/// C, D, G) hold this element's contribution to the trace equations of facet i:
/// C u + D lambda_i (+ other sides) = G.
struct ElementBlocks {
  int element = -1;
  std::array<int, 3> facets{};
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  Eigen::VectorXd F;
  std::array<Eigen::MatrixXd, 3> C;
  std::array<Eigen::MatrixXd, 3> D;
  std::array<Eigen::VectorXd, 3> G;
};

/// int_0^l E(phi_j)(x + s m) . m ds for every basis function, split by the
/// component of m: entries [0, n) couple to the x component of the flux,
/// [n, 2n) to the y component.
Eigen::VectorXd tpm_path_integral(const ElementBasis& basis, const TransferNode& node, int seg_exactness);

/// Same integral for a single scalar function f against the unit direction m.
double tpm_path_integral(const ScalarField& f, const Vec2& x, const Vec2& m, double l, int seg_exactness);

/// Volume/facet quadrature exactness used by the assembly for degree k.
inline int assembly_exactness(int k) { return 2 * k + 2; }

ElementBlocks element_blocks(const Triangulation& mesh, const TransferMap& map, const ProblemData& data,
                             const StabilizationPair& tau, int k, int K);

/// Condensation data of one element: u_K = AinvF - AinvB lambda_K.
struct LocalSolver {
  std::array<int, 3> facets{};
  Eigen::MatrixXd AinvB;
  Eigen::VectorXd AinvF;
};

struct LinearSystem {
  AssemblyMode mode = AssemblyMode::monolithic;
  DofLayout layout;
  double alpha = 1.0;
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
  std::vector<LocalSolver> local;  ///< condensed mode only

  int rows() const { return static_cast<int>(matrix.rows()); }
};

LinearSystem assemble_monolithic(const Triangulation& mesh, const TransferMap& map, const ProblemData& data,
                                 const StabilizationPair& tau, int k);

/// Schur complement on the trace unknowns. Throws SingularLocalBlock with the
/// element id if an element block is numerically singular.
LinearSystem assemble_condensed(const Triangulation& mesh, const TransferMap& map, const ProblemData& data,
                                const StabilizationPair& tau, int k);

}  // namespace tpmhdg
