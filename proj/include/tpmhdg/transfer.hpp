#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "tpmhdg/common.hpp"
#include "tpmhdg/domain.hpp"
#include "tpmhdg/mesh.hpp"

namespace tpmhdg {

enum class TransferStrategy { facet_normal, vertex_averaged_normal };

std::string to_string(TransferStrategy strategy);
TransferStrategy parse_strategy(const std::string& name);

/// One transfer path x -> phi(x) = x + l m.
struct TransferNode {
  Vec2 x = Vec2::Zero();
  double weight = 0.0;  ///< physical facet quadrature weight (zero at facet vertices)
  Vec2 m = Vec2::Zero();
  double l = 0.0;
  Vec2 phi = Vec2::Zero();
  Vec2 t = Vec2::Zero();  ///< tangential part m - (m.n) n
};

/// Transfer data of one boundary facet e, nodes ordered from facet.v[0] to facet.v[1].
struct FacetTransfer {
  int facet = -1;
  int element = -1;  ///< owner element K^e
  int local = -1;    ///< local facet index of e in K^e
  Vec2 normal = Vec2::Zero();
  double length = 0.0;
  std::vector<TransferNode> nodes;
  std::array<TransferNode, 2> ends;

  double H_perp = 0.0;  ///< largest distance of the patch from the line of e
  double h_perp = 0.0;  ///< distance from e to the opposite vertex of K^e
  double r_e = 0.0;     ///< H_perp / h_perp
  double beta_e = 1.0;  ///< min m.n over nodes and ends
  double max_t_norm = 0.0;
  double max_l = 0.0;

  bool m_nonnegative = true;  ///< m(v1).m(v2) >= 0
  bool m_transversal = true;  ///< m.n >= beta_e > 0
  bool m_orientation = true;  ///< m(v1).m(v2)^perp >= 0, v1/v2 taken clockwise along the boundary
};

struct TransferMap {
  TransferStrategy strategy = TransferStrategy::facet_normal;
  int quad_exactness = 0;
  double h = 0.0;  ///< mesh size used for the ray search window
  std::vector<FacetTransfer> facets;
  std::vector<int> slot;  ///< facet id -> index into facets, or -1

  double R = 0.0;
  double max_t_norm = 0.0;
  double max_H_perp = 0.0;
  /// max over nodes of l(x) / h_K of the owner element (admissibility condition (d)).
  double distance_constant = 0.0;
  int closure_violations = 0;
  int widened_searches = 0;
  bool bijective = true;
  std::vector<std::string> warnings;

  const FacetTransfer* find(int facet) const {
    return facet >= 0 && facet < static_cast<int>(slot.size()) && slot[facet] >= 0 ? &facets[slot[facet]] : nullptr;
  }
};

/// Casts transfer paths from the boundary of `mesh` to the zero level set of `domain`.
///
/// Paths start at the segment-quadrature nodes (given exactness) and at the
/// end points of every boundary facet. The root search window is 4 h_max; if
/// no crossing is found it is widened by doubling up to the mesh extent
/// (counted in widened_searches) before NoRootInRange propagates.
TransferMap build_transfer_map(const Triangulation& mesh, const ImplicitDomain& domain, TransferStrategy strategy,
                               int quad_exactness);

/// CSV with header facet_id,H_perp,h_perp,r_e,beta_e,max_t_norm.
void write_transfer_csv(std::ostream& out, const TransferMap& map);

}  // namespace tpmhdg
