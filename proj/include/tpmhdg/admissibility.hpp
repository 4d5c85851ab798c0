#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

#include "tpmhdg/common.hpp"
#include "tpmhdg/mesh.hpp"
#include "tpmhdg/transfer.hpp"

namespace tpmhdg {

/// Computable constants entering the closeness assumptions for one facet.
struct FacetConstants {
  double c_ext = 0.0;
  double c_inv = 0.0;
  double c_tr = 0.0;
};

/// One side of an inequality "lhs <= rhs".
struct Inequality {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = true;
};

inline Inequality make_inequality(double lhs, double rhs) { return {lhs, rhs, lhs <= rhs}; }

// Closed forms of the six closeness conditions. tau_minus = tau1 - beta.n / 2,
// tau_plus = tau2 + beta.n / 2 (worst case over the facet).
Inequality assumption_a1(double beta_e, double r_e, double c_ext, double c_inv);
Inequality assumption_a2(double r_e, double h_perp, double tau_minus);
Inequality assumption_a3(double r_e, double h_perp, double tau_plus);
Inequality assumption_a4(double max_l, double tau_minus);
Inequality assumption_a5(double max_l, double tau_plus);
Inequality assumption_a6(double r_e, double t_norm, double beta_e, double c_tr);

struct FacetAdmissibility {
  int facet = -1;
  std::array<Inequality, 6> a{};
  FacetConstants constants;
  bool m_conditions = true;

  bool pass() const;
};

struct AdmissibilityReport {
  std::vector<FacetAdmissibility> facets;
  double tau1 = 1.0;
  double beta_inf = 0.0;  ///< max |beta| over the facet nodes
  double R = 0.0;
  double max_t_norm = 0.0;
  double max_H_perp = 0.0;
  double h = 0.0;
  double shape_regularity = 0.0;
  /// log(max H_perp / h) / log h on this mesh alone.
  double delta_single = 0.0;
  /// Slope-based estimate from a refinement pair, when one was supplied.
  std::optional<double> delta_pair;
  std::array<int, 6> failures{};
  bool pass = true;
};

/// C_ext^e, C_inv^e and C_tr of the owner element of every facet in the map (same order).
std::vector<FacetConstants> compute_facet_constants(const Triangulation& mesh, const TransferMap& map, int k);

/// Evaluates A.1-A.6 facet by facet with beta.n sampled at the facet nodes and tau2 = tau1 - beta.n.
AdmissibilityReport check_closeness(const Triangulation& mesh, const TransferMap& map, double tau1,
                                    const VectorField& beta, const std::vector<FacetConstants>& constants);

/// delta from max H_perp <= C h^{1 + delta} over a coarse/fine pair.
double proximity_exponent(double H_coarse, double h_coarse, double H_fine, double h_fine);

/// CSV: facet_id, LHS/RHS/flag per assumption, constants.
void write_admissibility_csv(std::ostream& out, const AdmissibilityReport& report);

}  // namespace tpmhdg
