#include "tpmhdg/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "tpmhdg/basis.hpp"
#include "tpmhdg/extrapolation.hpp"

namespace tpmhdg {

Inequality assumption_a1(double beta_e, double r_e, double c_ext, double c_inv) {
  if (r_e == 0.0) return make_inequality(0.0, 1.0 / 32.0);
  return make_inequality(std::pow(beta_e, -2.0) * std::pow(r_e, 3.0) * c_ext * c_ext * c_inv * c_inv, 1.0 / 32.0);
}

Inequality assumption_a2(double r_e, double h_perp, double tau_minus) {
  return make_inequality(r_e * h_perp * tau_minus, 0.25);
}

Inequality assumption_a3(double r_e, double h_perp, double tau_plus) {
  return make_inequality(r_e * h_perp * tau_plus, 0.25);
}

Inequality assumption_a4(double max_l, double tau_minus) { return make_inequality(2.0 * max_l * tau_minus, 0.25); }

Inequality assumption_a5(double max_l, double tau_plus) { return make_inequality(2.0 * max_l * tau_plus, 0.25); }

Inequality assumption_a6(double r_e, double t_norm, double beta_e, double c_tr) {
  return make_inequality(r_e * t_norm * t_norm, beta_e / (98.0 * c_tr * c_tr));
}

bool FacetAdmissibility::pass() const {
  return std::all_of(a.begin(), a.end(), [](const Inequality& q) { return q.pass; });
}

std::vector<FacetConstants> compute_facet_constants(const Triangulation& mesh, const TransferMap& map, int k) {
  std::vector<FacetConstants> out;
  out.reserve(map.facets.size());
  for (const auto& ft : map.facets) {
    const auto verts = mesh.element_vertices(ft.element);
    const ElementBasis basis(verts, k);
    out.push_back({ext_constant(basis, ft), inv_constant(verts, k), trace_constant(verts, k)});
  }
  return out;
}

AdmissibilityReport check_closeness(const Triangulation& mesh, const TransferMap& map, double tau1,
                                    const VectorField& beta, const std::vector<FacetConstants>& constants) {
  AdmissibilityReport report;
  report.tau1 = tau1;
  report.R = map.R;
  report.max_t_norm = map.max_t_norm;
  report.max_H_perp = map.max_H_perp;
  report.h = mesh.h_max();
  report.shape_regularity = mesh.shape_regularity();
  report.delta_single =
      map.max_H_perp > 0.0 && report.h < 1.0 ? std::log(map.max_H_perp / report.h) / std::log(report.h) : 0.0;

  for (std::size_t i = 0; i < map.facets.size(); ++i) {
    const auto& ft = map.facets[i];
    double tau_minus = -1e300;
    double tau_plus = -1e300;
    for (const auto& node : ft.nodes) {
      const double bn = beta(node.x).dot(ft.normal);
      const double tau2 = tau1 - bn;
      tau_minus = std::max(tau_minus, tau1 - 0.5 * bn);
      tau_plus = std::max(tau_plus, tau2 + 0.5 * bn);
      report.beta_inf = std::max(report.beta_inf, beta(node.x).norm());
    }
    FacetAdmissibility fa;
    fa.facet = ft.facet;
    fa.constants = constants.at(i);
    fa.a[0] = assumption_a1(ft.beta_e, ft.r_e, fa.constants.c_ext, fa.constants.c_inv);
    fa.a[1] = assumption_a2(ft.r_e, ft.h_perp, tau_minus);
    fa.a[2] = assumption_a3(ft.r_e, ft.h_perp, tau_plus);
    fa.a[3] = assumption_a4(ft.max_l, tau_minus);
    fa.a[4] = assumption_a5(ft.max_l, tau_plus);
    fa.a[5] = assumption_a6(ft.r_e, map.max_t_norm, ft.beta_e, fa.constants.c_tr);
    fa.m_conditions = ft.m_nonnegative && ft.m_transversal && ft.m_orientation;
    for (int j = 0; j < 6; ++j)
      if (!fa.a[static_cast<std::size_t>(j)].pass) ++report.failures[static_cast<std::size_t>(j)];
    report.pass = report.pass && fa.pass();
    report.facets.push_back(fa);
  }
  return report;
}

double proximity_exponent(double H_coarse, double h_coarse, double H_fine, double h_fine) {
  return std::log(H_coarse / H_fine) / std::log(h_coarse / h_fine) - 1.0;
}

void write_admissibility_csv(std::ostream& out, const AdmissibilityReport& report) {
  out << "facet_id";
  for (int j = 1; j <= 6; ++j) out << ",A" << j << "_lhs,A" << j << "_rhs,A" << j << "_pass";
  out << ",C_ext,C_inv,C_tr,m_conditions\n";
  out << std::setprecision(12);
  for (const auto& fa : report.facets) {
    out << fa.facet;
    for (const auto& q : fa.a) out << "," << q.lhs << "," << q.rhs << "," << (q.pass ? 1 : 0);
    out << "," << fa.constants.c_ext << "," << fa.constants.c_inv << "," << fa.constants.c_tr << ","
        << (fa.m_conditions ? 1 : 0) << "\n";
  }
}

}  // namespace tpmhdg
