#include "tpmhdg/errors.hpp"

#include <cmath>
#include <sstream>

#include "tpmhdg/basis.hpp"
#include "tpmhdg/error.hpp"
#include "tpmhdg/quadrature.hpp"

namespace tpmhdg {

ErrorSet l2_errors(const HDGSolution& sol, const ExactSolution& exact, const Triangulation& mesh, int k) {
  const int ex = std::min(2 * k + 4, 12);
  const QuadRule trule = triangle_rule(ex);
  const QuadRule srule = segment_rule(ex);
  ErrorSet sq{};
  for (int K = 0; K < mesh.num_elements(); ++K) {
    const ElementBasis basis(mesh.element_vertices(K), k);
    for (const auto& qp : map_to_triangle(trule, basis.vertices())) {
      const Eigen::VectorXd phi = basis.values(qp.x);
      const Vec2 qh(phi.dot(sol.qx.row(K)), phi.dot(sol.qy.row(K)));
      const Vec2 ph(phi.dot(sol.px.row(K)), phi.dot(sol.py.row(K)));
      sq[err_y] += qp.w * std::pow(phi.dot(sol.y.row(K)) - exact.y(qp.x), 2);
      sq[err_z] += qp.w * std::pow(phi.dot(sol.z.row(K)) - exact.z(qp.x), 2);
      sq[err_q] += qp.w * (qh - exact.q(qp.x)).squaredNorm();
      sq[err_p] += qp.w * (ph - exact.p(qp.x)).squaredNorm();
    }
  }
  const auto& verts = mesh.vertices();
  for (int f = 0; f < mesh.num_facets(); ++f) {
    const Facet& facet = mesh.facets()[f];
    const Vec2 a = verts[facet.v[0]], b = verts[facet.v[1]];
    const FacetBasis fb(a, b, k);
    const double he = (b - a).norm();
    for (const auto& qp : map_to_segment(srule, a, b)) {
      const Eigen::VectorXd mu = fb.values(qp.x);
      sq[err_yhat] += he * qp.w * std::pow(mu.dot(sol.yhat.row(f)) - exact.y(qp.x), 2);
      sq[err_zhat] += he * qp.w * std::pow(mu.dot(sol.zhat.row(f)) - exact.z(qp.x), 2);
    }
  }
  ErrorSet e{};
  for (int i = 0; i < 6; ++i) e[static_cast<std::size_t>(i)] = std::sqrt(sq[static_cast<std::size_t>(i)]);
  return e;
}

double eoc_value(double e_prev, double e, int N_prev, int N) {
  if (N <= N_prev) {
    std::ostringstream msg;
    msg << "element counts must increase (" << N_prev << " -> " << N << ")";
    throw DegenerateRatio(msg.str());
  }
  if (!(e_prev > 0.0) || !(e > 0.0)) throw DegenerateRatio("zero error in order computation");
  return 2.0 * std::log(e_prev / e) / std::log(static_cast<double>(N) / N_prev);
}

std::vector<ConvergenceRecord> eoc(std::vector<ConvergenceRecord> records) {
  for (std::size_t i = 1; i < records.size(); ++i)
    for (std::size_t v = 0; v < 6; ++v)
      records[i].orders[v] = eoc_value(records[i - 1].errors[v], records[i].errors[v], records[i - 1].N, records[i].N);
  return records;
}

}  // namespace tpmhdg
