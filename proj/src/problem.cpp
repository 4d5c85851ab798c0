#include "tpmhdg/problem.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "tpmhdg/error.hpp"
#include "tpmhdg/quadrature.hpp"

namespace tpmhdg {

double max_divergence(const VectorField& beta, const BBox& box, int samples, std::uint64_t seed, double step) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(box.lo.x(), box.hi.x());
  std::uniform_real_distribution<double> uy(box.lo.y(), box.hi.y());
  const double eps = step;
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Vec2 x(ux(rng), uy(rng));
    const double dx = (beta(x + Vec2(eps, 0)).x() - beta(x - Vec2(eps, 0)).x()) / (2 * eps);
    const double dy = (beta(x + Vec2(0, eps)).y() - beta(x - Vec2(0, eps)).y()) / (2 * eps);
    worst = std::max(worst, std::abs(dx + dy));
  }
  return worst;
}

StabilizationPair select_tau(const Triangulation& mesh, const VectorField& beta, double tau1_value, int exactness) {
  if (!(tau1_value > 0.0)) throw std::invalid_argument("tau1 must be positive");
  StabilizationPair tau;
  tau.exactness = exactness;
  tau.tau1.assign(static_cast<std::size_t>(mesh.num_facets()), tau1_value);
  tau.tau2.resize(static_cast<std::size_t>(mesh.num_facets()));
  tau.margin = std::numeric_limits<double>::infinity();
  const QuadRule rule = segment_rule(exactness);
  const auto& verts = mesh.vertices();
  for (int f = 0; f < mesh.num_facets(); ++f) {
    const Facet& facet = mesh.facets()[f];
    const Vec2 n0 = mesh.facet_normal(f);
    const auto pts = map_to_segment(rule, verts[facet.v[0]], verts[facet.v[1]]);
    double facet_margin = std::numeric_limits<double>::infinity();
    for (int side = 0; side < 2; ++side) {
      if (facet.elem[side] < 0) continue;
      const Vec2 n = side == 0 ? n0 : Vec2(-n0);
      auto& values = tau.tau2[f][side];
      values.reserve(pts.size());
      for (const auto& qp : pts) {
        const double bn = beta(qp.x).dot(n);
        values.push_back(tau1_value - bn);
        facet_margin = std::min(facet_margin, tau1_value - 0.5 * bn);
      }
    }
    if (facet_margin <= 0.0) {
      std::ostringstream msg;
      msg << "min(tau1 - beta.n/2) = " << facet_margin << " <= 0 on facet " << f;
      throw StabilizationViolation(msg.str(), f);
    }
    if (facet_margin < tau.margin) {
      tau.margin = facet_margin;
      tau.worst_facet = f;
    }
  }
  return tau;
}

double tau_consistency_error(const Triangulation& mesh, const VectorField& beta, const StabilizationPair& tau) {
  const QuadRule rule = segment_rule(tau.exactness);
  const auto& verts = mesh.vertices();
  double worst = 0.0;
  for (int f = 0; f < mesh.num_facets(); ++f) {
    const Facet& facet = mesh.facets()[f];
    const Vec2 n0 = mesh.facet_normal(f);
    const auto pts = map_to_segment(rule, verts[facet.v[0]], verts[facet.v[1]]);
    for (int side = 0; side < 2; ++side) {
      if (facet.elem[side] < 0) continue;
      const Vec2 n = side == 0 ? n0 : Vec2(-n0);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const double t2 = tau.tau2[f][side][i];
        worst = std::max(worst, std::abs(t2 + beta(pts[i].x).dot(n) - tau.tau1[f]));
      }
    }
  }
  return worst;
}

}  // namespace tpmhdg
