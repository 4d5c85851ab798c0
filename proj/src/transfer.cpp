#include "tpmhdg/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "tpmhdg/error.hpp"
#include "tpmhdg/quadrature.hpp"

namespace tpmhdg {

std::string to_string(TransferStrategy strategy) {
  return strategy == TransferStrategy::facet_normal ? "facet-normal" : "vertex-averaged-normal";
}

TransferStrategy parse_strategy(const std::string& name) {
  if (name == "facet-normal" || name == "facet_normal") return TransferStrategy::facet_normal;
  if (name == "vertex-averaged-normal" || name == "vertex_averaged_normal" || name == "vertex-averaged")
    return TransferStrategy::vertex_averaged_normal;
  throw std::invalid_argument("unknown transfer strategy '" + name + "'");
}

namespace {

double mesh_extent(const Triangulation& mesh) {
  Vec2 lo = mesh.vertices().front();
  Vec2 hi = lo;
  for (const auto& v : mesh.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return (hi - lo).norm();
}

}  // namespace

TransferMap build_transfer_map(const Triangulation& mesh, const ImplicitDomain& domain, TransferStrategy strategy,
                               int quad_exactness) {
  const auto& boundary = mesh.boundary_facets();
  if (boundary.empty()) throw std::invalid_argument("mesh has no boundary facets");

  TransferMap map;
  map.strategy = strategy;
  map.quad_exactness = quad_exactness;
  map.h = mesh.h_max();
  map.slot.assign(static_cast<std::size_t>(mesh.num_facets()), -1);

  // Vertex normals: normalized average of the adjacent boundary facet normals.
  std::vector<Vec2> vertex_normal(static_cast<std::size_t>(mesh.num_vertices()), Vec2::Zero());
  for (int f : boundary) {
    const Vec2 n = mesh.facet_normal(f);
    for (int v : mesh.facets()[f].v) vertex_normal[v] += n;
  }
  for (auto& n : vertex_normal)
    if (n.squaredNorm() > 0.0) n.normalize();

  const double window = 4.0 * map.h;
  const double max_window = std::max(window, 2.0 * mesh_extent(mesh));
  auto cast = [&](const Vec2& x, const Vec2& m) {
    for (double t_max = window;; t_max *= 2.0) {
      try {
        const double l = ray_intersect(domain, x, m, t_max);
        if (t_max > window) ++map.widened_searches;
        return l;
      } catch (const NoRootInRange&) {
        if (t_max >= max_window || domain(x) > 0.0) throw;
      }
    }
  };

  const QuadRule rule = segment_rule(quad_exactness);
  map.facets.reserve(boundary.size());
  for (int f : boundary) {
    const Facet& facet = mesh.facets()[f];
    FacetTransfer ft;
    ft.facet = f;
    ft.element = facet.elem[0];
    ft.local = facet.local[0];
    ft.normal = mesh.facet_normal(f);
    ft.length = mesh.facet_length(f);
    ft.h_perp = mesh.opposite_height(ft.element, ft.local);
    const Vec2 a = mesh.vertices()[facet.v[0]];
    const Vec2 b = mesh.vertices()[facet.v[1]];
    const Vec2 ma = strategy == TransferStrategy::facet_normal ? ft.normal : vertex_normal[facet.v[0]];
    const Vec2 mb = strategy == TransferStrategy::facet_normal ? ft.normal : vertex_normal[facet.v[1]];
    const double h_K = mesh.diameter(ft.element);

    auto make_node = [&](double s, double weight) {
      TransferNode node;
      node.x = (1.0 - s) * a + s * b;
      node.weight = weight;
      node.m = strategy == TransferStrategy::facet_normal ? ft.normal : Vec2(((1.0 - s) * ma + s * mb).normalized());
      node.l = cast(node.x, node.m);
      node.phi = node.x + node.l * node.m;
      node.t = node.m - node.m.dot(ft.normal) * ft.normal;
      if (strategy == TransferStrategy::facet_normal) node.t.setZero();
      for (int j = 1; j <= 5; ++j) {
        const Vec2 sample = node.x + (node.l * j / 6.0) * node.m;
        if (domain(sample) > 1e-10) ++map.closure_violations;
      }
      map.distance_constant = std::max(map.distance_constant, node.l / h_K);
      return node;
    };

    for (std::size_t i = 0; i < rule.size(); ++i)
      ft.nodes.push_back(make_node(rule.nodes[i].x(), rule.weights[i] * ft.length));
    ft.ends = {make_node(0.0, 0.0), make_node(1.0, 0.0)};

    ft.beta_e = 1.0;
    auto visit = [&](const TransferNode& node) {
      const double mn = node.m.dot(ft.normal);
      ft.beta_e = std::min(ft.beta_e, mn);
      ft.H_perp = std::max(ft.H_perp, node.l * mn);
      ft.max_t_norm = std::max(ft.max_t_norm, node.t.norm());
      ft.max_l = std::max(ft.max_l, node.l);
    };
    for (const auto& node : ft.nodes) visit(node);
    for (const auto& node : ft.ends) visit(node);
    ft.r_e = ft.H_perp / ft.h_perp;

    // Boundary facets are oriented counterclockwise around Omega_h; v1 is the
    // clockwise-first vertex, i.e. the facet's end point.
    const Vec2& m1 = ft.ends[1].m;
    const Vec2& m2 = ft.ends[0].m;
    ft.m_nonnegative = m1.dot(m2) >= 0.0;
    ft.m_transversal = ft.beta_e > 0.0;
    ft.m_orientation = m1.dot(rot90(m2)) >= -1e-14;

    map.R = std::max(map.R, ft.r_e);
    map.max_t_norm = std::max(map.max_t_norm, ft.max_t_norm);
    map.max_H_perp = std::max(map.max_H_perp, ft.H_perp);
    map.slot[f] = static_cast<int>(map.facets.size());
    map.facets.push_back(std::move(ft));
  }

  // Injectivity of phi at the quadrature nodes.
  std::vector<Vec2> images;
  for (const auto& ft : map.facets)
    for (const auto& node : ft.nodes) images.push_back(node.phi);
  std::sort(images.begin(), images.end(), [](const Vec2& p, const Vec2& q) { return p.x() < q.x(); });
  int collisions = 0;
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size() && images[j].x() - images[i].x() <= 1e-10; ++j)
      if ((images[j] - images[i]).norm() <= 1e-10) ++collisions;
  if (collisions > 0) {
    map.bijective = false;
    std::ostringstream msg;
    msg << "NonBijective: " << collisions << " pairs of transfer nodes map to boundary points closer than 1e-10";
    map.warnings.push_back(msg.str());
  }
  if (map.closure_violations > 0) {
    std::ostringstream msg;
    msg << map.closure_violations << " path samples leave the closure of the domain";
    map.warnings.push_back(msg.str());
  }
  if (map.widened_searches > 0) {
    std::ostringstream msg;
    msg << map.widened_searches << " transfer paths needed a search window wider than 4h";
    map.warnings.push_back(msg.str());
  }
  return map;
}

void write_transfer_csv(std::ostream& out, const TransferMap& map) {
  out << "facet_id,H_perp,h_perp,r_e,beta_e,max_t_norm\n";
  out << std::setprecision(12);
  for (const auto& ft : map.facets)
    out << ft.facet << "," << ft.H_perp << "," << ft.h_perp << "," << ft.r_e << "," << ft.beta_e << ","
        << ft.max_t_norm << "\n";
}

}  // namespace tpmhdg
