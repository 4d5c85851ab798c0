#include "tpmhdg/suites.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "tpmhdg/admissibility.hpp"
#include "tpmhdg/extrapolation.hpp"
#include "tpmhdg/projections.hpp"
#include "tpmhdg/quadrature.hpp"
#include "tpmhdg/study.hpp"

namespace tpmhdg {

namespace {

constexpr double pi = std::numbers::pi;

struct SmoothInput {
  VectorField v;
  ScalarField s;
};

SmoothInput random_smooth(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const double a = u(rng), b = u(rng), c = u(rng), d = u(rng), e = u(rng), f = u(rng);
  SmoothInput in;
  in.s = [=](const Vec2& x) { return std::sin(a * x.x() + b * x.y()) + c * std::exp(0.3 * d * x.x()); };
  in.v = [=](const Vec2& x) { return Vec2(std::cos(e * x.x() - b * x.y()), f * std::sin(a * x.y()) + x.x() * x.y()); };
  return in;
}

std::vector<Triangulation> suite_meshes() {
  std::vector<Triangulation> meshes;
  meshes.push_back(extract_interior_mesh(generate_background_mesh(default_box(), 8), example_domain(1)));
  meshes.push_back(extract_interior_mesh(generate_background_mesh(default_box(), 4), example_domain(0)));
  return meshes;
}

const VectorField kBeta = [](const Vec2&) { return Vec2(1.0, 1.0); };

TauField tau2_field(double tau1) {
  return [tau1](const Vec2& x, const Vec2& n) { return tau1 - kBeta(x).dot(n); };
}

}  // namespace

SuiteResult projection_residual_suite(std::uint64_t seed, int samples) {
  SuiteResult r;
  r.name = "projection residuals";
  r.limit = 1e-9;
  std::mt19937_64 rng(seed);
  const auto meshes = suite_meshes();
  for (int s = 0; s < samples; ++s) {
    const SmoothInput in = random_smooth(rng);
    for (const auto& mesh : meshes)
      for (int k = 0; k <= 3; ++k)
        for (int K = 0; K < mesh.num_elements(); ++K) {
          const auto st = project_hdg_state(mesh, K, k, in.v, in.s, constant_tau(1.0), kBeta);
          const auto ad = project_hdg_adjoint(mesh, K, k, in.v, in.s, tau2_field(1.0), kBeta);
          const double rs = projection_residuals(mesh, K, k, st, in.v, in.s, constant_tau(1.0), kBeta, 1.0).max();
          const double ra = projection_residuals(mesh, K, k, ad, in.v, in.s, tau2_field(1.0), kBeta, -1.0).max();
          for (double v : {rs, ra}) {
            ++r.checks;
            r.worst = std::max(r.worst, v);
            if (!(v <= r.limit)) ++r.failures;
          }
        }
  }
  return r;
}

SuiteResult projection_reproduction_suite(std::uint64_t seed, int samples) {
  SuiteResult r;
  r.name = "projection reproduction";
  r.limit = 1e-12;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto meshes = suite_meshes();
  for (const auto& mesh : meshes)
    for (int k = 0; k <= 3; ++k)
      for (int K = 0; K < mesh.num_elements(); ++K) {
        const ElementBasis basis(mesh.element_vertices(K), k);
        for (int s = 0; s < samples; ++s) {
          Eigen::VectorXd cx(basis.size()), cy(basis.size()), cs(basis.size());
          for (int i = 0; i < basis.size(); ++i) {
            cx[i] = u(rng);
            cy[i] = u(rng);
            cs[i] = u(rng);
          }
          const VectorElementPoly v{&basis, cx, cy};
          const ElementPoly sc{&basis, cs};
          const VectorField vf = [&](const Vec2& x) { return v(x); };
          const ScalarField sf = [&](const Vec2& x) { return sc(x); };
          for (int sign : {1, -1}) {
            const auto pr = sign > 0 ? project_hdg_state(mesh, K, k, vf, sf, constant_tau(1.0), kBeta)
                                     : project_hdg_adjoint(mesh, K, k, vf, sf, tau2_field(1.0), kBeta);
            const double err = std::max({(pr.vx - cx).cwiseAbs().maxCoeff(), (pr.vy - cy).cwiseAbs().maxCoeff(),
                                         (pr.scalar - cs).cwiseAbs().maxCoeff()});
            ++r.checks;
            r.worst = std::max(r.worst, err);
            if (!(err <= r.limit)) ++r.failures;
          }
        }
      }
  return r;
}

SuiteResult projection_rate_suite() {
  SuiteResult r;
  r.name = "projection rates (min order - k)";
  r.limit = 0.8;
  r.worst = std::numeric_limits<double>::infinity();
  const ScalarField y = [](const Vec2& x) { return std::sin(pi * x.x()); };
  const VectorField q = [](const Vec2& x) { return Vec2(-pi * std::cos(pi * x.x()), 0.0); };
  const std::vector<int> levels{8, 16, 32};
  std::ostringstream detail;
  for (int k = 0; k <= 3; ++k)
    for (int sign : {1, -1}) {
      std::vector<std::array<double, 2>> errs;
      std::vector<double> hs;
      for (int n : levels) {
        const auto mesh = extract_interior_mesh(generate_background_mesh(default_box(), n), example_domain(0));
        double ey = 0.0, eq = 0.0;
        const int ex = std::min(2 * k + 4, 12);
        for (int K = 0; K < mesh.num_elements(); ++K) {
          const auto pr = sign > 0 ? project_hdg_state(mesh, K, k, q, y, constant_tau(1.0), kBeta)
                                   : project_hdg_adjoint(mesh, K, k, q, y, tau2_field(1.0), kBeta);
          const ElementBasis basis(mesh.element_vertices(K), k);
          for (const auto& qp : map_to_triangle(triangle_rule(ex), basis.vertices())) {
            const Eigen::VectorXd phi = basis.values(qp.x);
            ey += qp.w * std::pow(phi.dot(pr.scalar) - y(qp.x), 2);
            eq += qp.w * (Vec2(phi.dot(pr.vx), phi.dot(pr.vy)) - q(qp.x)).squaredNorm();
          }
        }
        errs.push_back({std::sqrt(ey), std::sqrt(eq)});
        hs.push_back(mesh.h_max());
      }
      for (std::size_t i = 1; i < errs.size(); ++i)
        for (int v = 0; v < 2; ++v) {
          const double order = std::log(errs[i - 1][v] / errs[i][v]) / std::log(hs[i - 1] / hs[i]);
          ++r.checks;
          r.worst = std::min(r.worst, order - k);
          if (!(order >= k + r.limit)) {
            ++r.failures;
            detail << "k=" << k << (sign > 0 ? " state" : " adjoint") << (v == 0 ? " scalar" : " vector")
                   << " order " << order << "; ";
          }
        }
    }
  r.detail = detail.str();
  return r;
}

SuiteResult lambda_suite(std::uint64_t seed) {
  SuiteResult r;
  r.name = "lambda identities";
  r.limit = 1e-12;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0), ul(0.0, 0.3);
  const std::array<Vec2, 3> tri{Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)};
  for (int k = 0; k <= 3; ++k) {
    const ElementBasis basis(tri, k);
    // p = (x, 0) and m = (1, 0): Lambda = -l / 2.
    const Eigen::VectorXd cx = from_nodal(basis, [&] {
                                 Eigen::VectorXd v(basis.size());
                                 const auto nodes = lattice_nodes(tri, k);
                                 for (int i = 0; i < basis.size(); ++i) v[i] = nodes[static_cast<std::size_t>(i)].x();
                                 return v;
                               }()).coeffs;
    const VectorElementPoly px{&basis, cx, Eigen::VectorXd::Zero(basis.size())};
    const Eigen::VectorXd c0 = Eigen::VectorXd::Zero(basis.size());
    Eigen::VectorXd cc = c0;
    cc[0] = u(rng);
    const VectorElementPoly constant{&basis, cc, c0};
    for (int s = 0; s < 10; ++s) {
      const Vec2 x(0.5 * (u(rng) + 1.0), 0.0);
      const double l = ul(rng);
      const double angle = u(rng);
      const Vec2 m(std::cos(angle), std::sin(angle));
      const double e_const = std::abs(lambda_value(constant, x, m, l, path_exactness(k)));
      const double e_lin = k >= 1 ? std::abs(lambda_value(px, x, Vec2(1, 0), l, path_exactness(k)) + l / 2) : 0.0;
      const double e_zero = std::abs(lambda_value(px, x, m, 0.0, path_exactness(k)));
      for (double e : {e_const, e_lin, e_zero}) {
        ++r.checks;
        r.worst = std::max(r.worst, e);
        if (!(e <= r.limit)) ++r.failures;
      }
    }
  }
  return r;
}

SuiteResult lambda_bound_suite(std::uint64_t seed, int fields, int patches) {
  SuiteResult r;
  r.name = "lambda bounds (a), (b)";
  r.limit = 1.0;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const ImplicitDomain domain = example_domain(1);
  const auto mesh = extract_interior_mesh(generate_background_mesh(default_box(), 16), domain);
  std::ostringstream detail;
  for (int k = 0; k <= 3; ++k) {
    const TransferMap map = build_transfer_map(mesh, domain, TransferStrategy::facet_normal, path_exactness(k));
    const int nf = static_cast<int>(map.facets.size());
    const int used = std::min(patches, nf);
    for (int p = 0; p < used; ++p) {
      const FacetTransfer& ft = map.facets[static_cast<std::size_t>(p * nf / used)];
      const ElementBasis basis(mesh.element_vertices(ft.element), k);
      const double c_ext = ext_constant(basis, ft);
      const double c_inv = inv_constant(basis.vertices(), k);
      for (int s = 0; s < fields; ++s) {
        Eigen::VectorXd cx(basis.size()), cy(basis.size());
        for (int i = 0; i < basis.size(); ++i) {
          cx[i] = gauss(rng);
          cy[i] = gauss(rng);
        }
        const LambdaBounds b = lambda_bounds(VectorElementPoly{&basis, cx, cy}, ft, c_ext, c_inv);
        for (double ratio : {b.lhs / std::max(b.rhs_a, 1e-300), b.lhs / std::max(b.rhs_b, 1e-300)}) {
          ++r.checks;
          if (b.lhs > 1e-300) r.worst = std::max(r.worst, ratio);
        }
        if (!b.pass_a()) ++r.failures;
        if (!b.pass_b()) ++r.failures;
      }
    }
  }
  return r;
}

std::vector<SuiteResult> run_property_suites(std::uint64_t seed) {
  return {projection_residual_suite(seed), projection_reproduction_suite(seed + 1), projection_rate_suite(),
          lambda_suite(seed + 2), lambda_bound_suite(seed + 3)};
}

}  // namespace tpmhdg
