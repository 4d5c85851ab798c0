#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tpmhdg/error.hpp"
#include "tpmhdg/mesh.hpp"
#include "tpmhdg/projections.hpp"
#include "tpmhdg/quadrature.hpp"
#include "tpmhdg/suites.hpp"

using namespace tpmhdg;

namespace {

const VectorField kBeta = [](const Vec2&) { return Vec2(1.0, 1.0); };
const VectorField kNoBeta = [](const Vec2&) { return Vec2(0.0, 0.0); };

Triangulation square_mesh(int n) {
  const BBox box{Vec2(-1, -1), Vec2(1, 1)};
  return extract_interior_mesh(generate_background_mesh(box, n), ImplicitDomain::square(box));
}

}  // namespace

TEST_CASE("facet L2 projection") {
  const Vec2 a(0.2, -0.1), b(0.5, 0.3);
  for (int k = 0; k <= 3; ++k) {
    const FacetBasis fb(a, b, k);
    std::mt19937_64 rng(k);
    std::uniform_real_distribution<double> u(-1, 1);
    Eigen::VectorXd c(k + 1);
    for (int i = 0; i <= k; ++i) c[i] = u(rng);
    const ScalarField f = [&](const Vec2& x) { return fb.values(x).dot(c); };
    CHECK((project_facet_l2(f, a, b, k, 2 * k + 2) - c).cwiseAbs().maxCoeff() <= 1e-12);

    const ScalarField s = [](const Vec2& x) { return std::sin(3 * x.x()) + x.y() * x.y(); };
    const Eigen::VectorXd p = project_facet_l2(s, a, b, k, 12);
    for (int j = 0; j <= k; ++j) {
      double r = 0;
      for (const auto& qp : map_to_segment(segment_rule(12), a, b)) r += qp.w * (s(qp.x) - fb.values(qp.x).dot(p)) * fb.values(qp.x)[j];
      CHECK(std::abs(r) <= 1e-10);
    }
  }
}

TEST_CASE("facet L2 projection error decays at order k + 1") {
  const ScalarField f = [](const Vec2& x) { return std::sin(x.x() + 2 * x.y()); };
  for (int k = 0; k <= 3; ++k) {
    std::vector<double> err;
    for (double len : {0.1, 0.05, 0.025}) {
      const Vec2 a(0.1, 0.1), b = a + len * Vec2(0.6, 0.8);
      const FacetBasis fb(a, b, k);
      const Eigen::VectorXd p = project_facet_l2(f, a, b, k, 12);
      double e = 0;
      for (const auto& qp : map_to_segment(segment_rule(20), a, b)) e += qp.w * std::pow(f(qp.x) - fb.values(qp.x).dot(p), 2);
      err.push_back(std::sqrt(e / len));  // per unit length
    }
    for (std::size_t i = 1; i < err.size(); ++i) CHECK(std::log2(err[i - 1] / err[i]) >= k + 1 - 0.1);
  }
}

TEST_CASE("HDG projections reproduce polynomial pairs") {
  const auto mesh = square_mesh(2);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k <= 3; ++k) {
    CHECK(3 * dim_pk(k) == 2 * dim_pk(k - 1) + dim_pk(k - 1) + 3 * (k + 1));
    for (int K = 0; K < mesh.num_elements(); ++K) {
      const ElementBasis basis(mesh.element_vertices(K), k);
      Eigen::VectorXd cx(basis.size()), cy(basis.size()), cs(basis.size());
      for (int i = 0; i < basis.size(); ++i) cx[i] = u(rng), cy[i] = u(rng), cs[i] = u(rng);
      const VectorField v = [&](const Vec2& x) { return Vec2(basis.values(x).dot(cx), basis.values(x).dot(cy)); };
      const ScalarField s = [&](const Vec2& x) { return basis.values(x).dot(cs); };
      const auto st = project_hdg_state(mesh, K, k, v, s, constant_tau(1.0), kBeta);
      CHECK(st.element == K);
      CHECK((st.scalar - cs).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((st.vx - cx).cwiseAbs().maxCoeff() <= 1e-12);
      const auto ad = project_hdg_adjoint(mesh, K, k, v, s, constant_tau(2.5), kBeta);
      CHECK((ad.scalar - cs).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((ad.vy - cy).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("without convection the two projections coincide") {
  const auto mesh = square_mesh(2);
  const VectorField q = [](const Vec2& x) { return Vec2(std::cos(x.y()), x.x() * x.x()); };
  const ScalarField y = [](const Vec2& x) { return std::exp(x.x() - x.y()); };
  for (int k = 0; k <= 2; ++k) {
    const auto a = project_hdg_state(mesh, 3, k, q, y, constant_tau(1.5), kNoBeta);
    const auto b = project_hdg_adjoint(mesh, 3, k, q, y, constant_tau(1.5), kNoBeta);
    CHECK((a.scalar - b.scalar).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK((a.vx - b.vx).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK((a.vy - b.vy).cwiseAbs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("zero stabilization without convection is singular") {
  const auto mesh = square_mesh(1);
  const VectorField q = [](const Vec2&) { return Vec2(1.0, 0.0); };
  const ScalarField y = [](const Vec2&) { return 1.0; };
  CHECK_THROWS_AS(project_hdg_state(mesh, 0, 0, q, y, constant_tau(0.0), kNoBeta), SingularLocalSystem);
}

TEST_CASE("projection suites on a reduced sample") {
  const auto residuals = projection_residual_suite(42, 2);
  CHECK(residuals.pass());
  CHECK(residuals.worst <= 1e-9);
  const auto reproduction = projection_reproduction_suite(43, 1);
  CHECK(reproduction.pass());
  const auto lambda = lambda_suite(44);
  CHECK(lambda.pass());
  const auto bounds = lambda_bound_suite(45, 10, 4);
  CHECK(bounds.pass());
  CHECK(bounds.worst <= 1.0);
}
