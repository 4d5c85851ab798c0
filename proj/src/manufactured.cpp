#include "tpmhdg/manufactured.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace tpmhdg {

namespace {

constexpr double pi = std::numbers::pi;

ExactSolution sine_solution(const std::string& name, VectorField beta) {
  ExactSolution s;
  s.name = name;
  s.y = [](const Vec2& x) { return std::sin(pi * x.x()); };
  s.grad_y = [](const Vec2& x) { return Vec2(pi * std::cos(pi * x.x()), 0.0); };
  s.lap_y = [](const Vec2& x) { return -pi * pi * std::sin(pi * x.x()); };
  s.z = [](const Vec2& x) { return std::sin(pi * x.x()) * std::sin(pi * x.y()); };
  s.grad_z = [](const Vec2& x) {
    return Vec2(pi * std::cos(pi * x.x()) * std::sin(pi * x.y()), pi * std::sin(pi * x.x()) * std::cos(pi * x.y()));
  };
  s.lap_z = [](const Vec2& x) { return -2 * pi * pi * std::sin(pi * x.x()) * std::sin(pi * x.y()); };
  s.beta = std::move(beta);
  s.gamma = 1.0;
  return s;
}

struct Monomial {
  int a, b;
  double c;
};

double poly_value(const std::vector<Monomial>& p, const Vec2& x) {
  double v = 0.0;
  for (const auto& t : p) v += t.c * std::pow(x.x(), t.a) * std::pow(x.y(), t.b);
  return v;
}

Vec2 poly_grad(const std::vector<Monomial>& p, const Vec2& x) {
  Vec2 g = Vec2::Zero();
  for (const auto& t : p) {
    if (t.a > 0) g.x() += t.c * t.a * std::pow(x.x(), t.a - 1) * std::pow(x.y(), t.b);
    if (t.b > 0) g.y() += t.c * t.b * std::pow(x.x(), t.a) * std::pow(x.y(), t.b - 1);
  }
  return g;
}

double poly_lap(const std::vector<Monomial>& p, const Vec2& x) {
  double l = 0.0;
  for (const auto& t : p) {
    if (t.a > 1) l += t.c * t.a * (t.a - 1) * std::pow(x.x(), t.a - 2) * std::pow(x.y(), t.b);
    if (t.b > 1) l += t.c * t.b * (t.b - 1) * std::pow(x.x(), t.a) * std::pow(x.y(), t.b - 2);
  }
  return l;
}

std::vector<Monomial> fixed_poly(int k, double shift) {
  std::vector<Monomial> p;
  for (int d = 0; d <= k; ++d)
    for (int b = 0; b <= d; ++b) p.push_back({d - b, b, (1.0 + shift * b) / (1.0 + d + b)});
  return p;
}

}  // namespace

ExactSolution example1_solution() {
  return sine_solution("example1", [](const Vec2&) { return Vec2(1.0, 1.0); });
}

ExactSolution example2_solution() {
  return sine_solution("example2", [](const Vec2& x) { return Vec2(x.y(), x.x()); });
}

ExactSolution polynomial_solution(int k) {
  if (k < 0) throw std::invalid_argument("polynomial degree must be >= 0");
  const auto py = fixed_poly(k, 0.5);
  const auto pz = fixed_poly(k, -0.3);
  ExactSolution s;
  s.name = "poly" + std::to_string(k);
  s.y = [py](const Vec2& x) { return poly_value(py, x); };
  s.grad_y = [py](const Vec2& x) { return poly_grad(py, x); };
  s.lap_y = [py](const Vec2& x) { return poly_lap(py, x); };
  s.z = [pz](const Vec2& x) { return 0.5 * poly_value(pz, x); };
  s.grad_z = [pz](const Vec2& x) { return Vec2(0.5 * poly_grad(pz, x)); };
  s.lap_z = [pz](const Vec2& x) { return 0.5 * poly_lap(pz, x); };
  s.beta = [](const Vec2&) { return Vec2(1.0, 1.0); };
  s.gamma = 1.0;
  return s;
}

ExactSolution zero_solution(const VectorField& beta, double gamma) {
  ExactSolution s;
  s.name = "zero";
  s.y = s.lap_y = s.z = s.lap_z = [](const Vec2&) { return 0.0; };
  s.grad_y = s.grad_z = [](const Vec2&) { return Vec2(0.0, 0.0); };
  s.beta = beta;
  s.gamma = gamma;
  return s;
}

ProblemData derive_data(const ExactSolution& e) {
  ProblemData d;
  const double alpha = 1.0 / e.gamma;
  d.f = [e, alpha](const Vec2& x) { return -e.lap_y(x) + e.beta(x).dot(e.grad_y(x)) - alpha * e.z(x); };
  d.y_d = [e](const Vec2& x) { return -e.lap_z(x) - e.beta(x).dot(e.grad_z(x)) + e.y(x); };
  d.g = e.y;
  d.g_adj = e.z;
  d.beta = e.beta;
  d.gamma = e.gamma;
  return d;
}

ProblemData zero_data(const VectorField& beta, double gamma) { return derive_data(zero_solution(beta, gamma)); }

}  // namespace tpmhdg
