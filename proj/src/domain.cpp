#include "tpmhdg/domain.hpp"

#include <cmath>
#include <sstream>

#include "tpmhdg/error.hpp"

namespace tpmhdg {

std::string to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::circle: return "circle";
    case DomainKind::kidney: return "kidney";
    case DomainKind::square: return "square";
    case DomainKind::custom: return "custom";
  }
  return "custom";
}

ImplicitDomain::ImplicitDomain(DomainKind kind, ScalarField value, VectorField gradient)
    : kind_(kind), value_(std::move(value)), gradient_(std::move(gradient)) {}

ImplicitDomain ImplicitDomain::circle(const Vec2& center, double radius_sq) {
  return ImplicitDomain(
      DomainKind::circle, [center, radius_sq](const Vec2& x) { return (x - center).squaredNorm() - radius_sq; },
      [center](const Vec2& x) -> Vec2 { return 2.0 * (x - center); });
}

ImplicitDomain ImplicitDomain::kidney() {
  auto value = [](const Vec2& x) {
    const double X = x.x() + 0.5;
    const double r2 = X * X + x.y() * x.y();
    const double a = 2.0 * r2 - X;
    return a * a - r2 + 0.1;
  };
  auto gradient = [](const Vec2& x) -> Vec2 {
    const double X = x.x() + 0.5;
    const double Y = x.y();
    const double a = 2.0 * (X * X + Y * Y) - X;
    return Vec2(2.0 * a * (4.0 * X - 1.0) - 2.0 * X, 8.0 * a * Y - 2.0 * Y);
  };
  return ImplicitDomain(DomainKind::kidney, value, gradient);
}

ImplicitDomain ImplicitDomain::square(const BBox& box) {
  const Vec2 c = 0.5 * (box.lo + box.hi);
  const double a = 0.5 * box.width();
  const double b = 0.5 * box.height();
  auto value = [c, a, b](const Vec2& x) { return std::max(std::abs(x.x() - c.x()) - a, std::abs(x.y() - c.y()) - b); };
  auto gradient = [c, a, b](const Vec2& x) -> Vec2 {
    const double dx = std::abs(x.x() - c.x()) - a;
    const double dy = std::abs(x.y() - c.y()) - b;
    if (dx >= dy) return Vec2(x.x() >= c.x() ? 1.0 : -1.0, 0.0);
    return Vec2(0.0, x.y() >= c.y() ? 1.0 : -1.0);
  };
  return ImplicitDomain(DomainKind::square, value, gradient);
}

double ray_intersect(const ImplicitDomain& domain, const Vec2& origin, const Vec2& direction, double t_max,
                     const RaySearch& search) {
  const double f0 = domain(origin);
  if (std::abs(f0) <= search.on_boundary) return 0.0;
  if (f0 > 0.0) {
    std::ostringstream msg;
    msg << "ray origin (" << origin.x() << ", " << origin.y() << ") lies outside the domain, F = " << f0;
    throw NoRootInRange(msg.str());
  }

  double lo = 0.0;
  double hi = -1.0;
  for (int i = 1; i <= search.samples; ++i) {
    const double t = t_max * static_cast<double>(i) / search.samples;
    if (domain(origin + t * direction) >= 0.0) {
      hi = t;
      break;
    }
    lo = t;
  }
  if (hi < 0.0) {
    std::ostringstream msg;
    msg << "no boundary crossing within t_max = " << t_max << " from (" << origin.x() << ", " << origin.y()
        << ") along (" << direction.x() << ", " << direction.y() << ")";
    throw NoRootInRange(msg.str());
  }

  while (hi - lo > search.tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (domain(origin + mid * direction) >= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace tpmhdg
