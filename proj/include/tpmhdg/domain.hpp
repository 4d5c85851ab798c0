#pragma once

#include <string>

#include "tpmhdg/common.hpp"

namespace tpmhdg {

enum class DomainKind { circle, kidney, square, custom };

std::string to_string(DomainKind kind);

/// Curved domain described by a level-set function F: F < 0 inside, F > 0 outside.
class ImplicitDomain {
 public:
  ImplicitDomain(DomainKind kind, ScalarField value, VectorField gradient);

  /// F(x) = |x - c|^2 - radius_sq.
  static ImplicitDomain circle(const Vec2& center, double radius_sq);
  /// Kidney-shaped domain, F = (2 r^2 - (x + 0.5))^2 - r^2 + 0.1 with r^2 = (x + 0.5)^2 + y^2.
  static ImplicitDomain kidney();
  /// Axis-aligned box, F = max(|x - cx| - a, |y - cy| - b).
  static ImplicitDomain square(const BBox& box);

  double operator()(const Vec2& x) const { return value_(x); }
  double evaluate(const Vec2& x) const { return value_(x); }
  Vec2 gradient(const Vec2& x) const { return gradient_(x); }
  DomainKind kind() const { return kind_; }
  std::string name() const { return to_string(kind_); }

 private:
  DomainKind kind_;
  ScalarField value_;
  VectorField gradient_;
};

inline double evaluate_domain(const ImplicitDomain& domain, const Vec2& x) { return domain(x); }

struct RaySearch {
  int samples = 64;
  double tolerance = 1e-12;
  /// |F(origin)| below this counts as a boundary point (l = 0).
  double on_boundary = 1e-13;
};

/// Smallest t in [0, t_max] with F(origin + t * direction) = 0.
///
/// The interval is scanned with uniform samples to bracket the first sign
/// change, which is then refined by bisection. Throws NoRootInRange when no
/// sign change is found or when the origin lies outside the domain.
double ray_intersect(const ImplicitDomain& domain, const Vec2& origin, const Vec2& direction, double t_max,
                     const RaySearch& search = {});

}  // namespace tpmhdg
