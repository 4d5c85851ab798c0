#pragma once

#include <functional>

#include <Eigen/Dense>

namespace tpmhdg {

using Vec2 = Eigen::Vector2d;

using ScalarField = std::function<double(const Vec2&)>;
using VectorField = std::function<Vec2(const Vec2&)>;

/// Axis-aligned rectangle [lo.x, hi.x] x [lo.y, hi.y].
struct BBox {
  Vec2 lo;
  Vec2 hi;

  double width() const { return hi.x() - lo.x(); }
  double height() const { return hi.y() - lo.y(); }
  double area() const { return width() * height(); }
};

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Counterclockwise rotation by pi/2.
inline Vec2 rot90(const Vec2& a) { return Vec2(-a.y(), a.x()); }

}  // namespace tpmhdg
