#pragma once

#include <array>
#include <vector>

#include "tpmhdg/common.hpp"

namespace tpmhdg {

enum class QuadKind { segment, triangle };

/// Reference rule. Segment rules live on [0, 1] (node.y() == 0);
/// triangle rules on {x, y >= 0, x + y <= 1}.
struct QuadRule {
  QuadKind kind = QuadKind::segment;
  std::vector<Vec2> nodes;
  std::vector<double> weights;
  int exactness = 0;

  std::size_t size() const { return weights.size(); }
};

/// Gauss-Legendre rules up to exactness 41, symmetric triangle rules up to exactness 12.
/// Throws UnsupportedOrder outside that range.
QuadRule quadrature(QuadKind kind, int exactness);

inline QuadRule segment_rule(int exactness) { return quadrature(QuadKind::segment, exactness); }
inline QuadRule triangle_rule(int exactness) { return quadrature(QuadKind::triangle, exactness); }

/// Physical quadrature point.
struct QuadPoint {
  Vec2 x;
  double w;
};

std::vector<QuadPoint> map_to_triangle(const QuadRule& rule, const std::array<Vec2, 3>& v);
std::vector<QuadPoint> map_to_segment(const QuadRule& rule, const Vec2& a, const Vec2& b);

}  // namespace tpmhdg
