#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "tpmhdg/common.hpp"
#include "tpmhdg/domain.hpp"

namespace tpmhdg {

/// Mesh edge. Vertices are ordered counterclockwise with respect to elem[0];
/// boundary facets have elem[1] == -1.
struct Facet {
  std::array<int, 2> v{-1, -1};
  std::array<int, 2> elem{-1, -1};
  std::array<int, 2> local{-1, -1};

  bool is_boundary() const { return elem[1] < 0; }
};

/// Conforming simplicial mesh of a polygonal region.
///
/// Local facet i of triangle K joins triangle vertices i and (i + 1) % 3.
class Triangulation {
 public:
  Triangulation() = default;
  /// Reorients clockwise triangles and builds the facet connectivity.
  Triangulation(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<int>& boundary_facets() const { return boundary_facets_; }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_elements() const { return static_cast<int>(triangles_.size()); }
  int num_facets() const { return static_cast<int>(facets_.size()); }

  std::array<Vec2, 3> element_vertices(int K) const;
  const std::array<int, 3>& element_facets(int K) const { return element_facets_[K]; }

  double area(int K) const;
  double signed_area(int K) const;
  double diameter(int K) const;
  double inradius(int K) const;
  Vec2 centroid(int K) const;

  double facet_length(int f) const;
  /// Unit normal of facet f, pointing out of elem[0].
  Vec2 facet_normal(int f) const;
  Vec2 facet_midpoint(int f) const;
  /// Outward unit normal of local facet i of element K.
  Vec2 outward_normal(int K, int i) const;
  /// Distance between local facet i of K and the opposite vertex.
  double opposite_height(int K, int i) const;

  double h_max() const;
  /// max_K h_K / rho_K.
  double shape_regularity() const;
  double total_area() const;

  /// Conformity check: positive areas, every facet owned by one or two elements.
  bool is_conforming() const;

 private:
  std::vector<Vec2> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<Facet> facets_;
  std::vector<std::array<int, 3>> element_facets_;
  std::vector<int> boundary_facets_;
};

/// n x n cells over the box, every cell cut by its (lo, lo) -> (hi, hi) diagonal.
Triangulation generate_background_mesh(const BBox& box, int n);

/// Seven probe points used by the containment test: vertices, edge midpoints, centroid.
std::array<Vec2, 7> containment_probes(const std::array<Vec2, 3>& v);

/// Keeps the triangles whose seven probes all satisfy F <= tolerance.
/// Throws EmptyMesh if nothing survives.
Triangulation extract_interior_mesh(const Triangulation& background, const ImplicitDomain& domain,
                                    double tolerance = 1e-12);

/// Quasi-uniform disk mesh with `rings` concentric rings (6 i vertices on ring i);
/// boundary vertices lie on the circle, so the boundary is a piecewise-linear interpolant.
Triangulation generate_disk_mesh(const Vec2& center, double radius, int rings);

/// Plain-text export: "tpmhdg-mesh v1", vertex count, triangle count, coordinates, 0-based triples.
void write_mesh(std::ostream& out, const Triangulation& mesh);
Triangulation read_mesh(std::istream& in);

}  // namespace tpmhdg
