#include "tpmhdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "tpmhdg/error.hpp"

namespace tpmhdg {

Triangulation::Triangulation(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  for (auto& t : triangles_) {
    const Vec2& a = vertices_[t[0]];
    if (cross2(vertices_[t[1]] - a, vertices_[t[2]] - a) < 0.0) std::swap(t[1], t[2]);
  }

  std::map<std::pair<int, int>, int> lookup;
  element_facets_.assign(triangles_.size(), {-1, -1, -1});
  for (int K = 0; K < num_elements(); ++K) {
    const auto& t = triangles_[K];
    for (int i = 0; i < 3; ++i) {
      const int a = t[i];
      const int b = t[(i + 1) % 3];
      const auto key = std::minmax(a, b);
      auto it = lookup.find(key);
      if (it == lookup.end()) {
        Facet f;
        f.v = {a, b};
        f.elem = {K, -1};
        f.local = {i, -1};
        lookup.emplace(key, static_cast<int>(facets_.size()));
        element_facets_[K][i] = static_cast<int>(facets_.size());
        facets_.push_back(f);
      } else {
        Facet& f = facets_[it->second];
        if (f.elem[1] >= 0) throw std::invalid_argument("non-manifold edge shared by more than two triangles");
        f.elem[1] = K;
        f.local[1] = i;
        element_facets_[K][i] = it->second;
      }
    }
  }
  for (int f = 0; f < num_facets(); ++f)
    if (facets_[f].is_boundary()) boundary_facets_.push_back(f);
}

std::array<Vec2, 3> Triangulation::element_vertices(int K) const {
  const auto& t = triangles_[K];
  return {vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]};
}

double Triangulation::signed_area(int K) const {
  const auto v = element_vertices(K);
  return 0.5 * cross2(v[1] - v[0], v[2] - v[0]);
}

double Triangulation::area(int K) const { return std::abs(signed_area(K)); }

double Triangulation::diameter(int K) const {
  const auto v = element_vertices(K);
  return std::max({(v[1] - v[0]).norm(), (v[2] - v[1]).norm(), (v[0] - v[2]).norm()});
}

double Triangulation::inradius(int K) const {
  const auto v = element_vertices(K);
  const double perimeter = (v[1] - v[0]).norm() + (v[2] - v[1]).norm() + (v[0] - v[2]).norm();
  return 2.0 * area(K) / perimeter;
}

Vec2 Triangulation::centroid(int K) const {
  const auto v = element_vertices(K);
  return (v[0] + v[1] + v[2]) / 3.0;
}

double Triangulation::facet_length(int f) const {
  return (vertices_[facets_[f].v[1]] - vertices_[facets_[f].v[0]]).norm();
}

Vec2 Triangulation::facet_normal(int f) const {
  const Vec2 d = vertices_[facets_[f].v[1]] - vertices_[facets_[f].v[0]];
  return Vec2(d.y(), -d.x()).normalized();
}

Vec2 Triangulation::facet_midpoint(int f) const {
  return 0.5 * (vertices_[facets_[f].v[0]] + vertices_[facets_[f].v[1]]);
}

Vec2 Triangulation::outward_normal(int K, int i) const {
  const auto& t = triangles_[K];
  const Vec2 d = vertices_[t[(i + 1) % 3]] - vertices_[t[i]];
  return Vec2(d.y(), -d.x()).normalized();
}

double Triangulation::opposite_height(int K, int i) const {
  const auto& t = triangles_[K];
  const double len = (vertices_[t[(i + 1) % 3]] - vertices_[t[i]]).norm();
  return 2.0 * area(K) / len;
}

double Triangulation::h_max() const {
  double h = 0.0;
  for (int K = 0; K < num_elements(); ++K) h = std::max(h, diameter(K));
  return h;
}

double Triangulation::shape_regularity() const {
  double g = 0.0;
  for (int K = 0; K < num_elements(); ++K) g = std::max(g, diameter(K) / inradius(K));
  return g;
}

double Triangulation::total_area() const {
  double a = 0.0;
  for (int K = 0; K < num_elements(); ++K) a += area(K);
  return a;
}

bool Triangulation::is_conforming() const {
  for (int K = 0; K < num_elements(); ++K)
    if (!(signed_area(K) > 0.0)) return false;
  for (const auto& f : facets_) {
    if (f.elem[0] < 0) return false;
    if (f.elem[1] >= 0) {
      // Interior facets must be traversed in opposite directions by their owners.
      const auto& t0 = triangles_[f.elem[0]];
      const auto& t1 = triangles_[f.elem[1]];
      if (t0[f.local[0]] != t1[(f.local[1] + 1) % 3] || t1[f.local[1]] != t0[(f.local[0] + 1) % 3]) return false;
    }
  }
  return true;
}

Triangulation generate_background_mesh(const BBox& box, int n) {
  if (n < 1) throw std::invalid_argument("background mesh needs n >= 1");
  std::vector<Vec2> vertices;
  vertices.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      vertices.emplace_back(box.lo.x() + box.width() * i / n, box.lo.y() + box.height() * j / n);

  std::vector<std::array<int, 3>> triangles;
  triangles.reserve(static_cast<std::size_t>(2 * n * n));
  auto id = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return Triangulation(std::move(vertices), std::move(triangles));
}

std::array<Vec2, 7> containment_probes(const std::array<Vec2, 3>& v) {
  return {v[0],
          v[1],
          v[2],
          0.5 * (v[0] + v[1]),
          0.5 * (v[1] + v[2]),
          0.5 * (v[2] + v[0]),
          (v[0] + v[1] + v[2]) / 3.0};
}

Triangulation extract_interior_mesh(const Triangulation& background, const ImplicitDomain& domain,
                                    double tolerance) {
  std::vector<int> remap(background.num_vertices(), -1);
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;
  for (int K = 0; K < background.num_elements(); ++K) {
    const auto probes = containment_probes(background.element_vertices(K));
    const bool inside = std::all_of(probes.begin(), probes.end(),
                                    [&](const Vec2& p) { return domain(p) <= tolerance; });
    if (!inside) continue;
    std::array<int, 3> t{};
    for (int i = 0; i < 3; ++i) {
      const int old = background.triangles()[K][i];
      if (remap[old] < 0) {
        remap[old] = static_cast<int>(vertices.size());
        vertices.push_back(background.vertices()[old]);
      }
      t[i] = remap[old];
    }
    triangles.push_back(t);
  }
  if (triangles.empty()) throw EmptyMesh("no background triangle lies inside the " + domain.name() + " domain");
  return Triangulation(std::move(vertices), std::move(triangles));
}

Triangulation generate_disk_mesh(const Vec2& center, double radius, int rings) {
  if (rings < 1) throw std::invalid_argument("disk mesh needs at least one ring");
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<Vec2> vertices{center};
  std::vector<int> ring_start{0};
  for (int i = 1; i <= rings; ++i) {
    ring_start.push_back(static_cast<int>(vertices.size()));
    const int count = 6 * i;
    const double r = radius * static_cast<double>(i) / rings;
    for (int j = 0; j < count; ++j) {
      const double theta = two_pi * j / count;
      vertices.push_back(center + r * Vec2(std::cos(theta), std::sin(theta)));
    }
  }

  std::vector<std::array<int, 3>> triangles;
  for (int j = 0; j < 6; ++j) triangles.push_back({0, 1 + j, 1 + (j + 1) % 6});

  for (int i = 2; i <= rings; ++i) {
    const int inner_n = 6 * (i - 1);
    const int outer_n = 6 * i;
    const int inner0 = ring_start[i - 1];
    const int outer0 = ring_start[i];
    int a = 0;
    int b = 0;
    // Sweep both rings by angle, always advancing the ring whose next vertex comes first.
    while (a < inner_n || b < outer_n) {
      const double next_inner = a < inner_n ? (a + 1.0) / inner_n : 2.0;
      const double next_outer = b < outer_n ? (b + 1.0) / outer_n : 2.0;
      const int ia = inner0 + a % inner_n;
      const int ob = outer0 + b % outer_n;
      if (next_outer <= next_inner) {
        triangles.push_back({ia, ob, outer0 + (b + 1) % outer_n});
        ++b;
      } else {
        triangles.push_back({ia, ob, inner0 + (a + 1) % inner_n});
        ++a;
      }
    }
  }
  return Triangulation(std::move(vertices), std::move(triangles));
}

void write_mesh(std::ostream& out, const Triangulation& mesh) {
  out << "tpmhdg-mesh v1\n" << mesh.num_vertices() << "\n" << mesh.num_elements() << "\n";
  out << std::setprecision(17);
  for (const auto& v : mesh.vertices()) out << v.x() << " " << v.y() << "\n";
  for (const auto& t : mesh.triangles()) out << t[0] << " " << t[1] << " " << t[2] << "\n";
}

Triangulation read_mesh(std::istream& in) {
  std::string line;
  std::getline(in, line);
  if (line != "tpmhdg-mesh v1") throw ParseError("unrecognized mesh header: " + line);
  int nv = 0;
  int nt = 0;
  in >> nv >> nt;
  std::vector<Vec2> vertices(static_cast<std::size_t>(nv));
  for (auto& v : vertices) in >> v.x() >> v.y();
  std::vector<std::array<int, 3>> triangles(static_cast<std::size_t>(nt));
  for (auto& t : triangles) in >> t[0] >> t[1] >> t[2];
  if (!in) throw ParseError("truncated mesh file");
  return Triangulation(std::move(vertices), std::move(triangles));
}

}  // namespace tpmhdg
