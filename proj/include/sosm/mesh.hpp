#pragma once

#include "sosm/common.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace sosm {

/// Boundary region labels used by the structured generators.
/// The unit-square sides map onto the T-junction ports so that the
/// same scenario plumbing can address either geometry.
enum BoundaryTag : int {
  kTagLeft = 1,    // = inlet 1
  kTagRight = 2,   // = outlet
  kTagBottom = 3,  // = wall
  kTagTop = 4,     // = inlet 2
  kTagInlet1 = kTagLeft,
  kTagOutlet = kTagRight,
  kTagWall = kTagBottom,
  kTagInlet2 = kTagTop,
};

/// A mesh edge. Global orientation runs from the lower to the higher
/// vertex index; the owner cell is the one with the lower cell index.
struct Facet {
  int v0 = -1, v1 = -1;          // global vertex ids, v0 < v1
  int cell_in = -1;              // owner cell
  int cell_out = -1;             // second cell, -1 on the boundary
  int local_in = -1;             // local edge index within cell_in
  int local_out = -1;
  int sign_in = 0;               // +1 when cell_in traverses v0 -> v1 ccw
  int sign_out = 0;
};

/// Immutable 2D conforming triangle mesh. Cells are counterclockwise.
/// Construction validates orientation and facet topology; refinement
/// returns a new mesh.
class Mesh {
 public:
  using TagFn = std::function<int(const Vec2&, const Vec2&)>;

  Mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> cells,
       const TagFn& boundary_tag_of) {
    vertices_ = std::move(vertices);
    cells_ = std::move(cells);
    if (cells_.empty()) throw Error("Mesh: no cells");
    build_connectivity();
    for (int f : boundary_facets_) {
      const Facet& e = facets_[f];
      boundary_tags_[f] = boundary_tag_of(vertices_[e.v0], vertices_[e.v1]);
    }
  }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_cells() const { return static_cast<int>(cells_.size()); }
  int num_facets() const { return static_cast<int>(facets_.size()); }

  const Vec2& vertex(int v) const { return vertices_[v]; }
  const std::array<int, 3>& cell(int c) const { return cells_[c]; }
  const Facet& facet(int f) const { return facets_[f]; }

  /// Facet index of local edge `le` of cell `c`. Local edge k joins the
  /// two vertices other than local vertex k.
  int cell_facet(int c, int le) const { return cell_facets_[c][le]; }

  bool is_boundary_facet(int f) const { return facets_[f].cell_out < 0; }

  int boundary_tag(int f) const {
    auto it = boundary_tags_.find(f);
    if (it == boundary_tags_.end()) throw Error("boundary_tag: interior facet");
    return it->second;
  }

  const std::vector<int>& boundary_facets() const { return boundary_facets_; }

  double cell_area(int c) const {
    const auto& t = cells_[c];
    Vec2 a = vertices_[t[1]] - vertices_[t[0]];
    Vec2 b = vertices_[t[2]] - vertices_[t[0]];
    return 0.5 * (a.x() * b.y() - a.y() * b.x());
  }

  /// Affine map of cell c: x = x0 + B xref.
  void cell_map(int c, Vec2& x0, Mat2& B) const {
    const auto& t = cells_[c];
    x0 = vertices_[t[0]];
    B.col(0) = vertices_[t[1]] - vertices_[t[0]];
    B.col(1) = vertices_[t[2]] - vertices_[t[0]];
  }

  Vec2 map_point(int c, const Vec2& xref) const {
    Vec2 x0;
    Mat2 B;
    cell_map(c, x0, B);
    return x0 + B * xref;
  }

  double total_area() const {
    double a = 0.0;
    for (int c = 0; c < num_cells(); ++c) a += cell_area(c);
    return a;
  }

 private:
  void build_connectivity() {
    std::map<std::pair<int, int>, int> edge_ids;
    cell_facets_.assign(cells_.size(), {-1, -1, -1});
    for (int c = 0; c < num_cells(); ++c) {
      if (cell_area(c) <= 0.0)
        throw Error("Mesh: cell " + std::to_string(c) +
                    " is not counterclockwise");
      const auto& t = cells_[c];
      for (int le = 0; le < 3; ++le) {
        int a = t[(le + 1) % 3];
        int b = t[(le + 2) % 3];
        int sign = a < b ? 1 : -1;
        auto key = std::minmax(a, b);
        auto [it, inserted] = edge_ids.try_emplace(key, num_facets());
        if (inserted) {
          Facet e;
          e.v0 = key.first;
          e.v1 = key.second;
          e.cell_in = c;
          e.local_in = le;
          e.sign_in = sign;
          facets_.push_back(e);
        } else {
          Facet& e = facets_[it->second];
          if (e.cell_out >= 0)
            throw Error("Mesh: facet shared by more than two cells");
          e.cell_out = c;
          e.local_out = le;
          e.sign_out = sign;
        }
        cell_facets_[c][le] = it->second;
      }
    }
    for (int f = 0; f < num_facets(); ++f)
      if (facets_[f].cell_out < 0) boundary_facets_.push_back(f);
  }

  std::vector<Vec2> vertices_;
  std::vector<std::array<int, 3>> cells_;
  std::vector<Facet> facets_;
  std::vector<std::array<int, 3>> cell_facets_;
  std::vector<int> boundary_facets_;
  std::map<int, int> boundary_tags_;
};

/// Side tags of the unit square by facet midpoint.
inline int unit_square_tag(const Vec2& a, const Vec2& b) {
  Vec2 mid = 0.5 * (a + b);
  const double eps = 1e-12;
  if (std::abs(mid.x()) < eps) return kTagLeft;
  if (std::abs(mid.x() - 1.0) < eps) return kTagRight;
  if (std::abs(mid.y()) < eps) return kTagBottom;
  if (std::abs(mid.y() - 1.0) < eps) return kTagTop;
  throw Error("unit_square_tag: facet not on the boundary of (0,1)^2");
}

/// Structured (m+1)^2-vertex, 2m^2-triangle mesh of the unit square.
/// Every small square is split along the same diagonal (lower-left to
/// upper-right) so DOF counts and convergence runs are reproducible.
inline Mesh build_unit_square(int m) {
  if (m < 1) throw Error("build_unit_square: need m >= 1");
  std::vector<Vec2> verts;
  verts.reserve((m + 1) * (m + 1));
  for (int j = 0; j <= m; ++j)
    for (int i = 0; i <= m; ++i)
      verts.emplace_back(double(i) / m, double(j) / m);
  auto vid = [m](int i, int j) { return j * (m + 1) + i; };
  std::vector<std::array<int, 3>> cells;
  cells.reserve(2 * m * m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      int v00 = vid(i, j), v10 = vid(i + 1, j);
      int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      cells.push_back({v00, v10, v11});
      cells.push_back({v00, v11, v01});
    }
  }
  return Mesh(std::move(verts), std::move(cells), unit_square_tag);
}

/// Uniform (red) refinement: each triangle is split into 4 congruent
/// children using edge midpoints. Boundary tags are inherited.
inline Mesh refine_uniform(const Mesh& mesh) {
  std::vector<Vec2> verts(mesh.num_vertices());
  for (int v = 0; v < mesh.num_vertices(); ++v) verts[v] = mesh.vertex(v);
  // One new vertex per facet.
  std::vector<int> midpoint(mesh.num_facets());
  for (int f = 0; f < mesh.num_facets(); ++f) {
    const Facet& e = mesh.facet(f);
    midpoint[f] = static_cast<int>(verts.size());
    verts.push_back(0.5 * (mesh.vertex(e.v0) + mesh.vertex(e.v1)));
  }
  std::vector<std::array<int, 3>> cells;
  cells.reserve(4 * mesh.num_cells());
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto& t = mesh.cell(c);
    int m0 = midpoint[mesh.cell_facet(c, 0)];  // opposite vertex 0: (v1,v2)
    int m1 = midpoint[mesh.cell_facet(c, 1)];  // (v2,v0)
    int m2 = midpoint[mesh.cell_facet(c, 2)];  // (v0,v1)
    cells.push_back({t[0], m2, m1});
    cells.push_back({m2, t[1], m0});
    cells.push_back({m1, m0, t[2]});
    cells.push_back({m2, m0, m1});
  }
  // Child boundary facets contain exactly one parent-edge midpoint;
  // match it by coordinates to inherit the parent tag.
  std::map<int, int> tag_of_midpoint;
  for (int f : mesh.boundary_facets())
    tag_of_midpoint[midpoint[f]] = mesh.boundary_tag(f);
  std::map<std::pair<long long, long long>, int> coord_tag;
  auto key_of = [](const Vec2& p) {
    return std::make_pair(static_cast<long long>(std::llround(p.x() * 1e12)),
                          static_cast<long long>(std::llround(p.y() * 1e12)));
  };
  for (auto [mv, tag] : tag_of_midpoint) coord_tag[key_of(verts[mv])] = tag;
  auto tag_by_coords = [&](const Vec2& a, const Vec2& b) {
    auto ita = coord_tag.find(key_of(a));
    if (ita != coord_tag.end()) return ita->second;
    auto itb = coord_tag.find(key_of(b));
    if (itb != coord_tag.end()) return itb->second;
    throw Error("refine_uniform: could not inherit boundary tag");
  };
  return Mesh(std::move(verts), std::move(cells), tag_by_coords);
}

/// Maximum cell diameter (longest edge over all cells).
inline double mesh_size(const Mesh& mesh) {
  if (mesh.num_cells() == 0) throw Error("mesh_size: empty mesh");
  double h = 0.0;
  for (int f = 0; f < mesh.num_facets(); ++f) {
    const Facet& e = mesh.facet(f);
    h = std::max(h, (mesh.vertex(e.v1) - mesh.vertex(e.v0)).norm());
  }
  return h;
}

/// Axis-aligned T-junction: horizontal channel (0,3)x(0,1) with a
/// vertical arm (1,2)x(1,2). Ports: inlet 1 at x=0, inlet 2 at y=2,
/// outlet at x=3; all other boundary is wall. Grid step 1/m.
inline Mesh build_t_junction(int m) {
  if (m < 1) throw Error("build_t_junction: need m >= 1");
  auto inside = [](double x, double y) {
    return (x > 0.0 && x < 3.0 && y > 0.0 && y < 1.0) ||
           (x > 1.0 && x < 2.0 && y > 1.0 && y < 2.0);
  };
  const int nx = 3 * m, ny = 2 * m;
  const double hstep = 1.0 / m;
  std::vector<int> vid((nx + 1) * (ny + 1), -1);
  std::vector<Vec2> verts;
  std::vector<std::array<int, 3>> cells;
  auto get_vid = [&](int i, int j) {
    int& id = vid[j * (nx + 1) + i];
    if (id < 0) {
      id = static_cast<int>(verts.size());
      verts.emplace_back(i * hstep, j * hstep);
    }
    return id;
  };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      double cx = (i + 0.5) * hstep, cy = (j + 0.5) * hstep;
      if (!inside(cx, cy)) continue;
      int v00 = get_vid(i, j), v10 = get_vid(i + 1, j);
      int v01 = get_vid(i, j + 1), v11 = get_vid(i + 1, j + 1);
      cells.push_back({v00, v10, v11});
      cells.push_back({v00, v11, v01});
    }
  }
  auto tag = [](const Vec2& a, const Vec2& b) {
    Vec2 mid = 0.5 * (a + b);
    const double eps = 1e-12;
    if (std::abs(mid.x()) < eps) return static_cast<int>(kTagInlet1);
    if (std::abs(mid.x() - 3.0) < eps) return static_cast<int>(kTagOutlet);
    if (std::abs(mid.y() - 2.0) < eps) return static_cast<int>(kTagInlet2);
    return static_cast<int>(kTagWall);
  };
  return Mesh(std::move(verts), std::move(cells), tag);
}

/// Plain-text mesh file:
///   VERT n / CELL m / BFACET k header lines, then n coordinate rows
///   "x y", m vertex-triple rows "a b c", and k tagged boundary rows
///   "v0 v1 tag". Whitespace separated decimals.
inline void write_mesh(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("write_mesh: cannot open " + path);
  out.precision(17);
  out << "VERT " << mesh.num_vertices() << "\n";
  out << "CELL " << mesh.num_cells() << "\n";
  out << "BFACET " << mesh.boundary_facets().size() << "\n";
  for (int v = 0; v < mesh.num_vertices(); ++v)
    out << mesh.vertex(v).x() << " " << mesh.vertex(v).y() << "\n";
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto& t = mesh.cell(c);
    out << t[0] << " " << t[1] << " " << t[2] << "\n";
  }
  for (int f : mesh.boundary_facets()) {
    const Facet& e = mesh.facet(f);
    out << e.v0 << " " << e.v1 << " " << mesh.boundary_tag(f) << "\n";
  }
  if (!out) throw Error("write_mesh: write failed for " + path);
}

inline Mesh read_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("read_mesh: cannot open " + path);
  std::string kw;
  int nv = 0, nc = 0, nb = 0;
  in >> kw >> nv;
  if (kw != "VERT") throw Error("read_mesh: expected VERT header");
  in >> kw >> nc;
  if (kw != "CELL") throw Error("read_mesh: expected CELL header");
  in >> kw >> nb;
  if (kw != "BFACET") throw Error("read_mesh: expected BFACET header");
  std::vector<Vec2> verts(nv);
  for (auto& p : verts) in >> p.x() >> p.y();
  std::vector<std::array<int, 3>> cells(nc);
  for (auto& t : cells) in >> t[0] >> t[1] >> t[2];
  std::map<std::pair<int, int>, int> tags;
  for (int i = 0; i < nb; ++i) {
    int a, b, t;
    in >> a >> b >> t;
    tags[std::minmax(a, b)] = t;
  }
  if (!in) throw Error("read_mesh: malformed file " + path);
  // Tags are matched by endpoint coordinates.
  std::map<std::pair<long long, long long>, int> dummy;
  auto tag_fn = [&verts, &tags](const Vec2& a, const Vec2& b) {
    for (auto& [key, t] : tags) {
      if ((verts[key.first] - a).norm() < 1e-12 &&
          (verts[key.second] - b).norm() < 1e-12)
        return t;
      if ((verts[key.first] - b).norm() < 1e-12 &&
          (verts[key.second] - a).norm() < 1e-12)
        return t;
    }
    throw Error("read_mesh: untagged boundary facet");
  };
  (void)dummy;
  return Mesh(std::move(verts), std::move(cells), tag_fn);
}

}  // namespace sosm
