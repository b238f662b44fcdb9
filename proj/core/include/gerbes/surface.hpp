#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gerbes/config.hpp"

namespace gerbes {

// Canonical orientation of an edge is a -> b.
struct Edge {
  int a = 0;
  int b = 0;
};

// v is the cyclic boundary order; e[j] is the edge v[j] -> v[j+1];
// sign[j] is +1 when that traversal agrees with the edge's canonical orientation.
struct Triangle {
  std::array<int, 3> v{};
  std::array<int, 3> e{};
  std::array<int, 3> sign{};
};

// Closed edge path: vertices[i] -> vertices[i+1 mod n] along edges[i];
// dirs[i] = +1 when the step follows the canonical orientation.
struct OrientedCycle {
  std::vector<int> vertices;
  std::vector<int> edges;
  std::vector<int> dirs;
  std::size_t size() const { return edges.size(); }
};

class SimplicialSurface {
 public:
  // Builds edges and incidences from vertex triples. With orient=true and an
  // orientable complex a coherent orientation is stored.
  static SimplicialSurface build(const std::vector<std::array<int, 3>>& tris, bool orient = false,
                                 int num_vertices = -1);

  int num_vertices() const { return nv_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_triangles() const { return static_cast<int>(tris_.size()); }
  int num_simplices() const { return nv_ + num_edges() + num_triangles(); }
  int euler_characteristic() const { return nv_ - num_edges() + num_triangles(); }

  // Global simplex numbering: vertices, then edges, then triangles.
  int vertex_simplex(int v) const { return v; }
  int edge_simplex(int e) const { return nv_ + e; }
  int triangle_simplex(int t) const { return nv_ + num_edges() + t; }
  int simplex_dim(int s) const;
  int simplex_local(int s) const;  // vertex/edge/triangle id inside its dimension
  std::vector<int> simplex_vertices(int s) const;
  std::vector<int> closure(int s) const;  // s and all of its faces

  const Edge& edge(int e) const { return edges_[e]; }
  const Triangle& triangle(int t) const { return tris_[t]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Triangle>& triangles() const { return tris_; }
  const std::vector<int>& edge_triangles(int e) const { return edge_tris_[e]; }
  const std::vector<int>& vertex_edges(int v) const { return vert_edges_[v]; }

  int find_edge(int a, int b) const;  // either orientation, -1 if absent
  int find_triangle(int a, int b, int c) const;
  int find_simplex(std::vector<int> verts) const;

  bool closed() const;
  bool orientable() const { return orientable_; }
  bool connected() const { return components_ == 1; }
  int num_components() const { return components_; }
  const std::optional<std::vector<int>>& orientation() const { return orientation_; }
  int orientation_sign(int t) const { return orientation_ ? (*orientation_)[t] : 1; }
  bool is_boundary_edge(int e) const { return edge_tris_[e].size() == 1; }

  // Boundary cycles oriented by the traversal of the adjacent triangle (taking
  // the stored orientation into account when present).
  std::vector<OrientedCycle> boundary_cycles() const;

  // Optional vertex names for scenario files.
  const std::vector<std::string>& vertex_names() const { return names_; }
  void set_vertex_names(std::vector<std::string> n) { names_ = std::move(n); }
  std::vector<std::array<int, 3>> triangle_list() const;

  bool operator==(const SimplicialSurface& o) const;

 private:
  int nv_ = 0;
  std::vector<Edge> edges_;
  std::vector<Triangle> tris_;
  std::vector<std::vector<int>> edge_tris_;
  std::vector<std::vector<int>> vert_edges_;
  std::optional<std::vector<int>> orientation_;
  bool orientable_ = true;
  int components_ = 1;
  std::vector<std::string> names_;
};

using SurfacePtr = std::shared_ptr<const SimplicialSurface>;

bool same_surface(const SurfacePtr& a, const SurfacePtr& b);

// Decomposes a balanced set of oriented edges into closed trails.
std::vector<OrientedCycle> decompose_cycles(const SimplicialSurface& s,
                                            const std::vector<std::pair<int, int>>& oriented_edges);

class SimplicialMap {
 public:
  SimplicialMap() = default;
  SimplicialMap(SurfacePtr source, SurfacePtr target, std::vector<int> vmap);

  const SurfacePtr& source() const { return src_; }
  const SurfacePtr& target() const { return tgt_; }
  const std::vector<int>& vertex_map() const { return vmap_; }

  int image_simplex(int s) const;  // target simplex spanned by the images
  int edge_sign(int e) const;      // +1/-1 agreement with image edge, 0 if degenerate
  int triangle_sign(int t) const;  // +1/-1 cyclic-order agreement, 0 if degenerate
  int image_edge(int e) const;     // -1 if degenerate
  int image_triangle(int t) const; // -1 if degenerate

  bool is_involution() const;
  static SimplicialMap identity(const SurfacePtr& s);
  // (this o g): first g, then this.
  SimplicialMap after(const SimplicialMap& g) const;

 private:
  SurfacePtr src_, tgt_;
  std::vector<int> vmap_;
};

struct OrientationCover {
  SurfacePtr base;
  SurfacePtr cover;     // coherently oriented, all orientation signs +1
  SimplicialMap pr;     // cover -> base
  SimplicialMap sigma;  // deck involution of the cover
  // Lift b in {0,1} of base triangle t is cover triangle 2t+b; lift 0 keeps the
  // stored cyclic order, lift 1 reverses it.
  int lift(int t, int b) const { return 2 * t + b; }
};

OrientationCover orientation_cover(const SurfacePtr& base);

struct FundamentalDomain {
  std::shared_ptr<const OrientationCover> oc;
  std::vector<int> choice;  // per base triangle: 0 or 1
  std::vector<int> triangles() const;
  FundamentalDomain flipped(int t) const;
};

// seed 0 grows a domain from triangle 0 keeping adjacent lifts (a whole sheet on
// orientable bases); other seeds pick lifts pseudo-randomly.
FundamentalDomain fundamental_domain(const std::shared_ptr<const OrientationCover>& oc,
                                     unsigned seed);

// Base edges of the projected domain boundary with their induced direction (+1/-1).
std::vector<std::pair<int, int>> domain_boundary_edges(const FundamentalDomain& f);
std::vector<OrientedCycle> domain_boundary(const FundamentalDomain& f);

}  // namespace gerbes
