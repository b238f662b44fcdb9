#include "gerbes/surfaces.hpp"

namespace gerbes::surfaces {

namespace {

SurfacePtr make(const std::vector<std::array<int, 3>>& tris, bool orient = true) {
  return std::make_shared<const SimplicialSurface>(SimplicialSurface::build(tris, orient));
}

}  // namespace

SurfacePtr square_disc() { return make({{0, 1, 2}, {0, 2, 3}}); }

SurfacePtr grid_disc(int m, int n) {
  std::vector<std::array<int, 3>> tris;
  auto id = [&](int i, int j) { return j * (m + 1) + i; };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) {
      tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return make(tris);
}

SurfacePtr torus7() {
  std::vector<std::array<int, 3>> tris;
  for (int i = 0; i < 7; ++i) {
    tris.push_back({i, (i + 1) % 7, (i + 3) % 7});
    tris.push_back({i, (i + 3) % 7, (i + 2) % 7});
  }
  return make(tris);
}

SurfacePtr torus_grid(int m, int n) {
  std::vector<std::array<int, 3>> tris;
  auto id = [&](int i, int j) { return ((j % n + n) % n) * m + ((i % m + m) % m); };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) {
      tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return make(tris);
}

SurfacePtr rp2() {
  return make({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
               {1, 2, 4}, {1, 3, 4}, {1, 3, 5}, {2, 3, 5}, {2, 4, 5}},
              false);
}

SurfacePtr icosahedron() {
  // Top 0, upper ring 1..5, lower ring 6..10, bottom 11.
  std::vector<std::array<int, 3>> tris;
  for (int i = 0; i < 5; ++i) {
    int u = 1 + i, un = 1 + (i + 1) % 5;
    int l = 6 + i, ln = 6 + (i + 1) % 5;
    tris.push_back({0, u, un});
    tris.push_back({u, l, un});
    tris.push_back({un, l, ln});
    tris.push_back({l, 11, ln});
  }
  return make(tris);
}

SurfacePtr klein(int m, int n) {
  std::vector<std::array<int, 3>> tris;
  auto id = [&](int i, int j) {
    if (j == n) {
      j = 0;
      i = m - i;
    }
    return j * m + ((i % m + m) % m);
  };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) {
      tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return make(tris, false);
}

SurfacePtr oriented(const SurfacePtr& s) {
  auto b = SimplicialSurface::build(s->triangle_list(), true, s->num_vertices());
  return std::make_shared<const SimplicialSurface>(std::move(b));
}

}  // namespace gerbes::surfaces
