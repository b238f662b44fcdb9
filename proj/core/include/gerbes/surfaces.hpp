#pragma once

#include "gerbes/surface.hpp"

namespace gerbes::surfaces {

// Two triangles sharing a diagonal.
SurfacePtr square_disc();
// m x n grid of squares, two triangles each.
SurfacePtr grid_disc(int m, int n);
// 7 vertices, 14 triangles.
SurfacePtr torus7();
// m x n periodic grid.
SurfacePtr torus_grid(int m, int n);
// 6 vertices, 10 triangles.
SurfacePtr rp2();
// 12 vertices, 20 triangles.
SurfacePtr icosahedron();
// m x n grid glued with a flip along one direction.
SurfacePtr klein(int m, int n);

// Surfaces with an orientation stored when orientable.
SurfacePtr oriented(const SurfacePtr& s);

}  // namespace gerbes::surfaces
