#include <gtest/gtest.h>

#include <map>
#include <set>

#include "gerbes/random.hpp"
#include "gerbes/surfaces.hpp"
#include "testing.hpp"

namespace gerbes {
namespace {

using testing::seeds;

TEST(Surface, EulerCharacteristicOfStandardModels) {
  EXPECT_EQ(surfaces::icosahedron()->euler_characteristic(), 2);
  EXPECT_EQ(surfaces::torus7()->euler_characteristic(), 0);
  EXPECT_EQ(surfaces::torus_grid(3, 3)->euler_characteristic(), 0);
  EXPECT_EQ(surfaces::rp2()->euler_characteristic(), 1);
  EXPECT_EQ(surfaces::klein(3, 4)->euler_characteristic(), 0);
  EXPECT_EQ(surfaces::square_disc()->euler_characteristic(), 1);
  EXPECT_EQ(surfaces::grid_disc(2, 3)->euler_characteristic(), 1);
}

TEST(Surface, Counts) {
  auto t = surfaces::torus7();
  EXPECT_EQ(t->num_vertices(), 7);
  EXPECT_EQ(t->num_edges(), 21);
  EXPECT_EQ(t->num_triangles(), 14);
  auto p = surfaces::rp2();
  EXPECT_EQ(p->num_vertices(), 6);
  EXPECT_EQ(p->num_edges(), 15);
  EXPECT_EQ(p->num_triangles(), 10);
}

TEST(Surface, Orientability) {
  EXPECT_TRUE(surfaces::torus7()->orientable());
  EXPECT_TRUE(surfaces::icosahedron()->orientable());
  EXPECT_TRUE(surfaces::square_disc()->orientable());
  EXPECT_FALSE(surfaces::rp2()->orientable());
  EXPECT_FALSE(surfaces::klein(3, 4)->orientable());
  EXPECT_FALSE(surfaces::rp2()->orientation().has_value());
  EXPECT_TRUE(surfaces::torus7()->orientation().has_value());
}

TEST(Surface, ClosedAndBoundary) {
  EXPECT_TRUE(surfaces::torus7()->closed());
  EXPECT_TRUE(surfaces::rp2()->closed());
  auto d = surfaces::square_disc();
  EXPECT_FALSE(d->closed());
  auto cycles = d->boundary_cycles();
  ASSERT_EQ(cycles.size(), 1u);
  EXPECT_EQ(cycles[0].size(), 4u);
  int interior = 0;
  for (int e = 0; e < d->num_edges(); ++e) interior += d->is_boundary_edge(e) ? 0 : 1;
  EXPECT_EQ(interior, 1);
}

TEST(Surface, NonManifoldEdgeRejected) {
  EXPECT_THROW(SimplicialSurface::build({{0, 1, 2}, {0, 1, 3}, {0, 1, 4}}), NonManifoldEdge);
}

TEST(Surface, SimplexNumbering) {
  auto s = surfaces::square_disc();
  EXPECT_EQ(s->simplex_dim(s->vertex_simplex(2)), 0);
  EXPECT_EQ(s->simplex_dim(s->edge_simplex(1)), 1);
  EXPECT_EQ(s->simplex_dim(s->triangle_simplex(1)), 2);
  EXPECT_EQ(s->simplex_local(s->triangle_simplex(1)), 1);
  EXPECT_EQ(s->closure(s->triangle_simplex(0)).size(), 7u);
  EXPECT_EQ(s->find_simplex({2, 0, 1}), s->triangle_simplex(s->find_triangle(0, 1, 2)));
  EXPECT_EQ(s->find_edge(1, 3), -1);
}

// Triangle incidence data agrees with the edge list, on random surfaces.
TEST(SurfaceProperty, IncidenceSigns) {
  for (auto seed : seeds(40)) {
    Rng rng(seed);
    auto s = random_surface(rng);
    for (int t = 0; t < s->num_triangles(); ++t) {
      const auto& tr = s->triangle(t);
      for (int j = 0; j < 3; ++j) {
        const auto& e = s->edge(tr.e[j]);
        int a = tr.v[j], b = tr.v[(j + 1) % 3];
        if (tr.sign[j] > 0) {
          EXPECT_EQ(e.a, a);
          EXPECT_EQ(e.b, b);
        } else {
          EXPECT_EQ(e.a, b);
          EXPECT_EQ(e.b, a);
        }
      }
    }
    for (int e = 0; e < s->num_edges(); ++e) {
      auto n = s->edge_triangles(e).size();
      EXPECT_TRUE(n == 1 || n == 2);
    }
  }
}

// A stored orientation traverses every interior edge once in each direction.
TEST(SurfaceProperty, StoredOrientationCoherent) {
  for (auto seed : seeds(40, 7)) {
    Rng rng(seed);
    auto s = random_surface(rng);
    if (!s->orientation()) continue;
    std::map<int, int> net;
    for (int t = 0; t < s->num_triangles(); ++t)
      for (int j = 0; j < 3; ++j) net[s->triangle(t).e[j]] += s->orientation_sign(t) * s->triangle(t).sign[j];
    for (int e = 0; e < s->num_edges(); ++e)
      if (!s->is_boundary_edge(e)) EXPECT_EQ(net[e], 0) << "edge " << e;
  }
}

TEST(SurfaceProperty, BoundaryCyclesCoverBoundaryOnce) {
  for (auto seed : seeds(40, 11)) {
    Rng rng(seed);
    auto s = random_surface(rng);
    std::multiset<int> seen;
    for (const auto& c : s->boundary_cycles()) {
      ASSERT_EQ(c.vertices.size(), c.size());
      for (std::size_t i = 0; i < c.size(); ++i) {
        seen.insert(c.edges[i]);
        const auto& e = s->edge(c.edges[i]);
        int from = c.dirs[i] > 0 ? e.a : e.b;
        int to = c.dirs[i] > 0 ? e.b : e.a;
        EXPECT_EQ(from, c.vertices[i]);
        EXPECT_EQ(to, c.vertices[(i + 1) % c.size()]);
      }
    }
    for (int e = 0; e < s->num_edges(); ++e) EXPECT_EQ(seen.count(e), s->is_boundary_edge(e) ? 1u : 0u);
  }
}

TEST(SimplicialMap, IdentityAndComposition) {
  auto s = surfaces::torus7();
  auto id = SimplicialMap::identity(s);
  for (int t = 0; t < s->num_triangles(); ++t) {
    EXPECT_EQ(id.image_triangle(t), t);
    EXPECT_EQ(id.triangle_sign(t), 1);
  }
  // Rotation i -> i+1 is an automorphism of the 7-vertex torus.
  std::vector<int> rot(7);
  for (int i = 0; i < 7; ++i) rot[i] = (i + 1) % 7;
  SimplicialMap r(s, s, rot);
  auto r7 = r;
  for (int i = 1; i < 7; ++i) r7 = r.after(r7);
  for (int v = 0; v < 7; ++v) EXPECT_EQ(r7.vertex_map()[v], v);
  for (int t = 0; t < s->num_triangles(); ++t) EXPECT_EQ(std::abs(r.triangle_sign(t)), 1);
}

class OrientationCoverTest : public ::testing::TestWithParam<int> {};

SurfacePtr closed_model(int i) {
  switch (i) {
    case 0: return surfaces::rp2();
    case 1: return surfaces::klein(3, 4);
    case 2: return surfaces::torus7();
    default: return surfaces::icosahedron();
  }
}

TEST_P(OrientationCoverTest, Invariants) {
  auto base = closed_model(GetParam());
  auto oc = orientation_cover(base);
  const auto& c = *oc.cover;
  EXPECT_EQ(c.num_triangles(), 2 * base->num_triangles());
  EXPECT_EQ(c.num_vertices(), 2 * base->num_vertices());
  EXPECT_EQ(c.num_edges(), 2 * base->num_edges());
  EXPECT_EQ(c.euler_characteristic(), 2 * base->euler_characteristic());
  EXPECT_TRUE(c.orientable());
  EXPECT_TRUE(c.closed());
  EXPECT_EQ(c.connected(), !base->orientable());
  EXPECT_TRUE(oc.sigma.is_involution());
  for (int v = 0; v < c.num_vertices(); ++v) {
    EXPECT_NE(oc.sigma.vertex_map()[v], v);
    EXPECT_EQ(oc.pr.vertex_map()[oc.sigma.vertex_map()[v]], oc.pr.vertex_map()[v]);
  }
  for (int t = 0; t < base->num_triangles(); ++t) {
    EXPECT_EQ(oc.pr.image_triangle(oc.lift(t, 0)), t);
    EXPECT_EQ(oc.pr.image_triangle(oc.lift(t, 1)), t);
    EXPECT_EQ(oc.sigma.image_triangle(oc.lift(t, 0)), oc.lift(t, 1));
    // sigma reverses the orientation of the cover.
    EXPECT_EQ(oc.sigma.triangle_sign(oc.lift(t, 0)), -1);
  }
}

TEST_P(OrientationCoverTest, FundamentalDomains) {
  auto base = closed_model(GetParam());
  auto oc = std::make_shared<const OrientationCover>(orientation_cover(base));
  for (unsigned seed : {0u, 1u, 2u, 3u, 17u}) {
    auto f = fundamental_domain(oc, seed);
    auto tris = f.triangles();
    ASSERT_EQ(static_cast<int>(tris.size()), base->num_triangles());
    std::set<int> orbits;
    for (int t : tris) orbits.insert(t / 2);
    EXPECT_EQ(static_cast<int>(orbits.size()), base->num_triangles());
    auto edges = domain_boundary_edges(f);
    std::set<int> es;
    for (auto [e, d] : edges) {
      EXPECT_TRUE(es.insert(e).second) << "edge listed twice";
      EXPECT_TRUE(d == 1 || d == -1);
    }
    // Flipping one triangle toggles exactly its three edges.
    for (int t : {0, base->num_triangles() - 1}) {
      std::set<int> flipped;
      for (auto [e, d] : domain_boundary_edges(f.flipped(t))) flipped.insert(e);
      std::set<int> diff;
      std::set_symmetric_difference(es.begin(), es.end(), flipped.begin(), flipped.end(),
                                    std::inserter(diff, diff.begin()));
      std::set<int> own(base->triangle(t).e.begin(), base->triangle(t).e.end());
      EXPECT_EQ(diff, own);
    }
  }
  if (base->orientable()) {
    // Seed 0 keeps a whole sheet, so the boundary is empty.
    EXPECT_TRUE(domain_boundary_edges(fundamental_domain(oc, 0)).empty());
  } else {
    EXPECT_FALSE(domain_boundary_edges(fundamental_domain(oc, 0)).empty());
  }
}

INSTANTIATE_TEST_SUITE_P(Models, OrientationCoverTest, ::testing::Values(0, 1, 2, 3));

TEST(OrientationCover, NeedsClosedSurface) {
  EXPECT_THROW(orientation_cover(surfaces::square_disc()), NotClosed);
}

}  // namespace
}  // namespace gerbes
