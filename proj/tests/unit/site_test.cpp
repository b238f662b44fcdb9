#include <gtest/gtest.h>

#include "gerbes/random.hpp"
#include "gerbes/site.hpp"
#include "gerbes/surfaces.hpp"
#include "testing.hpp"

namespace gerbes {
namespace {

using testing::seeds;

Bits closure_of(const SimplicialSurface& s, std::initializer_list<int> tris) {
  Bits b(s.num_simplices());
  for (int t : tris) b.set(s.triangle_simplex(t));
  return downward_closure(s, b);
}

TEST(Site, DownwardClosure) {
  auto s = surfaces::square_disc();
  auto b = closure_of(*s, {0});
  EXPECT_EQ(b.count(), 7);
  auto both = closure_of(*s, {0, 1});
  EXPECT_EQ(both, full_support(*s));
  EXPECT_EQ((b & closure_of(*s, {1})).count(), 3);  // shared edge and its vertices
}

TEST(Site, PointCover) {
  auto s = surfaces::torus7();
  auto p = Cover::point(s);
  EXPECT_EQ(p->size(), 1);
  EXPECT_TRUE(p->label(0).empty());
  EXPECT_TRUE(p->surjective());
}

TEST(Site, FiberProductOfTwoHalves) {
  auto s = surfaces::square_disc();
  auto c = Cover::atomic(s, {closure_of(*s, {0}), closure_of(*s, {1})});
  auto c2 = fiber_product({c, c});
  // (0,0), (0,1), (1,0), (1,1): the halves overlap on the diagonal.
  ASSERT_EQ(c2->size(), 4);
  EXPECT_EQ(c2->comps(1), (std::vector<int>{0, 1}));
  EXPECT_EQ(c2->support(1).count(), 3);
  EXPECT_EQ(c2->index_of2(1, 0), 2);
  EXPECT_EQ(c2->index_of({1, 1}), 3);
}

TEST(Site, DisjointSupportsDropPairs) {
  auto s = surfaces::grid_disc(3, 1);
  auto c = Cover::atomic(s, {closure_of(*s, {0}), closure_of(*s, {5})});
  auto c2 = fiber_product({c, c});
  EXPECT_EQ(c2->size(), 2);
  EXPECT_EQ(c2->index_of2(0, 1), -1);
  EXPECT_FALSE(c->surjective());
}

// Tuples appear exactly when the supports intersect, lexicographically ordered,
// with the intersection as support.
TEST(SiteProperty, FiberProductMatchesBruteForce) {
  for (auto seed : seeds(30)) {
    Rng rng(seed);
    auto s = random_surface(rng);
    auto a = random_cover(s, 1 + static_cast<int>(seed % 5), rng);
    auto b = random_cover(s, 1 + static_cast<int>((seed >> 8) % 4), rng);
    auto ab = fiber_product({a, b});
    int expected = 0;
    std::vector<int> prev;
    for (int i = 0; i < a->size(); ++i)
      for (int j = 0; j < b->size(); ++j) {
        Bits both = a->support(i) & b->support(j);
        int k = ab->index_of({i, j});
        if (!both.any()) {
          EXPECT_EQ(k, -1);
          continue;
        }
        ASSERT_EQ(k, expected++);
        EXPECT_EQ(ab->support(k), both);
        EXPECT_EQ(ab->comps(k), (std::vector<int>{i, j}));
      }
    EXPECT_EQ(ab->size(), expected);
    EXPECT_TRUE(a->surjective());
    EXPECT_TRUE(ab->surjective());
  }
}

TEST(SiteProperty, PrunedProductAgreesWithFilter) {
  for (auto seed : seeds(20, 3)) {
    Rng rng(seed);
    auto s = random_surface(rng);
    auto a = random_cover(s, 4, rng);
    auto keep = [](const std::vector<int>& t) { return (t[0] + t[1] + t[2]) % 2 == 0; };
    auto filtered = fiber_product({a, a, a}, keep);
    auto pruned = fiber_product_pruned({a, a, a}, [&](const std::vector<int>& t, std::size_t j) {
      return j < 2 || keep(t);
    });
    EXPECT_TRUE(same_cover(filtered, pruned));
    for (int i = 0; i < filtered->size(); ++i) EXPECT_TRUE(keep(filtered->comps(i)));
  }
}

TEST(SiteProperty, SupportsAreDownwardClosed) {
  for (auto seed : seeds(20, 5)) {
    Rng rng(seed);
    auto s = random_surface(rng);
    auto c = random_cover(s, 5, rng);
    for (int i = 0; i < c->size(); ++i) EXPECT_EQ(downward_closure(*s, c->support(i)), c->support(i));
  }
}

TEST(SiteProperty, RandomRefinementIsValid) {
  for (auto seed : seeds(20, 9)) {
    Rng rng(seed);
    auto s = random_surface(rng);
    auto c = random_cover(s, 3, rng);
    auto r = random_refinement(c, rng);
    Refinement z{r.cover, c, r.to_old};
    EXPECT_TRUE(validate_refinement(z).ok());
    EXPECT_TRUE(validate_refinement(identity_refinement(c)).ok());
    auto common = common_refinement(z, identity_refinement(c));
    EXPECT_TRUE(validate_refinement(common).ok());
  }
}

TEST(Site, RefinementMissingSimplexFails) {
  auto s = surfaces::square_disc();
  auto c = Cover::atomic(s, {closure_of(*s, {0}), closure_of(*s, {1})});
  auto only0 = Cover::atomic(s, {closure_of(*s, {0})});
  Refinement z{only0, c, {0}};
  EXPECT_FALSE(validate_refinement(z).ok());
  // Support of the refining index must sit inside its image.
  Refinement bad{Cover::atomic(s, {full_support(*s)}), Cover::atomic(s, {closure_of(*s, {0})}), {0}};
  EXPECT_FALSE(validate_refinement(bad).ok());
}

TEST(Site, PullbackAlongRotation) {
  auto s = surfaces::torus7();
  std::vector<int> rot(7);
  for (int i = 0; i < 7; ++i) rot[i] = (i + 1) % 7;
  SimplicialMap r(s, s, rot);
  Rng rng(42);
  auto c = random_cover(s, 3, rng);
  auto pulled = pullback_cover(c, r);
  ASSERT_EQ(pulled.cover->size(), c->size());
  for (int i = 0; i < pulled.cover->size(); ++i) {
    int old = pulled.old_index[i];
    for (int sx = 0; sx < s->num_simplices(); ++sx)
      EXPECT_EQ(pulled.cover->valid(i, sx), c->valid(old, r.image_simplex(sx)));
  }
}

}  // namespace
}  // namespace gerbes
