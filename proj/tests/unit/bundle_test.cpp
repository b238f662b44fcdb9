#include <gtest/gtest.h>

#include <cmath>

#include "gerbes/bundle.hpp"
#include "gerbes/random.hpp"
#include "gerbes/surfaces.hpp"
#include "testing.hpp"

namespace gerbes {
namespace {

using testing::kEps;
using testing::seeds;

// Random rank-n bundle on the single-index site; tc taken from the loop determinant.
DiscreteBundle random_bundle(const SurfacePtr& s, int n, Rng& rng) {
  auto b = DiscreteBundle::empty(Cover::point(s), n);
  for (int e = 0; e < s->num_edges(); ++e) b.transport.set({e, 0}, random_unitary(n, rng));
  for (int t = 0; t < s->num_triangles(); ++t) b.tc.set({t, 0}, std::arg(triangle_loop(b, t, 0).determinant()));
  return b;
}

// Entry-by-entry Kronecker product, written independently of the library.
Mat kron_oracle(const Mat& a, const Mat& b) {
  const auto p = b.rows(), q = b.cols();
  Mat r = Mat::Zero(a.rows() * p, a.cols() * q);
  for (Eigen::Index row = 0; row < r.rows(); ++row)
    for (Eigen::Index col = 0; col < r.cols(); ++col) r(row, col) = a(row / p, col / q) * b(row % p, col % q);
  return r;
}

TEST(Bundle, TrivialIsValid) {
  auto s = surfaces::torus7();
  auto b = DiscreteBundle::trivial(Cover::point(s), 2);
  EXPECT_TRUE(validate_bundle(b, kEps).ok());
  EXPECT_EQ(triangle_loop(b, 3, 0), Mat::Identity(2, 2));
}

TEST(Bundle, NonUnitaryTransportRejected) {
  auto s = surfaces::square_disc();
  auto b = DiscreteBundle::trivial(Cover::point(s), 1);
  b.transport.set({0, 0}, scalar_mat(cplx(1.5, 0.0)));
  auto r = validate_bundle(b, kEps);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violations[0].law, "bundle.unitary");
}

TEST(Bundle, WrongCurvatureRejected) {
  auto s = surfaces::square_disc();
  auto b = DiscreteBundle::trivial(Cover::point(s), 1);
  b.tc.set({1, 0}, 0.25);
  auto r = validate_bundle(b, kEps);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violations[0].law, "bundle.det");
  EXPECT_NEAR(r.max_deviation, std::abs(cplx(1.0) - std::polar(1.0, 0.25)), 1e-15);
}

TEST(BundleProperty, TensorMatchesKronOracle) {
  for (auto seed : seeds(25)) {
    Rng rng(seed);
    auto s = random_surface(rng);
    int n1 = 1 + static_cast<int>(seed % 3), n2 = 1 + static_cast<int>((seed >> 4) % 2);
    auto b1 = random_bundle(s, n1, rng);
    auto b2 = random_bundle(s, n2, rng);
    auto t = tensor(b1, b2);
    ASSERT_EQ(t.rank, n1 * n2);
    for (int e = 0; e < s->num_edges(); ++e) EXPECT_EQ(t.U(e, 0), kron_oracle(b1.U(e, 0), b2.U(e, 0)));
    for (int f = 0; f < s->num_triangles(); ++f)
      EXPECT_DOUBLE_EQ(t.curv(f, 0), n2 * b1.curv(f, 0) + n1 * b2.curv(f, 0));
    EXPECT_TRUE(validate_bundle(t, 1e-8).ok());
  }
}

TEST(BundleProperty, DualIsInvolutive) {
  for (auto seed : seeds(25, 2)) {
    Rng rng(seed);
    auto s = random_surface(rng);
    auto b = random_bundle(s, 2, rng);
    EXPECT_TRUE(bundles_equal(dual(dual(b)), b));
    EXPECT_TRUE(validate_bundle(dual(b), kEps).ok());
  }
}

// Rank-1 loop holonomy is multiplicative under tensor and conjugated by dual.
TEST(BundleProperty, LineHolonomyCharacters) {
  for (auto seed : seeds(25, 3)) {
    Rng rng(seed);
    auto s = random_surface(rng);
    auto b1 = random_bundle(s, 1, rng);
    auto b2 = random_bundle(s, 1, rng);
    for (const auto& c : s->boundary_cycles()) {
      auto ic = single_index_cycle(c, 0);
      cplx h1 = cycle_holonomy(b1, ic), h2 = cycle_holonomy(b2, ic);
      EXPECT_LT(std::abs(cycle_holonomy(tensor(b1, b2), ic) - h1 * h2), kEps);
      EXPECT_LT(std::abs(cycle_holonomy(dual(b1), ic) - std::conj(h1)), kEps);
    }
  }
}

TEST(BundleProperty, IdentityMorphismAndComposition) {
  for (auto seed : seeds(10, 4)) {
    Rng rng(seed);
    auto s = random_surface(rng);
    auto b = random_bundle(s, 2, rng);
    auto id = identity_morphism(b);
    EXPECT_TRUE(validate_bundle_morphism(b, b, id, kEps).ok());
    auto idid = compose(id, id);
    for (int v = 0; v < s->num_vertices(); ++v) EXPECT_EQ(idid.m.at({v, 0}), Mat::Identity(2, 2));
    // A constant non-trivial vertex map does not intertwine generic transports.
    BundleMorphism f{Field<Mat>({s->num_vertices(), 1})};
    Mat g = random_unitary(2, rng);
    for (int v = 0; v < s->num_vertices(); ++v) f.m.set({v, 0}, g);
    EXPECT_FALSE(validate_bundle_morphism(b, b, f, kEps).ok());
  }
}

TEST(BundleProperty, PullbackAlongIdentity) {
  for (auto seed : seeds(10, 5)) {
    Rng rng(seed);
    auto s = random_surface(rng);
    auto b = random_bundle(s, 2, rng);
    EXPECT_TRUE(bundles_equal(pullback(b, SimplicialMap::identity(s)), b));
  }
}

TEST(Bundle, CycleTransportNeedsValidIndices) {
  auto s = surfaces::square_disc();
  auto b = DiscreteBundle::trivial(Cover::point(s), 1);
  auto c = single_index_cycle(s->boundary_cycles()[0], 0);
  EXPECT_EQ(cycle_holonomy(b, c), cplx(1.0));
  c.idx[1] = 1;
  EXPECT_THROW(cycle_transport(b, c), IndexNotValidOnEdge);
}

}  // namespace
}  // namespace gerbes
