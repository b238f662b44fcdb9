#include <gtest/gtest.h>

#include "gerbes/normalize.hpp"
#include "gerbes/random.hpp"
#include "gerbes/twomorphism.hpp"
#include "testing.hpp"

namespace gerbes {
namespace {

using testing::kEps;
using testing::seeds;

// Three gauged copies of trivial gerbes on one surface and random morphisms
// A: G1 -> G2 and B: G2 -> G3.
struct Chain {
  GaugedGerbe g1, g2, g3;
  RandomMorphism A, B;
};

Chain make_chain(std::uint64_t seed, int rank = 1) {
  Rng rng(seed);
  auto s = random_surface(rng);
  auto g1 = random_gauge(s, random_rho(*s, rng), 2, rng);
  auto e1 = random_trivial_morphism(g1.I, rank, rng);
  auto g2 = random_gauge(s, trivial_rho(*e1->tgt), 2, rng);
  auto e2 = random_trivial_morphism(g2.I, rank, rng);
  auto g3 = random_gauge(s, trivial_rho(*e2->tgt), 2, rng);
  auto A = random_morphism(g1, e1, g2, rng);
  auto B = random_morphism(g2, e2, g3, rng);
  return {g1, g2, g3, A, B};
}

TEST(TwoCatProperty, GeneratedMorphismsAreValid) {
  for (auto seed : seeds(20)) {
    auto c = make_chain(seed, 1 + static_cast<int>(seed % 2));
    EXPECT_TRUE(validate_1(*c.A.A, kEps).ok());
    EXPECT_TRUE(validate_1(*c.B.A, kEps).ok());
    EXPECT_TRUE(validate_2(c.A.iso, kEps).ok());
  }
}

TEST(TwoCatProperty, CompositionIsStrictlyAssociative) {
  for (auto seed : seeds(15, 1)) {
    auto c = make_chain(seed);
    Rng rng(seed);
    auto e3 = random_trivial_morphism(c.g3.I, 1, rng);
    auto g4 = random_gauge(c.g3.G->base(), trivial_rho(*e3->tgt), 2, rng);
    auto C = random_morphism(c.g3, e3, g4, rng);
    auto left = compose_1(C.A, compose_1(c.B.A, c.A.A));
    auto right = compose_1(compose_1(C.A, c.B.A), c.A.A);
    EXPECT_TRUE(morphisms_equal(*left, *right));
    EXPECT_EQ(factors(left).size(), 3u);
    EXPECT_TRUE(validate_1(*left, kEps).ok());
  }
}

TEST(TwoCatProperty, IdentityAndVerticalUnit) {
  for (auto seed : seeds(15, 2)) {
    auto c = make_chain(seed, 2);
    auto id = identity_2(c.A.A);
    EXPECT_TRUE(validate_2(id, kEps).ok());
    EXPECT_TRUE(equivalent_2(vertical(id, c.A.iso), c.A.iso, kEps));
    EXPECT_TRUE(equivalent_2(vertical(c.A.iso, identity_2(c.A.core)), c.A.iso, kEps));
  }
}

TEST(TwoCatProperty, HorizontalIsValidAndRespectsIdentities) {
  for (auto seed : seeds(15, 3)) {
    auto c = make_chain(seed);
    auto h = horizontal(c.B.iso, c.A.iso);
    auto r = validate_2(h, kEps);
    EXPECT_TRUE(r.ok()) << (r.ok() ? "" : r.violations[0].law);
    auto hid = horizontal(identity_2(c.B.A), identity_2(c.A.A));
    EXPECT_TRUE(equivalent_2(hid, identity_2(compose_1(c.B.A, c.A.A)), kEps));
  }
}

TEST(TwoCatProperty, UnitorsAreValid) {
  for (auto seed : seeds(10, 4)) {
    auto c = make_chain(seed, 2);
    EXPECT_TRUE(validate_2(left_unitor(c.A.A), kEps).ok());
    EXPECT_TRUE(validate_2(right_unitor(c.A.A), kEps).ok());
  }
}

TEST(TwoCatProperty, RankOneMorphismsInvert) {
  for (auto seed : seeds(10, 5)) {
    auto c = make_chain(seed);
    auto inv = invert(c.A.A);
    EXPECT_TRUE(validate_1(*inv.inv, kEps).ok());
    EXPECT_TRUE(validate_2(inv.i_l, kEps).ok());
    EXPECT_TRUE(validate_2(inv.i_r, kEps).ok());
  }
}

TEST(TwoCat, HigherRankIsNotInvertible) {
  for (auto seed : seeds(10, 6)) {
    auto c = make_chain(seed, 2);
    EXPECT_THROW(invert(c.A.A), NotInvertible);
    EXPECT_THROW(invert_1(c.A.A), NotInvertible);
  }
}

TEST(TwoCat, VerticalNeedsMatchingEndpoints) {
  auto c = make_chain(99);
  EXPECT_THROW(vertical(c.A.iso, c.B.iso), MorphismMismatch);
}

TEST(TwoCat, CompositionNeedsMatchingGerbes) {
  auto c = make_chain(98);
  EXPECT_THROW(compose_1(c.A.A, c.B.A), GerbeMismatch);
}

// A random vertex rescaling of beta breaks the connection condition.
TEST(TwoCatFaults, CorruptedBeta) {
  auto c = make_chain(97);
  TwoMorphismRep bad = c.A.iso;
  const int v = bad.src->A.site->base()->edge(0).a;
  auto idx = bad.W->valid_at(v);
  ASSERT_FALSE(idx.empty());
  bad.beta.set({v, idx[0]}, Mat(bad.b(v, idx[0]) * std::polar(1.0, 0.3)));
  EXPECT_FALSE(validate_2(bad, kEps).ok());
}

}  // namespace
}  // namespace gerbes
