#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gerbes/examples.hpp"
#include "gerbes/holonomy.hpp"
#include "gerbes/random.hpp"
#include "gerbes/scenario.hpp"
#include "gerbes/surfaces.hpp"

namespace gerbes {
namespace {

constexpr double kTol = 1e-9;

// Rank-n module I_rho -> I_omega on the single-index site with the given edge
// transports; omega is fixed by the loop determinants.
MorphPtr module(const GerbePtr& I, const std::vector<Mat>& U) {
  const auto& s = *I->base();
  const int n = static_cast<int>(U[0].rows());
  auto rho = trivial_rho(*I);
  auto omega = rho;
  for (int t = 0; t < s.num_triangles(); ++t) {
    const auto& tr = s.triangle(t);
    Mat h = Mat::Identity(n, n);
    for (int j = 0; j < 3; ++j) h = (tr.sign[j] > 0 ? U[tr.e[j]] : Mat(U[tr.e[j]].adjoint())) * h;
    omega[t] += std::arg(h.determinant()) / n;
  }
  OneMorphism m = empty_morphism(I, trivial_gerbe(I->base(), omega), Cover::point(I->base()), {{0, 0}}, n);
  for (int e = 0; e < s.num_edges(); ++e) m.A.transport.set({e, 0}, U[e]);
  set_morphism_curvature(m);
  for (int v = 0; v < s.num_vertices(); ++v) m.alpha.set({v, 0, 0}, Mat::Identity(n, n));
  return std::make_shared<const OneMorphism>(std::move(m));
}

// exp(i sum rho) tr(U_30 U_23 U_12 U_01) around the square 0-1-2-3 in the
// direction induced by the stored orientation of triangle (0,1,2).
cplx direct(const SimplicialSurface& s, const std::vector<double>& rho, const std::vector<Mat>& U) {
  const int n = static_cast<int>(U[0].rows());
  int t012 = s.find_triangle(0, 1, 2);
  const auto& tr = s.triangle(t012);
  // Does the stored traversal of (0,1,2), flipped by its orientation sign, go 0 -> 1?
  int forward = 0;
  for (int j = 0; j < 3; ++j)
    if (tr.v[j] == 0) forward = tr.v[(j + 1) % 3] == 1 ? 1 : -1;
  forward *= s.orientation_sign(t012);
  std::vector<int> loop = forward > 0 ? std::vector<int>{0, 1, 2, 3, 0} : std::vector<int>{0, 3, 2, 1, 0};
  Mat h = Mat::Identity(n, n);
  for (int i = 0; i < 4; ++i) {
    int a = loop[i], b = loop[i + 1];
    int e = s.find_edge(a, b);
    h = (s.edge(e).a == a ? U[e] : Mat(U[e].adjoint())) * h;
  }
  double sum = 0.0;
  for (int t = 0; t < s.num_triangles(); ++t) sum += s.orientation_sign(t) * rho[t];
  return std::polar(1.0, sum) * h.trace();
}

class DBraneOracle : public ::testing::TestWithParam<int> {};

TEST_P(DBraneOracle, MatchesDirectFormula) {
  const int rank = GetParam();
  auto s = surfaces::square_disc();
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    Rng rng(seed * 7919);
    auto rho = random_rho(*s, rng);
    auto I = trivial_gerbe(s, rho);
    std::vector<Mat> U;
    for (int e = 0; e < s->num_edges(); ++e) U.push_back(random_unitary(rank, rng));
    auto E = module(I, U);
    ASSERT_TRUE(validate_1(*E, kTol).ok());
    const cplx want = direct(*s, rho, U);
    DBrane b{full_support(*s), E};
    ASSERT_TRUE(validate_dbrane(I, b, kTol).ok());
    for (unsigned ts : {0u, 1u}) EXPECT_LT(std::abs(holonomy_dbrane(I, b, ts) - want), kTol) << seed;
    // Same brane seen through a random gauge G -> I.
    auto g = random_gauge(s, rho, 3, rng);
    DBrane gb{full_support(*s), atomize(compose_1(E, g.B))};
    for (unsigned ts : {0u, 1u}) EXPECT_LT(std::abs(holonomy_dbrane(g.G, gb, ts) - want), kTol) << seed;
  }
}

INSTANTIATE_TEST_SUITE_P(Ranks, DBraneOracle, ::testing::Values(1, 2, 3));

// The example module rotates by diag(e^{i theta}, e^{-i theta}) once around
// the boundary: trace 2 cos theta for rank 2 and e^{i theta} for rank 1.
TEST(DBraneExample, ClosedForms) {
  for (double theta : {0.0, 0.7, std::numbers::pi / 2, 2.5}) {
    for (int rank : {1, 2}) {
      ExampleParams p;
      p.theta = theta;
      p.rank = rank;
      p.seed = 3;
      auto sc = make_example("disc-brane", p);
      auto b = sc.brane();
      ASSERT_TRUE(b.has_value());
      const double sum = oriented_sum(*sc.surface, trivial_rho(*sc.gerbe));
      const cplx tr = rank == 1 ? std::polar(1.0, theta) : cplx(2 * std::cos(theta), 0.0);
      EXPECT_LT(std::abs(holonomy_dbrane(sc.gerbe, *b) - std::polar(1.0, sum) * tr), kTol)
          << "theta " << theta << " rank " << rank;
    }
  }
}

}  // namespace
}  // namespace gerbes
