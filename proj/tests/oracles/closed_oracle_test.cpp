#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gerbes/holonomy.hpp"
#include "gerbes/random.hpp"
#include "gerbes/surfaces.hpp"

namespace gerbes {
namespace {

constexpr double kTol = 1e-9;

// exp(i sum o_t rho_t) with o_t read off the stored orientation by hand.
cplx oracle(const SimplicialSurface& s, const std::vector<double>& rho) {
  double sum = 0.0;
  for (int t = 0; t < s.num_triangles(); ++t) sum += (*s.orientation())[t] * rho[t];
  return std::polar(1.0, sum);
}

TEST(ClosedOracle, TorusAngles) {
  auto s = surfaces::torus7();
  for (double theta : {0.0, std::numbers::pi / 2, std::numbers::pi, 2 * std::numbers::pi}) {
    std::vector<double> rho(s->num_triangles());
    for (int t = 0; t < s->num_triangles(); ++t) rho[t] = (*s->orientation())[t] * theta / s->num_triangles();
    EXPECT_LT(std::abs(holonomy_closed(trivial_gerbe(s, rho)) - std::polar(1.0, theta)), kTol);
  }
}

TEST(ClosedOracle, RandomGaugesOnStandardSurfaces) {
  Rng rng(31);
  for (auto s : {surfaces::torus7(), surfaces::icosahedron(), surfaces::torus_grid(3, 4)}) {
    for (int rep = 0; rep < 6; ++rep) {
      auto rho = random_rho(*s, rng, 2.0);
      auto g = random_gauge(s, rho, 2 + rep % 3, rng);
      for (unsigned ts : {0u, 5u}) EXPECT_LT(std::abs(holonomy_closed(g.G, ts) - oracle(*s, rho)), kTol);
    }
  }
}

TEST(ClosedOracle, TensorAndDual) {
  Rng rng(32);
  auto s = surfaces::torus7();
  for (int rep = 0; rep < 6; ++rep) {
    auto r1 = random_rho(*s, rng), r2 = random_rho(*s, rng);
    auto g1 = random_gauge(s, r1, 2, rng), g2 = random_gauge(s, r2, 3, rng);
    EXPECT_LT(std::abs(holonomy_closed(tensor_gerbe(g1.G, g2.G)) - oracle(*s, r1) * oracle(*s, r2)), kTol);
    EXPECT_LT(std::abs(holonomy_closed(dual_gerbe(g1.G)) - std::conj(oracle(*s, r1))), kTol);
  }
}

// A reflection of the icosahedron reverses orientation, so it conjugates.
TEST(ClosedOracle, ReflectionConjugates) {
  auto s = surfaces::icosahedron();
  // Swap the rings' neighbours: i -> 6 - i on 1..5 and 6 + ((5 - (i - 6)) % 5) on 6..10.
  std::vector<int> refl(12);
  refl[0] = 0;
  refl[11] = 11;
  for (int i = 0; i < 5; ++i) {
    refl[1 + i] = 1 + (5 - i) % 5;
    refl[6 + i] = 6 + (4 - i + 5) % 5;
  }
  SimplicialMap r(s, s, refl);
  for (int t = 0; t < s->num_triangles(); ++t) ASSERT_GE(r.image_triangle(t), 0) << "not a simplicial map";
  Rng rng(33);
  auto rho = random_rho(*s, rng);
  auto g = random_gauge(s, rho, 2, rng);
  EXPECT_LT(std::abs(holonomy_closed(g.G, r) - std::conj(oracle(*s, rho))), kTol);
}

}  // namespace
}  // namespace gerbes
