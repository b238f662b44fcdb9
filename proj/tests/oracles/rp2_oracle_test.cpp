#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "gerbes/jandl.hpp"
#include "gerbes/random.hpp"
#include "gerbes/surfaces.hpp"

namespace gerbes {
namespace {

// Unoriented holonomy of I_rho with a gauge Jandl structure of sign s, worked
// out on the base alone. A fundamental domain is a local orientation per
// triangle (flag +1 keeps the stored cyclic order). Its boundary consists of
// the edges where the two adjacent local orientations induce the same
// direction. Carrying an orientation around each boundary trail through the
// vertex stars tells whether the trail reverses orientation; every reversing
// trail contributes a factor s.
class Oracle {
 public:
  explicit Oracle(std::vector<std::array<int, 3>> tris) : tris_(std::move(tris)) {
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t)
      for (int j = 0; j < 3; ++j) {
        int a = tris_[t][j], b = tris_[t][(j + 1) % 3];
        edge_tris_[key(a, b)].push_back(t);
      }
  }

  std::set<std::pair<int, int>> boundary(const std::vector<int>& flag) const {
    std::set<std::pair<int, int>> out;
    for (const auto& [e, ts] : edge_tris_) {
      if (ts.size() != 2) continue;
      if (dir(ts[0], flag[ts[0]], e.first, e.second) == dir(ts[1], flag[ts[1]], e.first, e.second)) out.insert(e);
    }
    return out;
  }

  int reversing_trails(const std::vector<int>& flag) const {
    auto edges = boundary(flag);
    std::map<int, std::vector<int>> adj;
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (const auto& [v, n] : adj) EXPECT_EQ(n.size() % 2, 0u) << "boundary is not a cycle at " << v;
    int reversing = 0;
    std::set<std::pair<int, int>> used;
    for (auto first : edges) {
      if (used.count(first)) continue;
      // Greedy closed trail starting along `first`.
      std::vector<int> path{first.first, first.second};
      used.insert(first);
      while (path.back() != path.front()) {
        int x = path.back();
        int next = -1;
        for (int y : adj[x])
          if (!used.count(key(x, y))) {
            next = y;
            break;
          }
        if (next < 0) break;
        used.insert(key(x, next));
        path.push_back(next);
      }
      EXPECT_EQ(path.back(), path.front());
      reversing += reverses(path) ? 1 : 0;
    }
    return reversing;
  }

 private:
  static std::pair<int, int> key(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

  // +1 when triangle t with orientation flag f traverses a -> b.
  int dir(int t, int f, int a, int b) const {
    for (int j = 0; j < 3; ++j)
      if (tris_[t][j] == a) return (tris_[t][(j + 1) % 3] == b ? 1 : -1) * f;
    ADD_FAILURE() << "vertex not in triangle";
    return 0;
  }

  // Orientation flag on `to` coherent with (from, f) through the star of v.
  int rotate(int v, int from, int f, int to) const {
    std::map<int, int> flag{{from, f}};
    std::vector<int> todo{from};
    while (!todo.empty()) {
      int t = todo.back();
      todo.pop_back();
      for (int j = 0; j < 3; ++j) {
        int a = tris_[t][j], b = tris_[t][(j + 1) % 3];
        if (a != v && b != v) continue;
        for (int u : edge_tris_.at(key(a, b))) {
          if (u == t || flag.count(u)) continue;
          flag[u] = dir(u, 1, a, b) == -dir(t, flag[t], a, b) ? 1 : -1;
          todo.push_back(u);
        }
      }
    }
    return flag.at(to);
  }

  bool reverses(const std::vector<int>& path) const {
    const int n = static_cast<int>(path.size()) - 1;
    auto on_edge = [&](int i) { return edge_tris_.at(key(path[i], path[i + 1])).front(); };
    int t0 = on_edge(0), t = t0, f = 1;
    for (int i = 1; i < n; ++i) {
      int u = on_edge(i);
      f = rotate(path[i], t, f, u);
      t = u;
    }
    f = rotate(path[0], t, f, t0);
    return f != 1;
  }

  std::vector<std::array<int, 3>> tris_;
  std::map<std::pair<int, int>, std::vector<int>> edge_tris_;
};

struct Model {
  SurfacePtr base;
  std::shared_ptr<const OrientationCover> oc;
};

Model model(const SurfacePtr& base) { return {base, std::make_shared<const OrientationCover>(orientation_cover(base))}; }

FundamentalDomain domain(const Model& m, const std::vector<int>& choice) {
  FundamentalDomain f;
  f.oc = m.oc;
  f.choice = choice;
  return f;
}

std::vector<int> flags(const std::vector<int>& choice) {
  std::vector<int> f;
  for (int c : choice) f.push_back(c == 0 ? 1 : -1);
  return f;
}

// Values frozen from the oracle: with rho = 0 the two structures on the
// projective plane give +1 and -1 for every one of the 2^10 domains.
constexpr double kRp2Trivial = 1.0;
constexpr double kRp2Twisted = -1.0;

TEST(Rp2Oracle, FrozenValues) {
  auto m = model(surfaces::rp2());
  Oracle o(m.base->triangle_list());
  const int nt = m.base->num_triangles();
  ASSERT_EQ(nt, 10);
  ASSERT_EQ(m.oc->cover->num_triangles(), 20);
  for (int mask = 0; mask < (1 << nt); ++mask) {
    std::vector<int> choice(nt);
    for (int t = 0; t < nt; ++t) choice[t] = (mask >> t) & 1;
    int rev = o.reversing_trails(flags(choice));
    EXPECT_EQ(std::pow(1.0, rev), kRp2Trivial);
    EXPECT_EQ(std::pow(-1.0, rev), kRp2Twisted) << "mask " << mask;
  }
}

TEST(Rp2Oracle, BoundaryMatchesLibrary) {
  auto m = model(surfaces::rp2());
  Oracle o(m.base->triangle_list());
  Rng rng(8);
  for (int rep = 0; rep < 64; ++rep) {
    std::vector<int> choice(m.base->num_triangles());
    for (auto& c : choice) c = static_cast<int>(rng() & 1);
    std::set<std::pair<int, int>> lib;
    for (auto [e, d] : domain_boundary_edges(domain(m, choice))) {
      auto ed = m.base->edge(e);
      lib.insert({std::min(ed.a, ed.b), std::max(ed.a, ed.b)});
    }
    EXPECT_EQ(lib, o.boundary(flags(choice)));
  }
}

// Library holonomy over every fundamental domain of the projective plane.
TEST(Rp2Oracle, LibraryAgreesOnAllDomains) {
  auto m = model(surfaces::rp2());
  const int nt = m.base->num_triangles();
  auto I = trivial_gerbe(m.oc->cover, std::vector<double>(m.oc->cover->num_triangles(), 0.0));
  for (int sign : {1, -1}) {
    auto J = gauge_jandl(I, m.oc->sigma, sign);
    const double want = sign > 0 ? kRp2Trivial : kRp2Twisted;
    for (int mask = 0; mask < (1 << nt); ++mask) {
      std::vector<int> choice(nt);
      for (int t = 0; t < nt; ++t) choice[t] = (mask >> t) & 1;
      cplx h = holonomy_unoriented(I, J, domain(m, choice), mask % 3);
      ASSERT_LT(std::abs(h - cplx(want, 0.0)), 1e-9) << "sign " << sign << " mask " << mask;
    }
  }
}

// Klein bottle: the oracle's answer is domain independent and the library reproduces it.
TEST(KleinOracle, LibraryAgreesOnSampledDomains) {
  auto m = model(surfaces::klein(3, 4));
  Oracle o(m.base->triangle_list());
  Rng rng(21);
  auto base_rho = random_rho(*m.base, rng);
  double total = 0.0;
  for (double r : base_rho) total += r;
  auto I = trivial_gerbe(m.oc->cover, symmetric_rho(*m.oc, base_rho));
  for (int sign : {1, -1}) {
    auto J = gauge_jandl(I, m.oc->sigma, sign);
    std::optional<int> parity;
    for (int rep = 0; rep < 48; ++rep) {
      std::vector<int> choice(m.base->num_triangles());
      for (auto& c : choice) c = static_cast<int>(rng() & 1);
      int p = o.reversing_trails(flags(choice)) % 2;
      if (!parity) parity = p;
      EXPECT_EQ(p, *parity);
      cplx want = std::polar(1.0, total) * (p == 1 ? static_cast<double>(sign) : 1.0);
      EXPECT_LT(std::abs(holonomy_unoriented(I, J, domain(m, choice), rep) - want), 1e-9);
    }
    // The orientation character squares to zero on the Klein bottle.
    EXPECT_EQ(*parity, 0);
  }
}

}  // namespace
}  // namespace gerbes
