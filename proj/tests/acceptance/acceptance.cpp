// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "gerbes/examples.hpp"
#include "gerbes/holonomy.hpp"
#include "gerbes/jandl.hpp"
#include "gerbes/laws.hpp"
#include "gerbes/random.hpp"
#include "gerbes/surfaces.hpp"

using namespace gerbes;

namespace {

constexpr double kEps = 1e-9;
constexpr double kTwoCatBudgetSeconds = 60.0;
constexpr unsigned kSeed = 20240601;

// Frozen from the brute-force oracle over the 20-triangle sphere cover.
constexpr double kRp2Trivial = 1.0;
constexpr double kRp2Twisted = -1.0;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const SuiteEntry& suite(const std::string& name) {
  for (const auto& s : all_suites())
    if (s.name == name) return s;
  throw std::runtime_error("no suite " + name);
}

// Runs a law suite; fails on any failing law or on fewer cases than asked.
Suite run_suite(const std::string& name, int cases, Outcome& o, double* seconds = nullptr) {
  LawConfig cfg;
  cfg.cases = cases;
  cfg.seed = kSeed;
  cfg.eps = kEps;
  auto t0 = std::chrono::steady_clock::now();
  Suite r = suite(name).run(cfg);
  double dt = seconds_since(t0);
  if (seconds) *seconds = dt;
  double worst = 0.0;
  for (const auto& l : r) {
    if (std::isfinite(l.max_deviation)) worst = std::max(worst, l.max_deviation);
    if (!l.pass || l.cases < cases) {
      o.pass = false;
      o.detail << " " << l.name << "=FAIL(cases " << l.cases
               << (l.failures.empty() ? "" : ", " + l.failures.front()) << ")";
    }
  }
  o.detail << " " << name << ": " << r.size() << " laws x " << cases << " cases, max dev " << worst << ", "
           << static_cast<int>(dt * 10) / 10.0 << " s;";
  return r;
}

const LawResult* law(const Suite& s, const std::string& name) {
  for (const auto& l : s)
    if (l.name == name) return &l;
  return nullptr;
}

void require_exact(const Suite& s, const std::string& name, Outcome& o) {
  const LawResult* l = law(s, name);
  if (!l || !l->pass || l->max_deviation != 0.0) {
    o.pass = false;
    o.detail << " " << name << " not exact;";
  }
}

void observe(Outcome& o, double dev, double tol, const std::string& where) {
  if (!(dev <= tol)) {
    if (o.pass) o.detail << " first failure " << where << " dev " << dev << ";";
    o.pass = false;
  }
}

Outcome check_twocat() {
  Outcome o;
  double dt = 0.0;
  auto s = run_suite("twocat", 100, o, &dt);
  require_exact(s, "compose.associativity", o);
  if (dt >= kTwoCatBudgetSeconds) {
    o.pass = false;
    o.detail << " over the " << kTwoCatBudgetSeconds << " s budget;";
  }
  return o;
}

Outcome check_lemmas() {
  Outcome o;
  run_suite("lemmas", 100, o);
  return o;
}

Outcome check_invertibility() {
  Outcome o;
  auto s = run_suite("inverse", 100, o);
  if (!law(s, "invert.zigzag") || !law(s, "invert.not_invertible")) o.pass = false;
  return o;
}

Outcome check_descent() {
  Outcome o;
  run_suite("descent", 100, o);
  return o;
}

Outcome check_bun_functor() {
  Outcome o;
  auto s = run_suite("bun", 50, o);
  require_exact(s, "bun.curvature", o);
  return o;
}

Outcome check_closed_holonomy() {
  Outcome o;
  auto s = surfaces::torus7();
  const int nt = s->num_triangles();
  for (double theta : {0.0, std::numbers::pi / 2, std::numbers::pi, 2 * std::numbers::pi}) {
    std::vector<double> rho(nt);
    for (int t = 0; t < nt; ++t) rho[t] = s->orientation_sign(t) * theta / nt;
    observe(o, std::abs(holonomy_closed(trivial_gerbe(s, rho)) - std::polar(1.0, theta)), kEps,
            "theta " + std::to_string(theta));
  }
  Rng rng(kSeed);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    auto rho = random_rho(*s, rng, 2.0);
    auto g = random_gauge(s, rho, 2 + i % 4, rng);
    const cplx want = std::polar(1.0, oriented_sum(*s, rho));
    cplx h0 = holonomy_closed(g.G, 0), h1 = holonomy_closed(g.G, 1 + i);
    double dev = std::max({std::abs(h0 - want), std::abs(h1 - want), std::abs(h0 - h1)});
    worst = std::max(worst, dev);
    observe(o, dev, kEps, "gauge " + std::to_string(i));
  }
  o.detail << " 4 angles, 50 gauges x 2 seeds, max dev " << worst << ";";
  return o;
}

// Rank-n module on the single-index site of the square disc with edge transports U.
MorphPtr module(const GerbePtr& I, const std::vector<Mat>& U) {
  const auto& s = *I->base();
  const int n = static_cast<int>(U[0].rows());
  auto omega = trivial_rho(*I);
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

// exp(i sum rho) tr(prod U) around the boundary square in the orientation of triangle (0,1,2).
cplx direct(const SimplicialSurface& s, const std::vector<double>& rho, const std::vector<Mat>& U) {
  const int n = static_cast<int>(U[0].rows());
  int t012 = s.find_triangle(0, 1, 2);
  const auto& tr = s.triangle(t012);
  int forward = 0;
  for (int j = 0; j < 3; ++j)
    if (tr.v[j] == 0) forward = tr.v[(j + 1) % 3] == 1 ? 1 : -1;
  forward *= s.orientation_sign(t012);
  std::vector<int> loop = forward > 0 ? std::vector<int>{0, 1, 2, 3, 0} : std::vector<int>{0, 3, 2, 1, 0};
  Mat h = Mat::Identity(n, n);
  for (int i = 0; i < 4; ++i) {
    int e = s.find_edge(loop[i], loop[i + 1]);
    h = (s.edge(e).a == loop[i] ? U[e] : Mat(U[e].adjoint())) * h;
  }
  double sum = 0.0;
  for (int t = 0; t < s.num_triangles(); ++t) sum += s.orientation_sign(t) * rho[t];
  return std::polar(1.0, sum) * h.trace();
}

Outcome check_dbrane_holonomy() {
  Outcome o;
  auto s = surfaces::square_disc();
  Rng rng(kSeed + 1);
  double worst = 0.0;
  int runs = 0;
  for (int rank : {1, 2}) {
    for (int i = 0; i < 10; ++i) {
      auto rho = random_rho(*s, rng);
      auto I = trivial_gerbe(s, rho);
      std::vector<Mat> U;
      for (int e = 0; e < s->num_edges(); ++e) U.push_back(random_unitary(rank, rng));
      const cplx want = direct(*s, rho, U);
      auto E = module(I, U);
      auto g = random_gauge(s, rho, 2 + i % 3, rng);
      DBrane plain{full_support(*s), E};
      DBrane gauged{full_support(*s), atomize(compose_1(E, g.B))};
      for (unsigned seed : {0u, 7u}) {
        double dev = std::max(std::abs(holonomy_dbrane(I, plain, seed) - want),
                              std::abs(holonomy_dbrane(g.G, gauged, seed) - want));
        worst = std::max(worst, dev);
        ++runs;
        observe(o, dev, kEps, "rank " + std::to_string(rank) + " case " + std::to_string(i));
      }
    }
  }
  o.detail << " ranks 1,2: " << runs << " evaluations, max dev " << worst << ";";
  return o;
}

FundamentalDomain domain_of(const std::shared_ptr<const OrientationCover>& oc, int mask) {
  FundamentalDomain f;
  f.oc = oc;
  f.choice.resize(oc->base->num_triangles());
  for (std::size_t t = 0; t < f.choice.size(); ++t) f.choice[t] = (mask >> t) & 1;
  return f;
}

Outcome check_unoriented_holonomy() {
  Outcome o;
  double worst = 0.0;
  // Projective plane with G = I_0: every domain and two trivialization seeds.
  auto base = surfaces::rp2();
  auto oc = std::make_shared<const OrientationCover>(orientation_cover(base));
  auto I = trivial_gerbe(oc->cover, std::vector<double>(oc->cover->num_triangles(), 0.0));
  for (int sign : {1, -1}) {
    auto J = gauge_jandl(I, oc->sigma, sign);
    const double want = sign > 0 ? kRp2Trivial : kRp2Twisted;
    for (int mask = 0; mask < (1 << base->num_triangles()); ++mask)
      for (unsigned seed : {0u, 3u}) {
        double dev = std::abs(holonomy_unoriented(I, J, domain_of(oc, mask), seed) - want);
        worst = std::max(worst, dev);
        observe(o, dev, kEps, "rp2 sign " + std::to_string(sign) + " mask " + std::to_string(mask));
      }
  }
  // Same structures seen through a random gauge of I_0.
  for (const char* j : {"trivial", "twisted"}) {
    ExampleParams p;
    p.jandl = j;
    p.indices = 2;
    p.seed = kSeed;
    auto sc = make_example("rp2", p);
    const double want = std::string(j) == "trivial" ? kRp2Trivial : kRp2Twisted;
    for (unsigned seed : {0u, 1u, 2u, 5u}) {
      double dev = std::abs(holonomy_unoriented(sc.gerbe, *sc.jandl, fundamental_domain(sc.oc, seed), seed) - want);
      worst = std::max(worst, dev);
      observe(o, dev, kEps, std::string("rp2 gauged ") + j);
    }
  }
  // Torus as the oriented double cover of the Klein bottle, three distinct domains.
  for (const char* j : {"trivial", "twisted"}) {
    ExampleParams p;
    p.jandl = j;
    p.indices = 2;
    p.seed = kSeed;
    auto sc = make_example("klein", p);
    if (sc.oc->cover->euler_characteristic() != 0 || !sc.oc->cover->orientable() || !sc.oc->cover->connected()) {
      o.pass = false;
      o.detail << " klein cover is not a torus;";
    }
    if (!jandl_validate(sc.gerbe, *sc.jandl, kEps).ok()) {
      o.pass = false;
      o.detail << " klein jandl invalid;";
    }
    std::vector<std::vector<int>> seen;
    std::vector<cplx> values;
    for (unsigned seed = 0; seen.size() < 3 && seed < 64; ++seed) {
      auto f = fundamental_domain(sc.oc, seed);
      if (std::find(seen.begin(), seen.end(), f.choice) != seen.end()) continue;
      seen.push_back(f.choice);
      values.push_back(holonomy_unoriented(sc.gerbe, *sc.jandl, f, seed));
    }
    if (seen.size() < 3) o.pass = false;
    for (const auto& v : values) {
      double dev = std::abs(v - values.front());
      worst = std::max(worst, dev);
      observe(o, dev, kEps, std::string("klein ") + j);
    }
  }
  o.detail << " rp2 2x1024 domains x 2 seeds, klein 3 domains, max dev " << worst << ";";
  return o;
}

Outcome check_duality() {
  Outcome o;
  auto s = run_suite("duality", 20, o);
  for (const char* name : {"duality.gerbe_involution", "duality.morphism_involution", "duality.vertical",
                           "duality.horizontal", "duality.two_morphism_involution"})
    require_exact(s, name, o);
  const LawResult* h = law(s, "hol.dual");
  if (!h || h->cases < 20) o.pass = false;
  return o;
}

Outcome check_jandl_transport() {
  Outcome o;
  auto s = run_suite("jandl", 20, o);
  for (const char* name : {"jandl.transport_valid", "jandl.transport_composition", "jandl.transport_two_morphism"})
    if (!law(s, name)) {
      o.pass = false;
      o.detail << " missing " << name << ";";
    }
  return o;
}

}  // namespace

int main() {
  struct Row {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Row> rows{
      {1, "two-category axioms", check_twocat},
      {2, "t_mu identities and d_A cocycle/square", check_lemmas},
      {3, "invertibility and zig-zag; NotInvertible for rank >= 2", check_invertibility},
      {4, "descent: normalize_1 round trip and canonical reps", check_descent},
      {5, "Bun functor laws, exact curvature", check_bun_functor},
      {6, "closed holonomy on the torus", check_closed_holonomy},
      {7, "D-brane holonomy on the square disc", check_dbrane_holonomy},
      {8, "unoriented holonomy on RP2 and the Klein bottle cover", check_unoriented_holonomy},
      {9, "duality identities and hol of the dual gerbe", check_duality},
      {10, "Jandl transport along 1- and 2-morphisms", check_jandl_transport},
  };
  int failed = 0;
  for (const auto& r : rows) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      o = r.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    std::printf("%s %2d %s [%.1f s]%s\n", o.pass ? "PASS" : "FAIL", r.id, r.title, seconds_since(t0),
                o.detail.str().c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(rows.size()) - failed, rows.size());
  return failed == 0 ? 0 : 1;
}
