#include "gerbes/examples.hpp"

#include <cmath>
#include <numbers>

#include "gerbes/random.hpp"
#include "gerbes/surfaces.hpp"

namespace gerbes {

namespace {

nlohmann::json params_json(const ExampleParams& p) {
  return {{"theta", p.theta}, {"jandl", p.jandl}, {"rank", p.rank}, {"indices", p.indices}, {"seed", p.seed}};
}

// Optionally replaces I by a random gauge G with B: G -> I.
struct Gauged {
  GerbePtr G;
  MorphPtr B;  // null when G = I
};

Gauged maybe_gauge(const SurfacePtr& s, const GerbePtr& I, int indices, Rng& rng) {
  if (indices <= 0) return {I, nullptr};
  auto g = random_gauge(s, trivial_rho(*I), indices, rng);
  return {g.G, g.B};
}

int jandl_sign(const std::string& j) {
  if (j == "trivial") return 1;
  if (j == "twisted") return -1;
  throw ParseError("jandl must be trivial or twisted, got '" + j + "'");
}

Scenario unoriented(const SurfacePtr& base, std::vector<double> base_rho, const ExampleParams& p, Rng& rng,
                    bool random_gauge_phases) {
  Scenario sc;
  sc.surface = base;
  sc.double_cover = true;
  sc.oc = std::make_shared<const OrientationCover>(orientation_cover(base));
  const auto& cover = sc.oc->cover;
  GerbePtr I = trivial_gerbe(cover, symmetric_rho(*sc.oc, base_rho));
  std::vector<cplx> gauge(cover->num_vertices(), cplx(1.0));
  if (random_gauge_phases)
    for (auto& g : gauge) g = random_phase(rng);
  JandlStructure J = gauge_jandl(I, sc.oc->sigma, jandl_sign(p.jandl), gauge);
  auto g = maybe_gauge(cover, I, p.indices, rng);
  sc.gerbe = g.G;
  if (g.B) {
    J = jandl_transport(g.B, J);
    sc.morphisms["B"] = g.B;
  }
  sc.jandl = std::move(J);
  sc.meta["mode"] = "unoriented";
  return sc;
}

// Rank-n morphism I_rho -> I_omega on the single-index site: along the boundary
// traversal each step carries D^(1/len) with D = diag(e^{i theta}, e^{-i theta}, 1, ...)
// (e^{i theta} for rank 1); interior edges are identity. omega absorbs det.
MorphPtr boundary_module(const GerbePtr& I, int rank, double theta) {
  const auto& s = *I->base();
  std::vector<Mat> step(s.num_edges(), Mat::Identity(rank, rank));
  for (const auto& c : s.boundary_cycles()) {
    const double a = theta / static_cast<double>(c.size());
    Mat D = Mat::Identity(rank, rank);
    if (rank == 1) D(0, 0) = std::polar(1.0, a);
    if (rank >= 2) {
      D(0, 0) = std::polar(1.0, a);
      D(1, 1) = std::polar(1.0, -a);
    }
    for (std::size_t i = 0; i < c.size(); ++i) step[c.edges[i]] = c.dirs[i] > 0 ? D : Mat(D.adjoint());
  }
  auto rho = trivial_rho(*I);
  std::vector<double> omega(rho);
  auto pt = Cover::point(I->base());
  DiscreteBundle probe = DiscreteBundle::empty(pt, rank);
  for (int e = 0; e < s.num_edges(); ++e) probe.transport.set({e, 0}, step[e]);
  for (int t = 0; t < s.num_triangles(); ++t)
    omega[t] += std::arg(triangle_loop(probe, t, 0).determinant()) / static_cast<double>(rank);
  OneMorphism m = empty_morphism(I, trivial_gerbe(I->base(), omega), pt, {{0, 0}}, rank);
  m.A.transport = probe.transport;
  set_morphism_curvature(m);
  for (int v = 0; v < s.num_vertices(); ++v) m.alpha.set({v, 0, 0}, Mat::Identity(rank, rank));
  return std::make_shared<const OneMorphism>(std::move(m));
}

Bits boundary_support(const SimplicialSurface& s) {
  Bits q(s.num_simplices());
  for (const auto& c : s.boundary_cycles())
    for (std::size_t i = 0; i < c.size(); ++i) {
      q.set(s.edge_simplex(c.edges[i]));
      q.set(s.vertex_simplex(c.vertices[i]));
    }
  return q;
}

}  // namespace

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"sphere", "torus", "klein", "rp2", "disc-brane", "random-gauge"};
  return names;
}

Scenario make_example(const std::string& name, const ExampleParams& p) {
  Rng rng(p.seed);
  Scenario sc;
  if (name == "sphere") {
    sc.surface = surfaces::icosahedron();
    auto rho = random_rho(*sc.surface, rng);
    auto g = maybe_gauge(sc.surface, trivial_gerbe(sc.surface, rho), p.indices, rng);
    sc.gerbe = g.G;
    if (g.B) sc.morphisms["B"] = g.B;
    sc.meta["mode"] = "closed";
  } else if (name == "torus") {
    sc.surface = surfaces::torus7();
    const int nt = sc.surface->num_triangles();
    std::vector<double> rho(nt);
    for (int t = 0; t < nt; ++t) rho[t] = sc.surface->orientation_sign(t) * p.theta / nt;
    auto g = maybe_gauge(sc.surface, trivial_gerbe(sc.surface, rho), p.indices, rng);
    sc.gerbe = g.G;
    if (g.B) sc.morphisms["B"] = g.B;
    sc.meta["mode"] = "closed";
  } else if (name == "klein") {
    auto base = surfaces::klein(3, 4);
    sc = unoriented(base, random_rho(*base, rng), p, rng, true);
  } else if (name == "rp2") {
    auto base = surfaces::rp2();
    sc = unoriented(base, std::vector<double>(base->num_triangles(), 0.0), p, rng, false);
  } else if (name == "disc-brane") {
    if (p.rank < 1) throw ParseError("disc-brane needs rank >= 1");
    sc.surface = surfaces::square_disc();
    auto I = trivial_gerbe(sc.surface, random_rho(*sc.surface, rng));
    MorphPtr E = random_conjugate(boundary_module(I, p.rank, p.theta), rng).E2;
    auto g = maybe_gauge(sc.surface, I, p.indices, rng);
    sc.gerbe = g.G;
    if (g.B) {
      sc.morphisms["B"] = g.B;
      E = atomize(compose_1(E, g.B));
    }
    sc.morphisms["E"] = E;
    sc.brane_support = boundary_support(*sc.surface);
    sc.brane_module = "E";
    sc.meta["mode"] = "dbrane";
  } else if (name == "random-gauge") {
    sc.surface = random_surface(rng, true);
    auto rho = random_rho(*sc.surface, rng);
    auto g = maybe_gauge(sc.surface, trivial_gerbe(sc.surface, rho), p.indices > 0 ? p.indices : 3, rng);
    sc.gerbe = g.G;
    sc.morphisms["B"] = g.B;
    sc.meta["mode"] = "closed";
  } else {
    throw ParseError("unknown example '" + name + "'");
  }
  sc.meta["example"] = name;
  sc.meta["params"] = params_json(p);
  return sc;
}

}  // namespace gerbes
