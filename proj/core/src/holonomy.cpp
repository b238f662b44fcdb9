#include "gerbes/holonomy.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gerbes/normalize.hpp"

namespace gerbes {

namespace {

int pick(const std::vector<int>& idx, std::mt19937_64* rng) {
  if (idx.empty()) throw InvalidGerbe("simplex without a valid index");
  if (!rng) return idx.front();
  std::uniform_int_distribution<std::size_t> d(0, idx.size() - 1);
  return idx[d(*rng)];
}

}  // namespace

Trivialization trivialize(const GerbePtr& g, unsigned seed) {
  Report rep = validate_gerbe(*g, tolerance());
  if (!rep.ok()) throw InvalidGerbe(rep.violations.front().law + " at " + rep.violations.front().where);
  if (seed == 0 && is_trivial_gerbe(*g)) return {identity_1(g), trivial_rho(*g)};
  const auto& s = *g->base();
  const auto& Y = *g->Y;
  const int n = Y.size();
  std::mt19937_64 gen(seed);
  std::mt19937_64* rng = seed == 0 ? nullptr : &gen;
  std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);

  std::vector<int> va(s.num_vertices());
  for (int v = 0; v < s.num_vertices(); ++v) va[v] = pick(Y.valid_at(v), rng);
  auto al = [&](int v, int i, int j) { return g->m(v, i, j, va[v]); };

  std::vector<std::pair<int, int>> legs;
  for (int i = 0; i < n; ++i) legs.emplace_back(i, 0);
  DiscreteBundle A = DiscreteBundle::empty(g->Y, 1);
  for (int e = 0; e < s.num_edges(); ++e) {
    auto idx = Y.valid_at(s.edge_simplex(e));
    int b = pick(idx, rng);
    cplx tau = rng ? std::polar(1.0, phase(gen)) : cplx(1.0);
    int v0 = s.edge(e).a, v1 = s.edge(e).b;
    for (int i : idx) {
      cplx t = al(v1, i, b) * g->u(e, i, b) * tau * std::conj(al(v0, i, b));
      A.transport.set({e, i}, scalar_mat(t));
    }
  }
  std::vector<double> rho(s.num_triangles());
  for (int t = 0; t < s.num_triangles(); ++t) {
    int b = pick(Y.valid_at(s.triangle_simplex(t)), rng);
    rho[t] = g->c(t, b) + std::arg(triangle_loop(A, t, b)(0, 0));
  }
  OneMorphism m = empty_morphism(g, trivial_gerbe(g->base(), rho), g->Y, legs, 1);
  m.A.transport = A.transport;
  set_morphism_curvature(m);
  for (int v = 0; v < s.num_vertices(); ++v) {
    auto idx = Y.valid_at(v);
    for (int i : idx)
      for (int j : idx) m.alpha.set({v, i, j}, scalar_mat(al(v, i, j)));
  }
  return {std::make_shared<const OneMorphism>(std::move(m)), rho};
}

namespace {

void require_oriented(const SimplicialSurface& s) {
  if (!s.orientable() || !s.orientation()) throw NotOriented("base has no stored orientation");
}

}  // namespace

cplx holonomy_closed(const GerbePtr& g, unsigned seed) {
  const auto& s = *g->base();
  if (!s.closed()) throw NotClosed("holonomy_closed needs a closed surface");
  require_oriented(s);
  Trivialization t = trivialize(g, seed);
  return std::polar(1.0, oriented_sum(s, t.rho));
}

cplx holonomy_closed(const GerbePtr& g, const SimplicialMap& phi, unsigned seed) {
  return holonomy_closed(pullback_gerbe(g, phi), seed);
}

Report validate_dbrane(const GerbePtr& g, const DBrane& b, double eps) {
  Report r;
  const auto& s = *g->base();
  if (b.Q.size() != s.num_simplices()) {
    r.fail("brane.support", "support has the wrong size");
    return r;
  }
  for (int x = 0; x < s.num_simplices(); ++x)
    if (b.Q.test(x))
      for (int y : s.closure(x))
        if (!b.Q.test(y)) r.fail("brane.closed", "simplex " + std::to_string(x));
  if (!same_gerbe(b.module->src, g)) r.fail("brane.source", "module source differs from the gerbe");
  if (!is_trivial_gerbe(*b.module->tgt)) r.fail("brane.target", "module target is not a trivial gerbe");
  r.merge(validate_1(*b.module, eps), "module.");
  return r;
}

cplx holonomy_dbrane(const GerbePtr& g, const DBrane& b, unsigned seed) {
  const auto& s = *g->base();
  require_oriented(s);
  if (!same_gerbe(b.module->src, g)) throw GerbeMismatch("module source differs from the gerbe");
  if (!is_trivial_gerbe(*b.module->tgt)) throw NotTrivialGerbe("module target is not trivial");
  auto cycles = s.boundary_cycles();
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!b.Q.test(s.edge_simplex(c.edges[i])) || !b.Q.test(s.vertex_simplex(c.vertices[i])))
        throw BoundaryNotOnBrane("boundary edge " + std::to_string(c.edges[i]) + " outside the brane");
  Trivialization t = trivialize(g, seed);
  MorphPtr m = compose_1(b.module, invert_1(t.T));
  DiscreteBundle E = bun(m);
  cplx h = std::polar(1.0, oriented_sum(s, t.rho));
  for (const auto& c : cycles) h *= trace_holonomy(E, single_index_cycle(c, 0));
  return h;
}

cplx holonomy_dbrane(const GerbePtr& g, const DBrane& b, const SimplicialMap& phi, unsigned seed) {
  const auto& src = *phi.source();
  DBrane pb;
  pb.Q = Bits(src.num_simplices());
  for (int x = 0; x < src.num_simplices(); ++x)
    if (b.Q.test(phi.image_simplex(x))) pb.Q.set(x);
  pb.module = pullback_1(b.module, phi);
  return holonomy_dbrane(pullback_gerbe(g, phi), pb, seed);
}

MorphPtr transport_left_module(const MorphPtr& e, const MorphPtr& a) { return compose_1(e, invert_1(a)); }

MorphPtr transport_right_module(const MorphPtr& f, const MorphPtr& a) { return compose_1(a, f); }

TwoMorphismRep left_module_roundtrip(const MorphPtr& e, const MorphPtr& a) {
  Inverse inv = invert(a);
  return vertical(left_unitor(e), horizontal(identity_2(e), inv.i_l));
}

MorphPtr exchange_module(const MorphPtr& e) { return dual_1(e); }

}  // namespace gerbes
