#include "gerbes/jandl.hpp"

#include <cmath>

#include "gerbes/normalize.hpp"

namespace gerbes {

namespace {

double canon_gap(const TwoMorphismRep& a, const TwoMorphismRep& b) {
  return canonical_distance(make_two(a), make_two(b));
}

}  // namespace

Report jandl_validate(const GerbePtr& g, const JandlStructure& j, double eps) {
  Report r;
  const auto& k = j.k;
  if (!k.source() || !same_surface(k.source(), g->base()) || !same_surface(k.target(), g->base()) ||
      !k.is_involution()) {
    r.fail("jandl.involution", "k is not an involution of the base");
    return r;
  }
  if (j.A->rank != 1) r.fail("jandl.rank", "A has rank " + std::to_string(j.A->rank));
  if (!same_gerbe(j.A->src, pullback_gerbe(g, k))) r.fail("jandl.source", "A does not start at k*G");
  if (!same_gerbe(j.A->tgt, dual_gerbe(g))) r.fail("jandl.target", "A does not end at G*");
  r.merge(validate_1(*j.A, eps), "A.");
  r.merge(validate_2(j.phi, eps), "phi.");
  if (!r.ok()) return r;
  if (!same_morphism(j.phi.src, pullback_1(j.A, k), eps)) r.fail("jandl.phi.source", "phi does not start at k*A");
  if (!same_morphism(j.phi.tgt, dual_1(j.A), eps)) r.fail("jandl.phi.target", "phi does not end at A*");
  if (!r.ok()) return r;
  try {
    double d = canon_gap(pullback_2(j.phi, k), inverse_2(dual_2(j.phi)));
    r.check("jandl.condition", d, eps, "k*phi vs phi*^-1");
  } catch (const Error& e) {
    r.fail("jandl.condition", e.what());
  }
  return r;
}

Report jandl_morphism_validate(const JandlStructure& j1, const JandlStructure& j2, const TwoMorphismRep& beta,
                               double eps) {
  Report r = validate_2(beta, eps);
  if (!same_morphism(beta.src, j1.A, eps) || !same_morphism(beta.tgt, j2.A, eps))
    r.fail("jandl.morphism.ends", "beta is not A => A'");
  if (!r.ok()) return r;
  try {
    TwoMorphismRep lhs = vertical(j2.phi, pullback_2(beta, j1.k));
    TwoMorphismRep rhs = vertical(dual_2(beta), j1.phi);
    r.check("jandl.morphism.square", canon_gap(lhs, rhs), eps, "phi' k*beta vs beta* phi");
  } catch (const Error& e) {
    r.fail("jandl.morphism.square", e.what());
  }
  return r;
}

bool jandl_equivalent(const JandlStructure& j1, const JandlStructure& j2, double eps) {
  auto beta = solve_2iso(j1.A, j2.A);
  return beta && jandl_morphism_validate(j1, j2, *beta, eps).ok();
}

JandlStructure jandl_transport(const MorphPtr& b, const JandlStructure& j) {
  if (b->rank != 1) throw NotInvertible("J_B needs a 1-isomorphism");
  MorphPtr kb = pullback_1(b, j.k);
  MorphPtr bd = dual_1(b);
  JandlStructure out;
  out.k = j.k;
  out.A = compose_chain({kb, j.A, bd});
  out.phi = horizontal(identity_2(pullback_1(bd, j.k)), horizontal(j.phi, identity_2(b)));
  return out;
}

TwoMorphismRep jandl_transport_2(const MorphPtr& b, const SimplicialMap& k, const TwoMorphismRep& beta) {
  return horizontal(identity_2(dual_1(b)), horizontal(beta, identity_2(pullback_1(b, k))));
}

Report validate_equivariant(const EquivariantLineBundle& e, double eps) {
  Report r;
  const auto& s = *e.sigma.source();
  if (static_cast<int>(e.phi.size()) != s.num_vertices()) {
    r.fail("equivariant.shape", "phi has the wrong length");
    return r;
  }
  r.merge(validate_bundle(e.R, eps), "R.");
  const auto& vm = e.sigma.vertex_map();
  for (int v = 0; v < s.num_vertices(); ++v) {
    r.check("equivariant.unit", std::abs(std::abs(e.phi[v]) - 1.0), eps, "vertex " + std::to_string(v));
    r.check("equivariant.involutive", std::abs(e.phi[v] * e.phi[vm[v]] - 1.0), eps, "vertex " + std::to_string(v));
  }
  DiscreteBundle kr = pullback(e.R, e.sigma);
  for (int ed = 0; ed < s.num_edges(); ++ed) {
    int v0 = s.edge(ed).a, v1 = s.edge(ed).b;
    cplx lhs = e.phi[v1] * kr.U(ed, 0)(0, 0);
    cplx rhs = e.R.U(ed, 0)(0, 0) * e.phi[v0];
    r.check("equivariant.connection", std::abs(lhs - rhs), eps, "edge " + std::to_string(ed));
  }
  return r;
}

EquivariantLineBundle jandl_to_equivariant(const JandlStructure& j) {
  EquivariantLineBundle e;
  e.sigma = j.k;
  e.R = bun(j.A);
  BundleMorphism m = bun_2(j.phi);
  const int nv = j.k.source()->num_vertices();
  e.phi.resize(nv);
  for (int v = 0; v < nv; ++v) e.phi[v] = m.m.at({v, 0})(0, 0);
  return e;
}

namespace {

int corner(const SimplicialSurface& cover, const SimplicialMap& pr, int tri, int base_vertex) {
  for (int x : cover.triangle(tri).v)
    if (pr.vertex_map()[x] == base_vertex) return x;
  throw NotEquivariant("lift does not contain the vertex");
}

}  // namespace

cplx holonomy_unoriented(const GerbePtr& g, const JandlStructure& j, const FundamentalDomain& f, unsigned seed) {
  const auto& oc = *f.oc;
  const auto& cover = *oc.cover;
  const auto& base = *oc.base;
  if (!same_surface(g->base(), oc.cover)) throw NotEquivariant("gerbe does not live on the orientation cover");
  if (j.k.vertex_map() != oc.sigma.vertex_map()) throw NotEquivariant("Jandl involution differs from the deck map");
  Trivialization t = trivialize(g, seed);
  JandlStructure jr = jandl_transport(invert_1(t.T), j);
  EquivariantLineBundle eq = jandl_to_equivariant(jr);
  Report rep = validate_equivariant(eq, 1e3 * tolerance());
  if (!rep.ok()) throw NotEquivariant(rep.violations.front().law + " at " + rep.violations.front().where);

  double area = 0.0;
  for (int tc : f.triangles()) area += cover.orientation_sign(tc) * t.rho[tc];
  cplx h = std::polar(1.0, area);

  const auto& sig = oc.sigma.vertex_map();
  for (const auto& c : domain_boundary(f)) {
    const std::size_t n = c.size();
    std::vector<int> start(n), end(n);
    cplx loop = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      int e = c.edges[i];
      int t0 = base.edge_triangles(e)[0];
      int lt = oc.lift(t0, f.choice[t0]);
      int a = c.vertices[i], b = c.vertices[(i + 1) % n];
      start[i] = corner(cover, oc.pr, lt, a);
      end[i] = corner(cover, oc.pr, lt, b);
      int ce = cover.find_edge(start[i], end[i]);
      int dir = cover.edge(ce).a == start[i] ? 1 : -1;
      if (i > 0 && start[i] != end[i - 1]) {
        if (sig[end[i - 1]] != start[i]) throw NotEquivariant("lifted boundary is not connected");
        loop = eq.phi[start[i]] * loop;
      }
      loop = eq.R.step(ce, 0, dir)(0, 0) * loop;
    }
    if (n > 0 && start[0] != end[n - 1]) {
      if (sig[end[n - 1]] != start[0]) throw NotEquivariant("lifted boundary is not closed");
      loop = eq.phi[start[0]] * loop;
    }
    h *= loop;
  }
  return h;
}

JandlStructure gauge_jandl(const GerbePtr& I, const SimplicialMap& k, int sign, const std::vector<cplx>& gauge) {
  if (!is_trivial_gerbe(*I)) throw NotTrivialGerbe("gauge_jandl needs I_rho");
  const auto& s = *I->base();
  GerbePtr src = pullback_gerbe(I, k);
  GerbePtr tgt = dual_gerbe(I);
  auto r1 = trivial_rho(*src);
  auto r2 = trivial_rho(*tgt);
  for (std::size_t t = 0; t < r1.size(); ++t)
    if (std::abs(r1[t] - r2[t]) > tolerance()) throw NotEquivariant("rho + k*rho does not vanish");
  auto pt = Cover::point(I->base());
  OneMorphism a = empty_morphism(src, tgt, pt, {{0, 0}}, 1);
  for (int e = 0; e < s.num_edges(); ++e)
    a.A.transport.set({e, 0}, scalar_mat(gauge[s.edge(e).b] * std::conj(gauge[s.edge(e).a])));
  set_morphism_curvature(a);
  for (int v = 0; v < s.num_vertices(); ++v) a.alpha.set({v, 0, 0}, Mat::Identity(1, 1));
  JandlStructure j;
  j.k = k;
  j.A = std::make_shared<const OneMorphism>(std::move(a));
  MorphPtr ka = pullback_1(j.A, k);
  MorphPtr ad = dual_1(j.A);
  j.phi = empty_rep(ka, ad, ka->Z(), {0}, {0});
  const auto& vm = k.vertex_map();
  for (int v = 0; v < s.num_vertices(); ++v)
    j.phi.beta.set({v, 0}, scalar_mat(static_cast<double>(sign) * gauge[v] * std::conj(gauge[vm[v]])));
  return j;
}

JandlStructure gauge_jandl(const GerbePtr& I, const SimplicialMap& k, int sign) {
  return gauge_jandl(I, k, sign, std::vector<cplx>(I->base()->num_vertices(), cplx(1.0)));
}

std::vector<double> symmetric_rho(const OrientationCover& oc, const std::vector<double>& base_rho) {
  std::vector<double> r(oc.cover->num_triangles());
  for (int t = 0; t < oc.base->num_triangles(); ++t) {
    r[oc.lift(t, 0)] = base_rho[t];
    r[oc.lift(t, 1)] = base_rho[t];
  }
  return r;
}

}  // namespace gerbes
