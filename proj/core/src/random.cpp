#include "gerbes/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include "gerbes/surfaces.hpp"

namespace gerbes {

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

cplx random_phase(Rng& rng) { return std::polar(1.0, uniform(rng, -std::numbers::pi, std::numbers::pi)); }

Mat random_unitary(int n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<Mat> qr(m);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    cplx d = r(j, j);
    double a = std::abs(d);
    q.col(j) *= a > 0 ? d / a : cplx(1.0);
  }
  // One Gram-Schmidt pass keeps the result unitary to rounding.
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k) q.col(j) -= q.col(k).dot(q.col(j)) * q.col(k);
    q.col(j) /= q.col(j).norm();
  }
  return q;
}

std::vector<double> random_rho(const SimplicialSurface& s, Rng& rng, double scale) {
  std::vector<double> r(s.num_triangles());
  for (auto& x : r) x = uniform(rng, -scale, scale);
  return r;
}

CoverPtr random_cover(const SurfacePtr& s, int n, Rng& rng) {
  const int nt = s->num_triangles();
  n = std::max(1, std::min(n, nt));
  std::vector<int> order(nt);
  for (int t = 0; t < nt; ++t) order[t] = t;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> owner(nt, -1);
  std::queue<int> q;
  for (int i = 0; i < n; ++i) {
    owner[order[i]] = i;
    q.push(order[i]);
  }
  auto neighbours = [&](int t) {
    std::vector<int> r;
    for (int e : s->triangle(t).e)
      for (int u : s->edge_triangles(e))
        if (u != t) r.push_back(u);
    return r;
  };
  while (!q.empty()) {
    int t = q.front();
    q.pop();
    for (int u : neighbours(t))
      if (owner[u] < 0) {
        owner[u] = owner[t];
        q.push(u);
      }
  }
  // Components without a centre go to index 0.
  for (int t = 0; t < nt; ++t)
    if (owner[t] < 0) owner[t] = 0;
  std::vector<Bits> sup(n, Bits(s->num_simplices()));
  std::bernoulli_distribution grow(0.5);
  for (int t = 0; t < nt; ++t) {
    sup[owner[t]].set(s->triangle_simplex(t));
    for (int u : neighbours(t))
      if (owner[u] != owner[t] && grow(rng)) sup[owner[t]].set(s->triangle_simplex(u));
  }
  for (int v = 0; v < s->num_vertices(); ++v)
    if (s->vertex_edges(v).empty()) sup[0].set(v);
  return Cover::atomic(s, std::move(sup));
}

GaugedGerbe random_gauge(const SurfacePtr& s, const std::vector<double>& rho, const CoverPtr& Y, Rng& rng) {
  const int n = Y->size();
  GaugedGerbe out;
  out.rho = rho;
  out.I = trivial_gerbe(s, rho);
  Field<double> theta({s->num_edges(), n});
  Field<double> tcT({s->num_triangles(), n});
  Field<cplx> al({s->num_vertices(), n, n});
  for (int i = 0; i < n; ++i) {
    for (int e = 0; e < s->num_edges(); ++e)
      if (Y->valid(i, s->edge_simplex(e))) theta.set({e, i}, uniform(rng, -std::numbers::pi, std::numbers::pi));
    for (int t = 0; t < s->num_triangles(); ++t) {
      if (!Y->valid(i, s->triangle_simplex(t))) continue;
      const auto& tri = s->triangle(t);
      double sum = 0.0;
      for (int j = 0; j < 3; ++j) sum += tri.sign[j] * theta.at({tri.e[j], i});
      tcT.set({t, i}, sum);
    }
  }
  for (int v = 0; v < s->num_vertices(); ++v) {
    auto idx = Y->valid_at(v);
    for (int i : idx)
      for (int j : idx) al.set({v, i, j}, random_phase(rng));
  }
  BundleGerbe g = BundleGerbe::empty(Y);
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < s->num_triangles(); ++t)
      if (Y->valid(i, s->triangle_simplex(t))) g.C.set({t, i}, rho[t] - tcT.at({t, i}));
  for (int p = 0; p < g.Y2->size(); ++p) {
    int i = g.Y2->comp(p, 0), j = g.Y2->comp(p, 1);
    for (int e = 0; e < s->num_edges(); ++e) {
      if (!g.Y2->valid(p, s->edge_simplex(e))) continue;
      int v0 = s->edge(e).a, v1 = s->edge(e).b;
      cplx u = unit_inv(al.at({v1, i, j})) * std::polar(1.0, theta.at({e, i})) * al.at({v0, i, j}) *
               std::polar(1.0, -theta.at({e, j}));
      g.L.transport.set({e, p}, scalar_mat(u));
    }
  }
  set_line_curvature_from_c(g);
  for (int v = 0; v < s->num_vertices(); ++v) {
    auto idx = Y->valid_at(v);
    for (int i : idx)
      for (int j : idx)
        for (int k : idx) g.mu.set({v, i, j, k}, al.at({v, i, j}) * al.at({v, j, k}) * unit_inv(al.at({v, i, k})));
  }
  out.G = std::make_shared<const BundleGerbe>(std::move(g));

  std::vector<std::pair<int, int>> legs;
  for (int i = 0; i < n; ++i) legs.emplace_back(i, 0);
  OneMorphism b = empty_morphism(out.G, out.I, Y, legs, 1);
  for (int i = 0; i < n; ++i)
    for (int e = 0; e < s->num_edges(); ++e)
      if (Y->valid(i, s->edge_simplex(e))) b.A.transport.set({e, i}, scalar_mat(std::polar(1.0, theta.at({e, i}))));
  set_morphism_curvature(b);
  for (int v = 0; v < s->num_vertices(); ++v) {
    auto idx = Y->valid_at(v);
    for (int i : idx)
      for (int j : idx) b.alpha.set({v, i, j}, scalar_mat(al.at({v, i, j})));
  }
  out.B = std::make_shared<const OneMorphism>(std::move(b));
  out.Binv = invert_1(out.B);
  return out;
}

GaugedGerbe random_gauge(const SurfacePtr& s, const std::vector<double>& rho, int n_indices, Rng& rng) {
  return random_gauge(s, rho, random_cover(s, n_indices, rng), rng);
}

MorphPtr random_trivial_morphism(const GerbePtr& I1, int rank, Rng& rng) {
  const auto& s = *I1->base();
  auto rho1 = trivial_rho(*I1);
  CoverPtr Z = Cover::point(I1->base());
  DiscreteBundle E = DiscreteBundle::empty(Z, rank);
  for (int e = 0; e < s.num_edges(); ++e) E.transport.set({e, 0}, random_unitary(rank, rng));
  std::vector<double> rho2(rho1.size());
  for (int t = 0; t < s.num_triangles(); ++t) {
    double phi = rank == 0 ? 0.0 : std::arg(triangle_loop(E, t, 0).determinant());
    rho2[t] = rank == 0 ? rho1[t] : rho1[t] + phi / rank;
  }
  OneMorphism m = empty_morphism(I1, trivial_gerbe(I1->base(), rho2), Z, {{0, 0}}, rank);
  m.A.transport = E.transport;
  set_morphism_curvature(m);
  for (int v = 0; v < s.num_vertices(); ++v) m.alpha.set({v, 0, 0}, Mat::Identity(rank, rank));
  return std::make_shared<const OneMorphism>(std::move(m));
}

Conjugated random_conjugate(const MorphPtr& E, Rng& rng) {
  const auto& s = *E->Z()->base();
  if (E->size() != 1) throw InvalidDescent("conjugation expects a single-index morphism");
  std::vector<Mat> g(s.num_vertices());
  for (auto& m : g) m = random_unitary(E->rank, rng);
  OneMorphism c = *E;
  c.chain.clear();
  for (int e = 0; e < s.num_edges(); ++e)
    c.A.transport.set({e, 0}, g[s.edge(e).b] * E->a(e, 0) * g[s.edge(e).a].adjoint());
  for (int v = 0; v < s.num_vertices(); ++v) c.alpha.set({v, 0, 0}, g[v] * E->al(v, 0, 0) * g[v].adjoint());
  Conjugated out;
  out.E2 = std::make_shared<const OneMorphism>(std::move(c));
  auto W = Cover::point(E->Z()->base());
  out.gamma = empty_rep(E, out.E2, W, {0}, {0});
  for (int v = 0; v < s.num_vertices(); ++v) out.gamma.beta.set({v, 0}, g[v]);
  return out;
}

RefinedCover random_refinement(const CoverPtr& c, Rng& rng) {
  const auto& s = *c->base();
  std::vector<std::vector<int>> labels;
  std::vector<Bits> sup;
  RefinedCover r;
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < c->size(); ++i) {
    labels.push_back({i, 0});
    sup.push_back(c->support(i));
    r.to_old.push_back(i);
    if (!coin(rng)) continue;
    Bits sub(s.num_simplices());
    for (int t = 0; t < s.num_triangles(); ++t)
      if (c->valid(i, s.triangle_simplex(t)) && coin(rng)) sub.set(s.triangle_simplex(t));
    if (!sub.any()) continue;
    labels.push_back({i, 1});
    sup.push_back(downward_closure(s, sub));
    r.to_old.push_back(i);
  }
  r.cover = Cover::labelled(c->base(), std::move(labels), std::move(sup));
  return r;
}

Dressed gauge_refine(const MorphPtr& A0, Rng& rng, bool refine) {
  const auto& s = *A0->Z()->base();
  const auto& Z0 = *A0->Z();
  std::vector<std::vector<int>> labels;
  std::vector<Bits> sup;
  std::vector<int> from;
  std::bernoulli_distribution coin(0.5);
  for (int k = 0; k < Z0.size(); ++k) {
    auto l = Z0.label(k);
    l.push_back(0);
    labels.push_back(l);
    sup.push_back(Z0.support(k));
    from.push_back(k);
    if (!refine || !coin(rng)) continue;
    Bits sub(s.num_simplices());
    for (int t = 0; t < s.num_triangles(); ++t)
      if (Z0.valid(k, s.triangle_simplex(t)) && coin(rng)) sub.set(s.triangle_simplex(t));
    if (!sub.any()) continue;
    l.back() = 1;
    labels.push_back(l);
    sup.push_back(sub);
    from.push_back(k);
  }
  CoverPtr Z = Cover::labelled(A0->Z()->base(), labels, sup);
  std::vector<std::pair<int, int>> legs;
  for (int k : from) legs.emplace_back(A0->s(k), A0->t(k));
  OneMorphism m = empty_morphism(A0->src, A0->tgt, Z, legs, A0->rank);
  const int n = A0->rank;
  Field<Mat> g({s.num_vertices(), Z->size()});
  for (int k = 0; k < Z->size(); ++k)
    for (int v = 0; v < s.num_vertices(); ++v)
      if (Z->valid(k, v)) g.set({v, k}, random_unitary(n, rng));
  for (int k = 0; k < Z->size(); ++k)
    for (int e = 0; e < s.num_edges(); ++e)
      if (Z->valid(k, s.edge_simplex(e)))
        m.A.transport.set({e, k}, g.at({s.edge(e).b, k}) * A0->a(e, from[k]) * g.at({s.edge(e).a, k}).adjoint());
  set_morphism_curvature(m);
  for (int v = 0; v < s.num_vertices(); ++v) {
    auto idx = Z->valid_at(v);
    for (int k : idx)
      for (int k2 : idx) m.alpha.set({v, k, k2}, g.at({v, k}) * A0->al(v, from[k], from[k2]) * g.at({v, k2}).adjoint());
  }
  Dressed out;
  out.A = std::make_shared<const OneMorphism>(std::move(m));
  CoverPtr W = fiber_product({A0->Z(), Z}, [&](const std::vector<int>& t) {
    return A0->zeta.map[t[0]] == A0->zeta.map[from[t[1]]];
  });
  std::vector<int> w1, w2;
  for (int w = 0; w < W->size(); ++w) {
    w1.push_back(W->comp(w, 0));
    w2.push_back(W->comp(w, 1));
  }
  out.iso = empty_rep(A0, out.A, W, w1, w2);
  auto d0 = d_of(*A0);
  for (int w = 0; w < W->size(); ++w) {
    int k0 = w1[w], k = w2[w];
    for (int v = 0; v < s.num_vertices(); ++v) {
      if (!W->valid(w, v)) continue;
      Mat b = g.at({v, k});
      if (k0 != from[k]) b = b * d0.at({v, k0, from[k]});
      out.iso.beta.set({v, w}, std::move(b));
    }
  }
  return out;
}

RandomMorphism random_morphism(const GaugedGerbe& g1, const MorphPtr& E, const GaugedGerbe& g2, Rng& rng,
                               bool refine) {
  RandomMorphism r;
  r.E = E;
  r.core = compose_chain({g1.B, E, g2.Binv});
  Dressed d = gauge_refine(atomize(r.core), rng, refine);
  r.A = d.A;
  r.iso = d.iso;
  return r;
}

TwoMorphismRep lift_2(const GaugedGerbe& g1, const GaugedGerbe& g2, const RandomMorphism& X,
                      const RandomMorphism& Y, const TwoMorphismRep& gamma) {
  TwoMorphismRep mid = horizontal(identity_2(g2.Binv), horizontal(gamma, identity_2(g1.B)));
  return vertical(Y.iso, vertical(mid, inverse_2(X.iso)));
}

SurfacePtr random_surface(Rng& rng, bool closed_only) {
  std::uniform_int_distribution<int> pick(0, closed_only ? 3 : 5);
  switch (pick(rng)) {
    case 0: return surfaces::torus7();
    case 1: return surfaces::icosahedron();
    case 2: return surfaces::torus_grid(3, 3);
    case 3: return surfaces::oriented(surfaces::torus_grid(3, 4));
    case 4: return surfaces::grid_disc(3, 3);
    default: return surfaces::square_disc();
  }
}

}  // namespace gerbes
