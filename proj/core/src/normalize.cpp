#include "gerbes/normalize.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include "gerbes/holonomy.hpp"

namespace gerbes {

bool is_fp_form(const OneMorphism& a) {
  if (!same_cover(a.Z(), a.P())) return false;
  for (int k = 0; k < a.size(); ++k)
    if (a.zeta.map[k] != k) return false;
  return true;
}

Normalized normalize_1(const MorphPtr& a) {
  if (is_fp_form(*a)) return {a, identity_2(a)};
  DescentDatum D{a->zeta, a->A, d_of(*a)};
  Glued g = glue(D);
  const auto& P = a->P();
  const auto& s = *P->base();
  std::vector<std::pair<int, int>> legs;
  for (int p = 0; p < P->size(); ++p) legs.emplace_back(P->comp(p, 0), P->comp(p, 1));
  OneMorphism m = empty_morphism(a->src, a->tgt, P, legs, a->rank);
  m.A.transport = g.S.transport;
  set_morphism_curvature(m);
  for (int v = 0; v < s.num_vertices(); ++v) {
    auto idx = P->valid_at(v);
    for (int p : idx)
      for (int p2 : idx)
        m.alpha.set({v, p, p2}, a->al(v, section(a->zeta, p, v), section(a->zeta, p2, v)));
  }
  Normalized out;
  out.S = std::make_shared<const OneMorphism>(std::move(m));
  std::vector<int> w1(a->size()), w2(a->size());
  for (int k = 0; k < a->size(); ++k) {
    w1[k] = a->zeta.map[k];
    w2[k] = k;
  }
  out.iso = empty_rep(out.S, a, a->Z(), w1, w2);
  out.iso.beta = g.beta;
  return out;
}

TwoMorphismRep normalize_2(const TwoMorphismRep& r) {
  TwoMorphismRep x = r;
  if (!is_fp_form(*r.src) || !is_fp_form(*r.tgt)) {
    Normalized ns = normalize_1(r.src);
    Normalized nt = normalize_1(r.tgt);
    x = vertical(inverse_2(nt.iso), vertical(r, ns.iso));
  }
  const auto& P = x.src->Z();
  const auto& s = *P->base();
  const double eps = tolerance();
  std::vector<int> iota(P->size());
  for (int p = 0; p < P->size(); ++p) iota[p] = p;
  TwoMorphismRep c = empty_rep(x.src, x.tgt, P, iota, iota);
  for (int w = 0; w < x.size(); ++w) {
    if (x.w1[w] != x.w2[w]) throw DescentObstruction("legs of w lie over different P indices");
    int p = x.w1[w];
    for (int v = 0; v < s.num_vertices(); ++v) {
      if (!x.W->valid(w, v)) continue;
      const Mat* have = c.beta.find({v, p});
      if (!have) {
        c.beta.set({v, p}, x.b(v, w));
      } else if (max_abs_diff(*have, x.b(v, w)) > eps) {
        throw DescentObstruction("matrices over P index " + std::to_string(p) + " disagree at vertex " +
                                 std::to_string(v));
      }
    }
  }
  for (int p = 0; p < P->size(); ++p)
    for (int v = 0; v < s.num_vertices(); ++v)
      if (P->valid(p, v) && !c.beta.has({v, p}))
        throw DescentObstruction("no representative over P index " + std::to_string(p) + " at vertex " +
                                 std::to_string(v));
  return c;
}

TwoMorphism make_two(const TwoMorphismRep& r) { return {r, normalize_2(r)}; }

double canonical_distance(const TwoMorphism& a, const TwoMorphism& b) {
  const auto& x = a.canonical;
  const auto& y = b.canonical;
  const double inf = std::numeric_limits<double>::infinity();
  if (!same_morphism(x.src, y.src, tolerance()) || !same_morphism(x.tgt, y.tgt, tolerance())) return inf;
  double d = 0.0;
  for (std::size_t i = 0; i < x.beta.flat_size(); ++i) {
    const auto& p = x.beta.raw(i);
    const auto& q = y.beta.raw(i);
    if (p.has_value() != q.has_value()) return inf;
    if (!p) continue;
    if (p->rows() != q->rows() || p->cols() != q->cols()) return inf;
    d = std::max(d, max_abs_diff(*p, *q));
  }
  return d;
}

bool same_two(const TwoMorphism& a, const TwoMorphism& b, double eps) { return canonical_distance(a, b) <= eps; }

namespace {

void require_trivial_ends(const OneMorphism& a) {
  if (!is_trivial_gerbe(*a.src) || !is_trivial_gerbe(*a.tgt))
    throw NotTrivialGerbe("Bun needs trivial source and target gerbes");
}

}  // namespace

BunResult bun_with_iso(const MorphPtr& a) {
  require_trivial_ends(*a);
  BunResult r;
  r.norm = normalize_1(a);
  r.R = r.norm.S->A;
  return r;
}

DiscreteBundle bun(const MorphPtr& a) { return bun_with_iso(a).R; }

BundleMorphism bun_2(const TwoMorphismRep& r) {
  require_trivial_ends(*r.src);
  require_trivial_ends(*r.tgt);
  TwoMorphismRep c = normalize_2(r);
  BundleMorphism m;
  m.m = c.beta;
  return m;
}

namespace {

// Orientation of each component when orientable (BFS over interior edges).
struct ComponentInfo {
  std::vector<int> comp;
  std::vector<int> orient;
  std::vector<bool> closed;
  std::vector<bool> orientable;
};

ComponentInfo components(const SimplicialSurface& s) {
  const int nt = s.num_triangles();
  ComponentInfo c;
  c.comp.assign(nt, -1);
  c.orient.assign(nt, 0);
  for (int t0 = 0; t0 < nt; ++t0) {
    if (c.comp[t0] >= 0) continue;
    const int id = static_cast<int>(c.closed.size());
    c.closed.push_back(true);
    c.orientable.push_back(true);
    std::queue<int> q;
    c.comp[t0] = id;
    c.orient[t0] = 1;
    q.push(t0);
    while (!q.empty()) {
      int t = q.front();
      q.pop();
      const auto& tri = s.triangle(t);
      for (int j = 0; j < 3; ++j) {
        const auto& et = s.edge_triangles(tri.e[j]);
        if (et.size() == 1) c.closed[id] = false;
        for (int u : et) {
          if (u == t) continue;
          int ju = 0;
          while (s.triangle(u).e[ju] != tri.e[j]) ++ju;
          int want = -c.orient[t] * tri.sign[j] * s.triangle(u).sign[ju];
          if (c.comp[u] < 0) {
            c.comp[u] = id;
            c.orient[u] = want;
            q.push(u);
          } else if (c.orient[u] != want) {
            c.orientable[id] = false;
          }
        }
      }
    }
  }
  return c;
}

}  // namespace

std::optional<DiscreteBundle> line_bundle_with_curvature(const SurfacePtr& sp, const std::vector<double>& f,
                                                         double eps) {
  const auto& s = *sp;
  const int nt = s.num_triangles(), ne = s.num_edges();
  std::vector<double> g = f;
  ComponentInfo ci = components(s);
  for (std::size_t id = 0; id < ci.closed.size(); ++id) {
    if (!ci.closed[id] || !ci.orientable[id]) continue;
    double total = 0.0;
    int root = -1;
    for (int t = 0; t < nt; ++t)
      if (ci.comp[t] == static_cast<int>(id)) {
        total += ci.orient[t] * f[t];
        if (root < 0) root = t;
      }
    const double turns = std::round(total / (2 * std::numbers::pi));
    if (std::abs(total - 2 * std::numbers::pi * turns) > eps) return std::nullopt;
    g[root] -= ci.orient[root] * 2 * std::numbers::pi * turns;
  }
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(nt, ne);
  Eigen::VectorXd rhs(nt);
  for (int t = 0; t < nt; ++t) {
    const auto& tri = s.triangle(t);
    for (int j = 0; j < 3; ++j) M(t, tri.e[j]) += tri.sign[j];
    rhs(t) = g[t];
  }
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(ne);
  if (nt > 0) theta = M.completeOrthogonalDecomposition().solve(rhs);
  if (nt > 0 && (M * theta - rhs).cwiseAbs().maxCoeff() > 1e-8) return std::nullopt;
  DiscreteBundle b = DiscreteBundle::empty(Cover::point(sp), 1);
  for (int e = 0; e < ne; ++e) b.transport.set({e, 0}, scalar_mat(std::polar(1.0, theta(e))));
  for (int t = 0; t < nt; ++t) b.tc.set({t, 0}, f[t]);
  return b;
}

std::optional<MorphPtr> line_morphism(const GerbePtr& I1, const GerbePtr& I2, double eps) {
  auto r1 = trivial_rho(*I1);
  auto r2 = trivial_rho(*I2);
  std::vector<double> f(r1.size());
  for (std::size_t t = 0; t < f.size(); ++t) f[t] = r2[t] - r1[t];
  auto lb = line_bundle_with_curvature(I1->base(), f, eps);
  if (!lb) return std::nullopt;
  const auto& s = *I1->base();
  OneMorphism m = empty_morphism(I1, I2, Cover::point(I1->base()), {{0, 0}}, 1);
  m.A.transport = lb->transport;
  set_morphism_curvature(m);
  for (int v = 0; v < s.num_vertices(); ++v) m.alpha.set({v, 0, 0}, Mat::Identity(1, 1));
  return std::make_shared<const OneMorphism>(std::move(m));
}

std::optional<TwoMorphismRep> solve_2iso(const MorphPtr& a, const MorphPtr& b) {
  if (a->rank != 1 || b->rank != 1) throw NotInvertible("solve_2iso handles rank-1 morphisms");
  if (!same_gerbe(a->src, b->src) || !same_gerbe(a->tgt, b->tgt)) throw MorphismMismatch("different endpoints");
  Normalized na = normalize_1(a), nb = normalize_1(b);
  const auto& S = *na.S;
  const auto& T = *nb.S;
  const auto& P = S.Z();
  const auto& s = *P->base();
  const int nv = s.num_vertices();
  const double eps = tolerance();
  Field<cplx> beta({nv, P->size()});
  // Propagate from a seed per connected piece, then check every constraint.
  for (int p0 = 0; p0 < P->size(); ++p0)
    for (int v0 = 0; v0 < nv; ++v0) {
      if (!P->valid(p0, v0) || beta.has({v0, p0})) continue;
      beta.set({v0, p0}, cplx(1.0));
      std::queue<std::pair<int, int>> q;
      q.emplace(v0, p0);
      while (!q.empty()) {
        auto [v, p] = q.front();
        q.pop();
        const cplx bv = beta.at({v, p});
        for (int e : s.vertex_edges(v)) {
          if (!P->valid(p, s.edge_simplex(e))) continue;
          int w = s.edge(e).a == v ? s.edge(e).b : s.edge(e).a;
          if (beta.has({w, p})) continue;
          cplx ua = S.a(e, p)(0, 0), ub = T.a(e, p)(0, 0);
          cplx bw = s.edge(e).a == v ? ub * bv * std::conj(ua) : std::conj(ub) * bv * ua;
          beta.set({w, p}, bw);
          q.emplace(w, p);
        }
        for (int p2 : P->valid_at(v)) {
          if (beta.has({v, p2})) continue;
          // alpha_T(p2,p) beta(p) = beta(p2) alpha_S(p2,p)
          cplx b2 = T.al(v, p2, p)(0, 0) * bv * std::conj(S.al(v, p2, p)(0, 0));
          beta.set({v, p2}, b2);
          q.emplace(v, p2);
        }
      }
    }
  std::vector<int> iota(P->size());
  for (int p = 0; p < P->size(); ++p) iota[p] = p;
  TwoMorphismRep r = empty_rep(na.S, nb.S, P, iota, iota);
  for (int p = 0; p < P->size(); ++p)
    for (int v = 0; v < nv; ++v)
      if (P->valid(p, v)) r.beta.set({v, p}, scalar_mat(beta.at({v, p})));
  if (!validate_2(r, eps).ok()) return std::nullopt;
  return vertical(nb.iso, vertical(r, inverse_2(na.iso)));
}

std::optional<MorphPtr> stably_isomorphic(const GerbePtr& g1, const GerbePtr& g2) {
  if (!same_surface(g1->base(), g2->base())) return std::nullopt;
  Trivialization t1 = trivialize(g1);
  Trivialization t2 = trivialize(g2);
  auto e = line_morphism(t1.T->tgt, t2.T->tgt, 1e-6);
  if (!e) return std::nullopt;
  MorphPtr chain = compose_chain({t1.T, *e, invert_1(t2.T)});
  return normalize_1(chain).S;
}

}  // namespace gerbes
