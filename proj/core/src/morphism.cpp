#include "gerbes/morphism.hpp"

#include <algorithm>
#include <map>

namespace gerbes {

std::vector<int> OneMorphism::factor_tuple(int k) const {
  if (atomic()) return {k};
  return Z()->comps(k);
}

int OneMorphism::index_of_tuple(const std::vector<int>& tuple) const {
  if (atomic()) return tuple.size() == 1 ? tuple[0] : -1;
  return Z()->index_of(tuple);
}

OneMorphism empty_morphism(GerbePtr src, GerbePtr tgt, CoverPtr Z, std::vector<std::pair<int, int>> legs,
                           int rank) {
  if (!same_surface(src->base(), tgt->base()) || !same_surface(src->base(), Z->base()))
    throw BaseMismatch("morphism data over different bases");
  if (static_cast<int>(legs.size()) != Z->size()) throw InvalidDescent("one leg pair per index required");
  OneMorphism m;
  auto P = fiber_product({src->Y, tgt->Y});
  m.zeta.cover = Z;
  m.zeta.target = P;
  for (auto [i, j] : legs) {
    int p = (i < 0 || j < 0) ? -1 : P->index_of2(i, j);
    if (p < 0) throw InvalidDescent("leg pair does not lie in the fibre product");
    m.zeta.map.push_back(p);
  }
  m.src = std::move(src);
  m.tgt = std::move(tgt);
  m.rank = rank;
  m.A = DiscreteBundle::empty(Z, rank);
  const int nv = Z->base()->num_vertices();
  m.alpha = Field<Mat>({nv, Z->size(), Z->size()});
  return m;
}

void set_morphism_curvature(OneMorphism& m) {
  const auto& s = *m.Z()->base();
  for (int k = 0; k < m.size(); ++k)
    for (int t = 0; t < s.num_triangles(); ++t)
      if (m.Z()->valid(k, s.triangle_simplex(t)))
        m.A.tc.set({t, k}, m.rank * (m.tgt->c(t, m.t(k)) - m.src->c(t, m.s(k))));
}

std::vector<MorphPtr> factors(const MorphPtr& m) {
  if (m->atomic()) return {m};
  return m->chain;
}

Report validate_1(const OneMorphism& m, double eps) {
  Report r;
  const auto& s = *m.Z()->base();
  auto P = fiber_product({m.src->Y, m.tgt->Y});
  if (!same_cover(P, m.P())) {
    r.fail("morphism.P", "target cover is not the fibre product of the gerbe covers");
    return r;
  }
  r.merge(validate_refinement(m.zeta));
  if (m.A.rank != m.rank || !same_cover(m.A.site, m.Z())) r.fail("morphism.bundle", "bundle rank or site mismatch");
  if (!r.ok()) return r;
  r.merge(validate_bundle(m.A, eps), "A.");
  if (!r.ok()) return r;

  for (int k = 0; k < m.size(); ++k)
    for (int t = 0; t < s.num_triangles(); ++t) {
      if (!m.Z()->valid(k, s.triangle_simplex(t))) continue;
      double want = m.rank * (m.tgt->c(t, m.t(k)) - m.src->c(t, m.s(k)));
      r.check("morphism.curvature", std::abs(m.A.curv(t, k) - want), 0.0,
              "triangle " + std::to_string(t) + " index " + std::to_string(k));
    }

  const int n = m.rank;
  for (int v = 0; v < s.num_vertices(); ++v) {
    auto idx = m.Z()->valid_at(v);
    for (int k : idx)
      for (int k2 : idx) {
        const Mat* a = m.alpha.find({v, k, k2});
        std::string where = "vertex " + std::to_string(v) + " (" + std::to_string(k) + "," + std::to_string(k2) + ")";
        if (!a || a->rows() != n || a->cols() != n) {
          r.fail("alpha.shape", where);
          continue;
        }
        r.check("alpha.unitary", max_abs_diff(a->adjoint() * *a, Mat::Identity(n, n)), eps, where);
      }
  }
  if (!r.ok()) return r;

  for (int e = 0; e < s.num_edges(); ++e) {
    auto idx = m.Z()->valid_at(s.edge_simplex(e));
    int v0 = s.edge(e).a, v1 = s.edge(e).b;
    for (int k : idx)
      for (int k2 : idx) {
        Mat lhs = m.al(v1, k, k2) * (m.src->u(e, m.s(k), m.s(k2)) * m.a(e, k2));
        Mat rhs = (m.a(e, k) * m.tgt->u(e, m.t(k), m.t(k2))) * m.al(v0, k, k2);
        r.check("alpha.connection", max_abs_diff(lhs, rhs), eps,
                "edge " + std::to_string(e) + " (" + std::to_string(k) + "," + std::to_string(k2) + ")");
      }
  }

  for (int v = 0; v < s.num_vertices(); ++v) {
    auto idx = m.Z()->valid_at(v);
    for (int a : idx)
      for (int b : idx)
        for (int c : idx) {
          Mat lhs = m.src->m(v, m.s(a), m.s(b), m.s(c)) * m.al(v, a, c);
          Mat rhs = m.tgt->m(v, m.t(a), m.t(b), m.t(c)) * (m.al(v, a, b) * m.al(v, b, c));
          r.check("morphism.alpha", max_abs_diff(lhs, rhs), eps,
                  "vertex " + std::to_string(v) + " (" + std::to_string(a) + "," + std::to_string(b) + "," +
                      std::to_string(c) + ")");
        }
  }
  return r;
}

bool same_morphism(const OneMorphism& a, const OneMorphism& b, double eps) {
  if (a.rank != b.rank || !same_gerbe(a.src, b.src) || !same_gerbe(a.tgt, b.tgt)) return false;
  if (!same_cover(a.Z(), b.Z()) || !same_cover(a.P(), b.P()) || a.zeta.map != b.zeta.map) return false;
  if (bundle_distance(a.A, b.A) > eps) return false;
  if (a.alpha.shape() != b.alpha.shape()) return false;
  for (std::size_t i = 0; i < a.alpha.flat_size(); ++i) {
    if (a.alpha.raw(i).has_value() != b.alpha.raw(i).has_value()) return false;
    if (a.alpha.raw(i) && max_abs_diff(*a.alpha.raw(i), *b.alpha.raw(i)) > eps) return false;
  }
  return true;
}

bool morphisms_equal(const OneMorphism& a, const OneMorphism& b) {
  return a.rank == b.rank && same_gerbe(a.src, b.src) && same_gerbe(a.tgt, b.tgt) && same_cover(a.Z(), b.Z()) &&
         same_cover(a.P(), b.P()) && a.zeta.map == b.zeta.map && bundles_equal(a.A, b.A) &&
         fields_equal(a.alpha, b.alpha, [](const Mat& x, const Mat& y) { return exactly_equal(x, y); });
}

Field<Mat> d_of(const OneMorphism& m) {
  const auto& s = *m.Z()->base();
  auto t1 = t_mu(*m.src);
  auto t2 = t_mu(*m.tgt);
  Field<Mat> d({s.num_vertices(), m.size(), m.size()});
  for (int v = 0; v < s.num_vertices(); ++v) {
    auto idx = m.Z()->valid_at(v);
    for (int k : idx)
      for (int k2 : idx) {
        if (m.zeta.map[k] != m.zeta.map[k2]) continue;
        cplx c = t1.at({v, m.s(k)}) * std::conj(t2.at({v, m.t(k)}));  // t values are unit
        d.set({v, k, k2}, Mat(c * m.al(v, k, k2).adjoint()));
      }
  }
  return d;
}

Mat d_at(const OneMorphism&, const Field<Mat>& d, int v, int k, int k2) { return d.at({v, k, k2}); }

MorphPtr identity_1(const GerbePtr& g) {
  const auto& s = *g->base();
  std::vector<std::pair<int, int>> legs;
  for (int p = 0; p < g->Y2->size(); ++p) legs.emplace_back(g->Y2->comp(p, 0), g->Y2->comp(p, 1));
  OneMorphism m = empty_morphism(g, g, g->Y2, legs, 1);
  m.A = g->L;
  set_morphism_curvature(m);
  for (int v = 0; v < s.num_vertices(); ++v) {
    auto idx = g->Y2->valid_at(v);
    for (int p : idx)
      for (int q : idx) {
        int i = g->Y2->comp(p, 0), j = g->Y2->comp(p, 1);
        int i2 = g->Y2->comp(q, 0), j2 = g->Y2->comp(q, 1);
        m.alpha.set({v, p, q}, scalar_mat(g->m(v, i, i2, j2) * unit_inv(g->m(v, i, j, j2))));
      }
  }
  return std::make_shared<const OneMorphism>(std::move(m));
}

namespace {

Mat fold_kron(const std::vector<const Mat*>& ms) {
  bool scalars = true;
  for (const Mat* x : ms) scalars = scalars && x->size() == 1;
  if (scalars) {
    cplx z = (*ms[0])(0, 0);
    for (std::size_t j = 1; j < ms.size(); ++j) z *= (*ms[j])(0, 0);
    return scalar_mat(z);
  }
  Mat r = *ms[0];
  for (std::size_t j = 1; j < ms.size(); ++j) r = kron(r, *ms[j]);
  return r;
}

}  // namespace

MorphPtr compose_chain(const std::vector<MorphPtr>& ms) {
  if (ms.empty()) throw MorphismMismatch("empty composition");
  std::vector<MorphPtr> fs;
  for (const auto& m : ms) {
    auto f = factors(m);
    fs.insert(fs.end(), f.begin(), f.end());
  }
  for (std::size_t j = 0; j + 1 < fs.size(); ++j)
    if (!same_gerbe(fs[j]->tgt, fs[j + 1]->src)) throw GerbeMismatch("composition of non-composable morphisms");
  if (fs.size() == 1) return fs[0];
  const std::size_t m = fs.size();
  std::vector<CoverPtr> zs;
  int rank = 1;
  for (const auto& f : fs) {
    zs.push_back(f->Z());
    rank *= f->rank;
  }
  CoverPtr Z = fiber_product_pruned(
      zs, [&](const std::vector<int>& tu, std::size_t j) { return j == 0 || fs[j - 1]->t(tu[j - 1]) == fs[j]->s(tu[j]); });
  std::vector<std::pair<int, int>> legs;
  for (int k = 0; k < Z->size(); ++k) legs.emplace_back(fs[0]->s(Z->comp(k, 0)), fs[m - 1]->t(Z->comp(k, m - 1)));
  OneMorphism c = empty_morphism(fs[0]->src, fs[m - 1]->tgt, Z, legs, rank);
  c.chain = fs;
  const auto& s = *Z->base();
  std::vector<const Mat*> parts(m);
  for (int k = 0; k < Z->size(); ++k)
    for (int e = 0; e < s.num_edges(); ++e) {
      if (!Z->valid(k, s.edge_simplex(e))) continue;
      for (std::size_t j = 0; j < m; ++j) parts[j] = &fs[j]->a(e, Z->comp(k, j));
      c.A.transport.set({e, k}, fold_kron(parts));
    }
  set_morphism_curvature(c);
  for (int v = 0; v < s.num_vertices(); ++v) {
    auto idx = Z->valid_at(v);
    for (int k : idx)
      for (int k2 : idx) {
        for (std::size_t j = 0; j < m; ++j) parts[j] = &fs[j]->al(v, Z->comp(k, j), Z->comp(k2, j));
        c.alpha.set({v, k, k2}, fold_kron(parts));
      }
  }
  return std::make_shared<const OneMorphism>(std::move(c));
}

MorphPtr compose_1(const MorphPtr& a2, const MorphPtr& a1) { return compose_chain({a1, a2}); }

MorphPtr atomize(const MorphPtr& m) {
  if (m->atomic()) return m;
  OneMorphism c = *m;
  c.chain.clear();
  return std::make_shared<const OneMorphism>(std::move(c));
}

MorphPtr invert_1(const MorphPtr& mp) {
  const OneMorphism& m = *mp;
  if (m.rank != 1) throw NotInvertible("bundle has rank " + std::to_string(m.rank) + ", need rank 1");
  std::vector<std::pair<int, int>> legs;
  for (int k = 0; k < m.size(); ++k) legs.emplace_back(m.t(k), m.s(k));
  OneMorphism r = empty_morphism(m.tgt, m.src, m.Z(), legs, 1);
  DiscreteBundle d = dual(m.A);
  r.A.transport = d.transport;
  set_morphism_curvature(r);
  for (std::size_t i = 0; i < m.alpha.flat_size(); ++i)
    if (m.alpha.raw(i)) r.alpha.raw(i) = Mat(m.alpha.raw(i)->conjugate());
  return std::make_shared<const OneMorphism>(std::move(r));
}

namespace {

struct GerbeCache {
  std::map<const BundleGerbe*, GerbePtr> dual;
  std::map<const BundleGerbe*, PulledGerbe> pulled;
  GerbePtr get_dual(const GerbePtr& g) {
    auto it = dual.find(g.get());
    if (it != dual.end()) return it->second;
    return dual[g.get()] = dual_gerbe(g);
  }
  const PulledGerbe& get_pulled(const GerbePtr& g, const SimplicialMap& f) {
    auto it = pulled.find(g.get());
    if (it != pulled.end()) return it->second;
    return pulled[g.get()] = pullback_gerbe_indexed(g, f);
  }
};

MorphPtr dual_atomic(const OneMorphism& m, GerbeCache& cache) {
  std::vector<std::pair<int, int>> legs;
  for (int k = 0; k < m.size(); ++k) legs.emplace_back(m.t(k), m.s(k));
  OneMorphism r = empty_morphism(cache.get_dual(m.tgt), cache.get_dual(m.src), m.Z(), legs, m.rank);
  r.A.transport = m.A.transport;
  set_morphism_curvature(r);
  r.alpha = m.alpha;
  return std::make_shared<const OneMorphism>(std::move(r));
}

MorphPtr pullback_atomic(const OneMorphism& m, const SimplicialMap& f, GerbeCache& cache) {
  const auto& ps = cache.get_pulled(m.src, f);
  const auto& pt = cache.get_pulled(m.tgt, f);
  PulledCover pz = pullback_cover(m.Z(), f);
  std::vector<std::pair<int, int>> legs;
  for (int k = 0; k < pz.cover->size(); ++k) {
    int ok = pz.old_index[k];
    legs.emplace_back(ps.new_index[m.s(ok)], pt.new_index[m.t(ok)]);
  }
  OneMorphism r = empty_morphism(ps.g, pt.g, pz.cover, legs, m.rank);
  r.A.transport = pullback(m.A, f, pz).transport;
  set_morphism_curvature(r);
  const auto& src = *f.source();
  for (int v = 0; v < src.num_vertices(); ++v) {
    int fv = f.vertex_map()[v];
    auto idx = pz.cover->valid_at(v);
    for (int k : idx)
      for (int k2 : idx) r.alpha.set({v, k, k2}, m.al(fv, pz.old_index[k], pz.old_index[k2]));
  }
  return std::make_shared<const OneMorphism>(std::move(r));
}

}  // namespace

MorphPtr dual_1(const MorphPtr& m) {
  GerbeCache cache;
  auto fs = factors(m);
  std::vector<MorphPtr> ds;
  for (auto it = fs.rbegin(); it != fs.rend(); ++it) ds.push_back(dual_atomic(**it, cache));
  return compose_chain(ds);
}

PulledGerbe pullback_gerbe_indexed(const GerbePtr& g, const SimplicialMap& f) {
  PulledGerbe r;
  r.g = pullback_gerbe(g, f);
  r.old_index = pullback_cover(g->Y, f).old_index;
  r.new_index.assign(g->size(), -1);
  for (std::size_t i = 0; i < r.old_index.size(); ++i) r.new_index[r.old_index[i]] = static_cast<int>(i);
  return r;
}

MorphPtr pullback_1(const MorphPtr& m, const SimplicialMap& f) {
  GerbeCache cache;
  std::vector<MorphPtr> ps;
  for (const auto& fac : factors(m)) ps.push_back(pullback_atomic(*fac, f, cache));
  return compose_chain(ps);
}

MorphPtr tensor_1(const MorphPtr& a1, const MorphPtr& a2) {
  auto src = tensor_gerbe(a1->src, a2->src);
  auto tgt = tensor_gerbe(a1->tgt, a2->tgt);
  auto Z = fiber_product({a1->Z(), a2->Z()});
  std::vector<std::pair<int, int>> legs;
  for (int k = 0; k < Z->size(); ++k) {
    int k1 = Z->comp(k, 0), k2 = Z->comp(k, 1);
    legs.emplace_back(src->Y->index_of2(a1->s(k1), a2->s(k2)), tgt->Y->index_of2(a1->t(k1), a2->t(k2)));
  }
  OneMorphism r = empty_morphism(src, tgt, Z, legs, a1->rank * a2->rank);
  const auto& s = *Z->base();
  for (int k = 0; k < Z->size(); ++k)
    for (int e = 0; e < s.num_edges(); ++e)
      if (Z->valid(k, s.edge_simplex(e)))
        r.A.transport.set({e, k}, kron(a1->a(e, Z->comp(k, 0)), a2->a(e, Z->comp(k, 1))));
  set_morphism_curvature(r);
  for (int v = 0; v < s.num_vertices(); ++v) {
    auto idx = Z->valid_at(v);
    for (int k : idx)
      for (int k2 : idx)
        r.alpha.set({v, k, k2}, kron(a1->al(v, Z->comp(k, 0), Z->comp(k2, 0)), a2->al(v, Z->comp(k, 1), Z->comp(k2, 1))));
  }
  return std::make_shared<const OneMorphism>(std::move(r));
}

}  // namespace gerbes
