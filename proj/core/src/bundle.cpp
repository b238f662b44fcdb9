#include "gerbes/bundle.hpp"

#include <cmath>

namespace gerbes {

DiscreteBundle DiscreteBundle::empty(CoverPtr site, int rank) {
  DiscreteBundle b;
  const auto& s = *site->base();
  b.transport = Field<Mat>({s.num_edges(), site->size()});
  b.tc = Field<double>({s.num_triangles(), site->size()});
  b.site = std::move(site);
  b.rank = rank;
  return b;
}

DiscreteBundle DiscreteBundle::trivial(CoverPtr site, int rank) {
  DiscreteBundle b = empty(site, rank);
  const auto& s = *site->base();
  for (int k = 0; k < site->size(); ++k) {
    for (int e = 0; e < s.num_edges(); ++e)
      if (site->valid(k, s.edge_simplex(e))) b.transport.set({e, k}, Mat::Identity(rank, rank));
    for (int t = 0; t < s.num_triangles(); ++t)
      if (site->valid(k, s.triangle_simplex(t))) b.tc.set({t, k}, 0.0);
  }
  return b;
}

Mat DiscreteBundle::step(int e, int k, int dir) const {
  const Mat& u = U(e, k);
  return dir > 0 ? u : Mat(u.adjoint());
}

Mat triangle_loop(const DiscreteBundle& b, int t, int k) {
  const auto& tri = b.site->base()->triangle(t);
  Mat h = Mat::Identity(b.rank, b.rank);
  for (int j = 0; j < 3; ++j) h = b.step(tri.e[j], k, tri.sign[j]) * h;
  return h;
}

Report validate_bundle(const DiscreteBundle& b, double eps) {
  Report r;
  const auto& s = *b.site->base();
  for (int k = 0; k < b.site->size(); ++k) {
    for (int e = 0; e < s.num_edges(); ++e) {
      if (!b.site->valid(k, s.edge_simplex(e))) continue;
      const Mat* u = b.transport.find({e, k});
      std::string where = "edge " + std::to_string(e) + " index " + std::to_string(k);
      if (!u || u->rows() != b.rank || u->cols() != b.rank) {
        r.fail("bundle.transport", where);
        continue;
      }
      Mat g = u->adjoint() * *u;
      r.check("bundle.unitary", max_abs_diff(g, Mat::Identity(b.rank, b.rank)), eps, where);
    }
  }
  if (!r.ok()) return r;
  for (int k = 0; k < b.site->size(); ++k) {
    for (int t = 0; t < s.num_triangles(); ++t) {
      if (!b.site->valid(k, s.triangle_simplex(t))) continue;
      std::string where = "triangle " + std::to_string(t) + " index " + std::to_string(k);
      const double* c = b.tc.find({t, k});
      if (!c) {
        r.fail("bundle.curvature", where);
        continue;
      }
      cplx d = b.rank == 0 ? cplx(1.0) : triangle_loop(b, t, k).determinant();
      r.check("bundle.det", std::abs(d - std::polar(1.0, *c)), eps, where);
    }
  }
  return r;
}

Report validate_bundle_morphism(const DiscreteBundle& src, const DiscreteBundle& tgt,
                                const BundleMorphism& f, double eps) {
  Report r;
  const auto& s = *src.site->base();
  for (int k = 0; k < src.site->size(); ++k) {
    for (int v = 0; v < s.num_vertices(); ++v) {
      if (!src.site->valid(k, v)) continue;
      const Mat* m = f.m.find({v, k});
      std::string where = "vertex " + std::to_string(v) + " index " + std::to_string(k);
      if (!m || m->rows() != tgt.rank || m->cols() != src.rank) {
        r.fail("morphism.shape", where);
        continue;
      }
      r.check("morphism.isometry",
              max_abs_diff(m->adjoint() * *m, Mat::Identity(src.rank, src.rank)), eps, where);
    }
    for (int e = 0; e < s.num_edges(); ++e) {
      if (!src.site->valid(k, s.edge_simplex(e))) continue;
      const auto& ed = s.edge(e);
      const Mat* m0 = f.m.find({ed.a, k});
      const Mat* m1 = f.m.find({ed.b, k});
      if (!m0 || !m1) continue;
      r.check("morphism.connection", max_abs_diff(*m1 * src.U(e, k), tgt.U(e, k) * *m0), eps,
              "edge " + std::to_string(e) + " index " + std::to_string(k));
    }
  }
  return r;
}

BundleMorphism identity_morphism(const DiscreteBundle& b) {
  BundleMorphism f;
  const auto& s = *b.site->base();
  f.m = Field<Mat>({s.num_vertices(), b.site->size()});
  for (int k = 0; k < b.site->size(); ++k)
    for (int v = 0; v < s.num_vertices(); ++v)
      if (b.site->valid(k, v)) f.m.set({v, k}, Mat::Identity(b.rank, b.rank));
  return f;
}

BundleMorphism compose(const BundleMorphism& g, const BundleMorphism& f) {
  BundleMorphism h;
  h.m = Field<Mat>(f.m.shape());
  for (std::size_t i = 0; i < f.m.flat_size(); ++i)
    if (f.m.raw(i) && g.m.raw(i)) h.m.raw(i) = Mat(*g.m.raw(i) * *f.m.raw(i));
  return h;
}

DiscreteBundle tensor(const DiscreteBundle& b1, const DiscreteBundle& b2) {
  if (!same_cover(b1.site, b2.site)) throw SiteMismatch("tensor of bundles over different sites");
  DiscreteBundle r = DiscreteBundle::empty(b1.site, b1.rank * b2.rank);
  for (std::size_t i = 0; i < b1.transport.flat_size(); ++i)
    if (b1.transport.raw(i)) r.transport.raw(i) = kron(*b1.transport.raw(i), *b2.transport.raw(i));
  for (std::size_t i = 0; i < b1.tc.flat_size(); ++i)
    if (b1.tc.raw(i)) r.tc.raw(i) = b2.rank * *b1.tc.raw(i) + b1.rank * *b2.tc.raw(i);
  return r;
}

DiscreteBundle dual(const DiscreteBundle& b) {
  DiscreteBundle r = DiscreteBundle::empty(b.site, b.rank);
  for (std::size_t i = 0; i < b.transport.flat_size(); ++i)
    if (b.transport.raw(i)) r.transport.raw(i) = Mat(b.transport.raw(i)->conjugate());
  for (std::size_t i = 0; i < b.tc.flat_size(); ++i)
    if (b.tc.raw(i)) r.tc.raw(i) = -*b.tc.raw(i);
  return r;
}

DiscreteBundle pullback(const DiscreteBundle& b, const SimplicialMap& f, const PulledCover& pc) {
  const auto& src = *f.source();
  DiscreteBundle r = DiscreteBundle::empty(pc.cover, b.rank);
  for (int k = 0; k < pc.cover->size(); ++k) {
    int ok = pc.old_index[k];
    for (int e = 0; e < src.num_edges(); ++e) {
      if (!pc.cover->valid(k, src.edge_simplex(e))) continue;
      int sg = f.edge_sign(e);
      if (sg == 0) {
        r.transport.set({e, k}, Mat::Identity(b.rank, b.rank));
      } else {
        const Mat& u = b.U(f.image_edge(e), ok);
        r.transport.set({e, k}, sg > 0 ? u : Mat(u.adjoint()));
      }
    }
    for (int t = 0; t < src.num_triangles(); ++t) {
      if (!pc.cover->valid(k, src.triangle_simplex(t))) continue;
      int sg = f.triangle_sign(t);
      if (sg == 0)
        r.tc.set({t, k}, 0.0);
      else
        r.tc.set({t, k}, sg > 0 ? b.curv(f.image_triangle(t), ok) : -b.curv(f.image_triangle(t), ok));
    }
  }
  return r;
}

DiscreteBundle pullback(const DiscreteBundle& b, const SimplicialMap& f) {
  return pullback(b, f, pullback_cover(b.site, f));
}

bool bundles_equal(const DiscreteBundle& a, const DiscreteBundle& b) {
  return a.rank == b.rank && same_cover(a.site, b.site) &&
         fields_equal(a.transport, b.transport, [](const Mat& x, const Mat& y) { return exactly_equal(x, y); }) &&
         fields_equal(a.tc, b.tc, [](double x, double y) { return x == y; });
}

double bundle_distance(const DiscreteBundle& a, const DiscreteBundle& b) {
  if (a.rank != b.rank || a.transport.shape() != b.transport.shape() || a.tc.shape() != b.tc.shape())
    return 1e300;
  double d = 0.0;
  for (std::size_t i = 0; i < a.transport.flat_size(); ++i) {
    if (a.transport.raw(i).has_value() != b.transport.raw(i).has_value()) return 1e300;
    if (a.transport.raw(i)) d = std::max(d, max_abs_diff(*a.transport.raw(i), *b.transport.raw(i)));
  }
  for (std::size_t i = 0; i < a.tc.flat_size(); ++i) {
    if (a.tc.raw(i).has_value() != b.tc.raw(i).has_value()) return 1e300;
    if (a.tc.raw(i)) d = std::max(d, std::abs(*a.tc.raw(i) - *b.tc.raw(i)));
  }
  return d;
}

Mat cycle_transport(const DiscreteBundle& b, const IndexedCycle& c) {
  const auto& s = *b.site->base();
  const std::size_t n = c.cycle.size();
  if (c.idx.size() != n) throw IndexNotValidOnEdge("cycle index list has wrong length");
  Mat h = Mat::Identity(b.rank, b.rank);
  for (std::size_t i = 0; i < n; ++i) {
    int e = c.cycle.edges[i];
    int k = c.idx[i];
    if (k < 0 || k >= b.site->size() || !b.site->valid(k, s.edge_simplex(e)))
      throw IndexNotValidOnEdge("index " + std::to_string(k) + " on edge " + std::to_string(e));
    if (i > 0) {
      if (i < c.splice.size() && c.splice[i].size() > 0)
        h = c.splice[i] * h;
      else if (c.idx[i - 1] != k)
        throw IndexNotValidOnEdge("index change without splice at step " + std::to_string(i));
    }
    h = b.step(e, k, c.cycle.dirs[i]) * h;
  }
  if (!c.splice.empty() && c.splice[0].size() > 0)
    h = c.splice[0] * h;
  else if (n > 0 && c.idx[n - 1] != c.idx[0])
    throw IndexNotValidOnEdge("index change without splice at the basepoint");
  return h;
}

cplx cycle_holonomy(const DiscreteBundle& b, const IndexedCycle& c) {
  Mat h = cycle_transport(b, c);
  return h.size() == 1 ? h(0, 0) : h.determinant();
}

cplx trace_holonomy(const DiscreteBundle& b, const IndexedCycle& c) { return cycle_transport(b, c).trace(); }

IndexedCycle single_index_cycle(const OrientedCycle& c, int idx) {
  IndexedCycle r;
  r.cycle = c;
  r.idx.assign(c.size(), idx);
  return r;
}

}  // namespace gerbes
