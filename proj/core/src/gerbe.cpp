#include "gerbes/gerbe.hpp"

namespace gerbes {

BundleGerbe BundleGerbe::empty(CoverPtr Y) {
  BundleGerbe g;
  const auto& s = *Y->base();
  const int n = Y->size();
  g.Y = Y;
  g.Y2 = fiber_product({Y, Y});
  g.C = Field<double>({s.num_triangles(), n});
  g.L = DiscreteBundle::empty(g.Y2, 1);
  g.mu = Field<cplx>({s.num_vertices(), n, n, n});
  return g;
}

void set_line_curvature_from_c(BundleGerbe& g) {
  const auto& s = *g.base();
  for (int a = 0; a < g.Y2->size(); ++a) {
    int i = g.Y2->comp(a, 0), j = g.Y2->comp(a, 1);
    for (int t = 0; t < s.num_triangles(); ++t)
      if (g.Y2->valid(a, s.triangle_simplex(t))) g.L.tc.set({t, a}, g.c(t, j) - g.c(t, i));
  }
}

namespace {

std::string at_vertex(int v, std::initializer_list<int> ix) {
  std::string s = "vertex " + std::to_string(v) + " (";
  bool first = true;
  for (int i : ix) {
    if (!first) s += ",";
    s += std::to_string(i);
    first = false;
  }
  return s + ")";
}

}  // namespace

Report validate_gerbe(const BundleGerbe& g, double eps) {
  Report r;
  const auto& s = *g.base();
  if (!g.Y->surjective()) r.fail("cover.surjective", "some simplex has no index");
  const int n = g.size();
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < s.num_triangles(); ++t)
      if (g.Y->valid(i, s.triangle_simplex(t)) && !g.C.has({t, i}))
        r.fail("gerbe.C", "triangle " + std::to_string(t) + " index " + std::to_string(i));
  if (!r.ok()) return r;
  r.merge(validate_bundle(g.L, eps), "L.");
  if (!r.ok()) return r;

  for (int a = 0; a < g.Y2->size(); ++a) {
    int i = g.Y2->comp(a, 0), j = g.Y2->comp(a, 1);
    for (int t = 0; t < s.num_triangles(); ++t) {
      if (!g.Y2->valid(a, s.triangle_simplex(t))) continue;
      double dev = std::abs(g.L.curv(t, a) - (g.c(t, j) - g.c(t, i)));
      r.check("gerbe.curvature", dev, 0.0, "triangle " + std::to_string(t) + " pair (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
    }
  }

  for (int v = 0; v < s.num_vertices(); ++v) {
    auto idx = g.Y->valid_at(v);
    for (int i : idx)
      for (int j : idx)
        for (int k : idx) {
          const cplx* m = g.mu.find({v, i, j, k});
          if (!m) {
            r.fail("gerbe.mu", at_vertex(v, {i, j, k}));
            continue;
          }
          r.check("mu.unit", std::abs(std::abs(*m) - 1.0), eps, at_vertex(v, {i, j, k}));
        }
  }
  if (!r.ok()) return r;

  for (int e = 0; e < s.num_edges(); ++e) {
    auto idx = g.Y->valid_at(s.edge_simplex(e));
    int v0 = s.edge(e).a, v1 = s.edge(e).b;
    for (int i : idx)
      for (int j : idx)
        for (int k : idx) {
          cplx lhs = g.m(v1, i, j, k) * g.u(e, i, j) * g.u(e, j, k);
          cplx rhs = g.u(e, i, k) * g.m(v0, i, j, k);
          r.check("mu.connection", std::abs(lhs - rhs), eps,
                  "edge " + std::to_string(e) + " (" + std::to_string(i) + "," + std::to_string(j) + "," +
                      std::to_string(k) + ")");
        }
  }

  for (int v = 0; v < s.num_vertices(); ++v) {
    auto idx = g.Y->valid_at(v);
    for (int i : idx)
      for (int j : idx)
        for (int k : idx)
          for (int l : idx) {
            cplx lhs = g.m(v, i, k, l) * g.m(v, i, j, k);
            cplx rhs = g.m(v, i, j, l) * g.m(v, j, k, l);
            r.check("gerbe.associativity", std::abs(lhs - rhs), eps, at_vertex(v, {i, j, k, l}));
          }
  }
  return r;
}

GerbePtr trivial_gerbe(const SurfacePtr& base, const std::vector<double>& rho) {
  if (static_cast<int>(rho.size()) != base->num_triangles())
    throw InvalidGerbe("rho must have one value per triangle");
  BundleGerbe g = BundleGerbe::empty(Cover::point(base));
  for (int t = 0; t < base->num_triangles(); ++t) g.C.set({t, 0}, rho[t]);
  g.L = DiscreteBundle::trivial(g.Y2, 1);
  set_line_curvature_from_c(g);
  for (int v = 0; v < base->num_vertices(); ++v) g.mu.set({v, 0, 0, 0}, cplx(1.0, 0.0));
  return std::make_shared<const BundleGerbe>(std::move(g));
}

GerbePtr tensor_gerbe(const GerbePtr& g1, const GerbePtr& g2) {
  if (!same_surface(g1->base(), g2->base())) throw BaseMismatch("tensor of gerbes over different bases");
  const auto& s = *g1->base();
  BundleGerbe g = BundleGerbe::empty(fiber_product({g1->Y, g2->Y}));
  const auto& Y = *g.Y;
  for (int a = 0; a < Y.size(); ++a)
    for (int t = 0; t < s.num_triangles(); ++t)
      if (Y.valid(a, s.triangle_simplex(t))) g.C.set({t, a}, g1->c(t, Y.comp(a, 0)) + g2->c(t, Y.comp(a, 1)));
  for (int p = 0; p < g.Y2->size(); ++p) {
    int a = g.Y2->comp(p, 0), b = g.Y2->comp(p, 1);
    for (int e = 0; e < s.num_edges(); ++e) {
      if (!g.Y2->valid(p, s.edge_simplex(e))) continue;
      cplx z = g1->u(e, Y.comp(a, 0), Y.comp(b, 0)) * g2->u(e, Y.comp(a, 1), Y.comp(b, 1));
      g.L.transport.set({e, p}, scalar_mat(z));
    }
  }
  set_line_curvature_from_c(g);
  for (int v = 0; v < s.num_vertices(); ++v) {
    auto idx = Y.valid_at(v);
    for (int a : idx)
      for (int b : idx)
        for (int c : idx)
          g.mu.set({v, a, b, c}, g1->m(v, Y.comp(a, 0), Y.comp(b, 0), Y.comp(c, 0)) *
                                     g2->m(v, Y.comp(a, 1), Y.comp(b, 1), Y.comp(c, 1)));
  }
  return std::make_shared<const BundleGerbe>(std::move(g));
}

GerbePtr dual_gerbe(const GerbePtr& g) {
  BundleGerbe d = *g;
  for (std::size_t i = 0; i < d.C.flat_size(); ++i)
    if (d.C.raw(i)) d.C.raw(i) = -*d.C.raw(i);
  d.L = dual(g->L);
  for (std::size_t i = 0; i < d.mu.flat_size(); ++i)
    if (d.mu.raw(i)) d.mu.raw(i) = std::conj(*d.mu.raw(i));
  return std::make_shared<const BundleGerbe>(std::move(d));
}

GerbePtr pullback_gerbe(const GerbePtr& g, const SimplicialMap& f) {
  if (!same_surface(f.target(), g->base())) throw BaseMismatch("map does not land in the gerbe's base");
  const auto& src = *f.source();
  PulledCover py = pullback_cover(g->Y, f);
  BundleGerbe h = BundleGerbe::empty(py.cover);
  const auto& Y = *h.Y;
  for (int i = 0; i < Y.size(); ++i)
    for (int t = 0; t < src.num_triangles(); ++t) {
      if (!Y.valid(i, src.triangle_simplex(t))) continue;
      int sg = f.triangle_sign(t);
      double c = sg == 0 ? 0.0 : g->c(f.image_triangle(t), py.old_index[i]);
      h.C.set({t, i}, sg < 0 ? -c : c);
    }
  PulledCover p2;
  p2.cover = h.Y2;
  for (int a = 0; a < h.Y2->size(); ++a)
    p2.old_index.push_back(g->pair(py.old_index[h.Y2->comp(a, 0)], py.old_index[h.Y2->comp(a, 1)]));
  h.L = pullback(g->L, f, p2);
  set_line_curvature_from_c(h);
  for (int v = 0; v < src.num_vertices(); ++v) {
    int fv = f.vertex_map()[v];
    auto idx = Y.valid_at(v);
    for (int i : idx)
      for (int j : idx)
        for (int k : idx)
          h.mu.set({v, i, j, k}, g->m(fv, py.old_index[i], py.old_index[j], py.old_index[k]));
  }
  return std::make_shared<const BundleGerbe>(std::move(h));
}

Field<cplx> t_mu(const BundleGerbe& g) {
  const auto& s = *g.base();
  Field<cplx> t({s.num_vertices(), g.size()});
  for (int v = 0; v < s.num_vertices(); ++v)
    for (int i : g.Y->valid_at(v)) t.set({v, i}, g.m(v, i, i, i));
  return t;
}

bool is_trivial_gerbe(const BundleGerbe& g) {
  if (g.size() != 1 || !g.Y->label(0).empty()) return false;
  for (std::size_t i = 0; i < g.L.transport.flat_size(); ++i)
    if (g.L.transport.raw(i) && (*g.L.transport.raw(i))(0, 0) != cplx(1.0, 0.0)) return false;
  for (std::size_t i = 0; i < g.mu.flat_size(); ++i)
    if (g.mu.raw(i) && *g.mu.raw(i) != cplx(1.0, 0.0)) return false;
  return true;
}

std::vector<double> trivial_rho(const BundleGerbe& g) {
  if (!is_trivial_gerbe(g)) throw NotTrivialGerbe("gerbe is not of the form I_rho");
  std::vector<double> rho(g.base()->num_triangles());
  for (int t = 0; t < g.base()->num_triangles(); ++t) rho[t] = g.c(t, 0);
  return rho;
}

bool gerbes_equal(const BundleGerbe& a, const BundleGerbe& b) {
  return same_cover(a.Y, b.Y) && fields_equal(a.C, b.C, [](double x, double y) { return x == y; }) &&
         bundles_equal(a.L, b.L) && fields_equal(a.mu, b.mu, [](cplx x, cplx y) { return x == y; });
}

GerbePtr refine_gerbe(const GerbePtr& g, const CoverPtr& finer, const std::vector<int>& to_old) {
  if (!same_surface(g->base(), finer->base())) throw BaseMismatch("refinement over a different base");
  const auto& s = *g->base();
  for (int i = 0; i < finer->size(); ++i)
    if (!finer->support(i).subset_of(g->Y->support(to_old[i]))) throw EmptyRefinement("support not contained");
  BundleGerbe r = BundleGerbe::empty(finer);
  for (int i = 0; i < finer->size(); ++i)
    for (int t = 0; t < s.num_triangles(); ++t)
      if (finer->valid(i, s.triangle_simplex(t))) r.C.set({t, i}, g->c(t, to_old[i]));
  for (int p = 0; p < r.Y2->size(); ++p) {
    int a = to_old[r.Y2->comp(p, 0)], b = to_old[r.Y2->comp(p, 1)];
    int q = g->pair(a, b);
    for (int e = 0; e < s.num_edges(); ++e)
      if (r.Y2->valid(p, s.edge_simplex(e))) r.L.transport.set({e, p}, g->L.U(e, q));
    for (int t = 0; t < s.num_triangles(); ++t)
      if (r.Y2->valid(p, s.triangle_simplex(t))) r.L.tc.set({t, p}, g->L.curv(t, q));
  }
  for (int v = 0; v < s.num_vertices(); ++v) {
    auto idx = finer->valid_at(v);
    for (int a : idx)
      for (int b : idx)
        for (int c : idx) r.mu.set({v, a, b, c}, g->m(v, to_old[a], to_old[b], to_old[c]));
  }
  return std::make_shared<const BundleGerbe>(std::move(r));
}

double oriented_sum(const SimplicialSurface& s, const std::vector<double>& rho) {
  double sum = 0.0;
  for (int t = 0; t < s.num_triangles(); ++t) sum += s.orientation_sign(t) * rho[t];
  return sum;
}

}  // namespace gerbes
