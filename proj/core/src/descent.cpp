#include "gerbes/descent.hpp"

namespace gerbes {

namespace {

// d(k -> k') with the diagonal pinned to the identity.
Mat transition(const DescentDatum& D, int v, int k, int k2) {
  if (k == k2) return Mat::Identity(D.A.rank, D.A.rank);
  return D.d.at({v, k, k2});
}

}  // namespace

Report validate_descent(const DescentDatum& D, double eps) {
  Report r;
  const auto& s = *D.zeta.cover->base();
  const auto& K = *D.zeta.cover;
  const int n = D.A.rank;
  for (int v = 0; v < s.num_vertices(); ++v) {
    auto idx = K.valid_at(v);
    for (int k : idx)
      for (int k2 : idx) {
        if (D.zeta.map[k] != D.zeta.map[k2]) continue;
        const Mat* m = D.d.find({v, k, k2});
        std::string where = "vertex " + std::to_string(v) + " (" + std::to_string(k) + "," + std::to_string(k2) + ")";
        if (!m || m->rows() != n || m->cols() != n) {
          r.fail("descent.shape", where);
          continue;
        }
        r.check("descent.unitary", max_abs_diff(m->adjoint() * *m, Mat::Identity(n, n)), eps, where);
      }
  }
  if (!r.ok()) return r;
  for (int v = 0; v < s.num_vertices(); ++v) {
    auto idx = K.valid_at(v);
    for (int a : idx)
      for (int b : idx)
        for (int c : idx) {
          if (D.zeta.map[a] != D.zeta.map[b] || D.zeta.map[b] != D.zeta.map[c]) continue;
          Mat lhs = D.d.at({v, b, c}) * D.d.at({v, a, b});
          r.check("descent.cocycle", max_abs_diff(lhs, D.d.at({v, a, c})), eps,
                  "vertex " + std::to_string(v));
        }
  }
  for (int e = 0; e < s.num_edges(); ++e) {
    auto idx = K.valid_at(s.edge_simplex(e));
    int v0 = s.edge(e).a, v1 = s.edge(e).b;
    for (int a : idx)
      for (int b : idx) {
        if (D.zeta.map[a] != D.zeta.map[b]) continue;
        Mat lhs = D.d.at({v1, a, b}) * D.A.U(e, a);
        Mat rhs = D.A.U(e, b) * D.d.at({v0, a, b});
        r.check("descent.connection", max_abs_diff(lhs, rhs), eps, "edge " + std::to_string(e));
      }
  }
  return r;
}

int section(const Refinement& r, int p, int s) {
  for (int k = 0; k < r.cover->size(); ++k)
    if (r.map[k] == p && r.cover->valid(k, s)) return k;
  return -1;
}

Glued glue(const DescentDatum& D) {
  Report rep = validate_descent(D, tolerance());
  if (!rep.ok()) throw InvalidDescent(rep.violations.front().law + " at " + rep.violations.front().where);
  const auto& s = *D.zeta.cover->base();
  const auto& P = *D.zeta.target;
  Glued g;
  g.S = DiscreteBundle::empty(D.zeta.target, D.A.rank);
  for (int p = 0; p < P.size(); ++p) {
    for (int e = 0; e < s.num_edges(); ++e) {
      if (!P.valid(p, s.edge_simplex(e))) continue;
      int ke = section(D.zeta, p, s.edge_simplex(e));
      int k0 = section(D.zeta, p, s.edge(e).a);
      int k1 = section(D.zeta, p, s.edge(e).b);
      Mat u = D.A.U(e, ke);
      if (k1 != ke) u = transition(D, s.edge(e).b, ke, k1) * u;
      if (k0 != ke) u = u * transition(D, s.edge(e).a, k0, ke);
      g.S.transport.set({e, p}, std::move(u));
    }
    for (int t = 0; t < s.num_triangles(); ++t) {
      if (!P.valid(p, s.triangle_simplex(t))) continue;
      g.S.tc.set({t, p}, D.A.curv(t, section(D.zeta, p, s.triangle_simplex(t))));
    }
  }
  g.beta = Field<Mat>({s.num_vertices(), D.zeta.size()});
  for (int k = 0; k < D.zeta.size(); ++k)
    for (int v = 0; v < s.num_vertices(); ++v)
      if (D.zeta.cover->valid(k, v)) g.beta.set({v, k}, transition(D, v, section(D.zeta, D.zeta.map[k], v), k));
  return g;
}

DescentDatum restrict_bundle(const DiscreteBundle& S, const Refinement& r) {
  if (!same_cover(S.site, r.target)) throw SiteMismatch("bundle does not live on the refinement target");
  const auto& s = *r.cover->base();
  DescentDatum D;
  D.zeta = r;
  D.A = DiscreteBundle::empty(r.cover, S.rank);
  for (int k = 0; k < r.size(); ++k) {
    for (int e = 0; e < s.num_edges(); ++e)
      if (r.cover->valid(k, s.edge_simplex(e))) D.A.transport.set({e, k}, S.U(e, r.map[k]));
    for (int t = 0; t < s.num_triangles(); ++t)
      if (r.cover->valid(k, s.triangle_simplex(t))) D.A.tc.set({t, k}, S.curv(t, r.map[k]));
  }
  D.d = Field<Mat>({s.num_vertices(), r.size(), r.size()});
  for (int v = 0; v < s.num_vertices(); ++v) {
    auto idx = r.cover->valid_at(v);
    for (int a : idx)
      for (int b : idx)
        if (r.map[a] == r.map[b]) D.d.set({v, a, b}, Mat::Identity(S.rank, S.rank));
  }
  return D;
}

}  // namespace gerbes
