#include "gerbes/surface.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>

namespace gerbes {

namespace {

std::array<int, 3> sorted3(int a, int b, int c) {
  std::array<int, 3> r{a, b, c};
  std::sort(r.begin(), r.end());
  return r;
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

SimplicialSurface SimplicialSurface::build(const std::vector<std::array<int, 3>>& tris, bool orient,
                                           int num_vertices) {
  if (tris.empty()) throw InvalidSurface("empty triangle list");
  SimplicialSurface s;
  int maxv = -1;
  for (const auto& t : tris) {
    for (int v : t) {
      if (v < 0) throw InvalidSurface("negative vertex id");
      maxv = std::max(maxv, v);
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw InvalidSurface("triangle with repeated vertex");
  }
  s.nv_ = std::max(maxv + 1, num_vertices);

  std::map<std::pair<int, int>, int> edge_ids;
  std::set<std::array<int, 3>> seen;
  for (const auto& t : tris) {
    if (!seen.insert(sorted3(t[0], t[1], t[2])).second)
      throw InvalidSurface("duplicate triangle");
    Triangle tri;
    tri.v = t;
    for (int j = 0; j < 3; ++j) {
      int a = t[j], b = t[(j + 1) % 3];
      auto key = std::make_pair(std::min(a, b), std::max(a, b));
      auto it = edge_ids.find(key);
      int id;
      if (it == edge_ids.end()) {
        id = static_cast<int>(s.edges_.size());
        edge_ids.emplace(key, id);
        s.edges_.push_back({a, b});
        s.edge_tris_.emplace_back();
      } else {
        id = it->second;
      }
      tri.e[j] = id;
      tri.sign[j] = (s.edges_[id].a == a) ? 1 : -1;
      s.edge_tris_[id].push_back(static_cast<int>(s.tris_.size()));
    }
    s.tris_.push_back(tri);
  }
  for (std::size_t e = 0; e < s.edges_.size(); ++e)
    if (s.edge_tris_[e].size() > 2)
      throw NonManifoldEdge("edge " + std::to_string(s.edges_[e].a) + "-" +
                            std::to_string(s.edges_[e].b) + " lies in " +
                            std::to_string(s.edge_tris_[e].size()) + " triangles");

  s.vert_edges_.assign(s.nv_, {});
  for (std::size_t e = 0; e < s.edges_.size(); ++e) {
    s.vert_edges_[s.edges_[e].a].push_back(static_cast<int>(e));
    s.vert_edges_[s.edges_[e].b].push_back(static_cast<int>(e));
  }

  // Sign propagation across interior edges.
  const int nt = s.num_triangles();
  std::vector<int> o(nt, 0);
  s.orientable_ = true;
  s.components_ = 0;
  for (int root = 0; root < nt; ++root) {
    if (o[root] != 0) continue;
    ++s.components_;
    o[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int t = q.front();
      q.pop();
      for (int j = 0; j < 3; ++j) {
        int e = s.tris_[t].e[j];
        for (int u : s.edge_tris_[e]) {
          if (u == t) continue;
          int ju = 0;
          while (s.tris_[u].e[ju] != e) ++ju;
          int want = -o[t] * s.tris_[t].sign[j] * s.tris_[u].sign[ju];
          if (o[u] == 0) {
            o[u] = want;
            q.push(u);
          } else if (o[u] != want) {
            s.orientable_ = false;
          }
        }
      }
    }
  }
  if (orient && s.orientable_) s.orientation_ = o;
  return s;
}

int SimplicialSurface::simplex_dim(int s) const {
  if (s < nv_) return 0;
  if (s < nv_ + num_edges()) return 1;
  return 2;
}

int SimplicialSurface::simplex_local(int s) const {
  if (s < nv_) return s;
  if (s < nv_ + num_edges()) return s - nv_;
  return s - nv_ - num_edges();
}

std::vector<int> SimplicialSurface::simplex_vertices(int s) const {
  int d = simplex_dim(s);
  int l = simplex_local(s);
  if (d == 0) return {l};
  if (d == 1) return {edges_[l].a, edges_[l].b};
  return {tris_[l].v[0], tris_[l].v[1], tris_[l].v[2]};
}

std::vector<int> SimplicialSurface::closure(int s) const {
  int d = simplex_dim(s);
  int l = simplex_local(s);
  if (d == 0) return {s};
  if (d == 1) return {s, edges_[l].a, edges_[l].b};
  const auto& t = tris_[l];
  return {s, edge_simplex(t.e[0]), edge_simplex(t.e[1]), edge_simplex(t.e[2]), t.v[0], t.v[1], t.v[2]};
}

int SimplicialSurface::find_edge(int a, int b) const {
  if (a < 0 || b < 0 || a >= nv_ || b >= nv_) return -1;
  for (int e : vert_edges_[a]) {
    const auto& ed = edges_[e];
    if ((ed.a == a && ed.b == b) || (ed.a == b && ed.b == a)) return e;
  }
  return -1;
}

int SimplicialSurface::find_triangle(int a, int b, int c) const {
  int e = find_edge(a, b);
  if (e < 0) return -1;
  for (int t : edge_tris_[e]) {
    const auto& v = tris_[t].v;
    if (v[0] == c || v[1] == c || v[2] == c) return t;
  }
  return -1;
}

int SimplicialSurface::find_simplex(std::vector<int> verts) const {
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  if (verts.size() == 1) return (verts[0] >= 0 && verts[0] < nv_) ? verts[0] : -1;
  if (verts.size() == 2) {
    int e = find_edge(verts[0], verts[1]);
    return e < 0 ? -1 : edge_simplex(e);
  }
  if (verts.size() == 3) {
    int t = find_triangle(verts[0], verts[1], verts[2]);
    return t < 0 ? -1 : triangle_simplex(t);
  }
  return -1;
}

bool SimplicialSurface::closed() const {
  for (const auto& et : edge_tris_)
    if (et.size() != 2) return false;
  return true;
}

std::vector<OrientedCycle> SimplicialSurface::boundary_cycles() const {
  std::vector<std::pair<int, int>> be;
  for (int e = 0; e < num_edges(); ++e) {
    if (edge_tris_[e].size() != 1) continue;
    int t = edge_tris_[e][0];
    int j = 0;
    while (tris_[t].e[j] != e) ++j;
    be.emplace_back(e, orientation_sign(t) * tris_[t].sign[j]);
  }
  return decompose_cycles(*this, be);
}

std::vector<std::array<int, 3>> SimplicialSurface::triangle_list() const {
  std::vector<std::array<int, 3>> r;
  r.reserve(tris_.size());
  for (const auto& t : tris_) r.push_back(t.v);
  return r;
}

bool SimplicialSurface::operator==(const SimplicialSurface& o) const {
  if (nv_ != o.nv_ || tris_.size() != o.tris_.size()) return false;
  for (std::size_t i = 0; i < tris_.size(); ++i)
    if (tris_[i].v != o.tris_[i].v) return false;
  return orientation_ == o.orientation_;
}

bool same_surface(const SurfacePtr& a, const SurfacePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

std::vector<OrientedCycle> decompose_cycles(const SimplicialSurface& s,
                                            const std::vector<std::pair<int, int>>& oriented_edges) {
  struct Arc {
    int edge, dir, from, to;
  };
  std::vector<Arc> arcs;
  for (auto [e, d] : oriented_edges) {
    const auto& ed = s.edge(e);
    arcs.push_back({e, d, d > 0 ? ed.a : ed.b, d > 0 ? ed.b : ed.a});
  }
  std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) {
    return std::tie(x.from, x.edge) < std::tie(y.from, y.edge);
  });
  std::vector<std::vector<int>> out(s.num_vertices());
  for (std::size_t i = 0; i < arcs.size(); ++i) out[arcs[i].from].push_back(static_cast<int>(i));
  std::vector<char> used(arcs.size(), 0);
  std::vector<OrientedCycle> cycles;
  for (std::size_t start = 0; start < arcs.size(); ++start) {
    if (used[start]) continue;
    OrientedCycle c;
    int cur = static_cast<int>(start);
    const int v0 = arcs[start].from;
    while (true) {
      used[cur] = 1;
      c.vertices.push_back(arcs[cur].from);
      c.edges.push_back(arcs[cur].edge);
      c.dirs.push_back(arcs[cur].dir);
      int at = arcs[cur].to;
      if (at == v0) break;
      int next = -1;
      for (int a : out[at])
        if (!used[a]) {
          next = a;
          break;
        }
      if (next < 0) throw InvalidSurface("oriented edge set is not a union of cycles");
      cur = next;
    }
    cycles.push_back(std::move(c));
  }
  return cycles;
}

SimplicialMap::SimplicialMap(SurfacePtr source, SurfacePtr target, std::vector<int> vmap)
    : src_(std::move(source)), tgt_(std::move(target)), vmap_(std::move(vmap)) {
  if (!src_ || !tgt_) throw InvalidSurface("simplicial map without surfaces");
  if (static_cast<int>(vmap_.size()) != src_->num_vertices())
    throw InvalidSurface("vertex assignment has wrong length");
  for (int v : vmap_)
    if (v < 0 || v >= tgt_->num_vertices()) throw InvalidSurface("vertex image out of range");
  for (int s = 0; s < src_->num_simplices(); ++s)
    if (image_simplex(s) < 0)
      throw InvalidSurface("image of simplex " + std::to_string(s) + " spans no simplex");
}

int SimplicialMap::image_simplex(int s) const {
  auto vs = src_->simplex_vertices(s);
  for (int& v : vs) v = vmap_[v];
  return tgt_->find_simplex(vs);
}

int SimplicialMap::image_edge(int e) const {
  const auto& ed = src_->edge(e);
  int a = vmap_[ed.a], b = vmap_[ed.b];
  if (a == b) return -1;
  return tgt_->find_edge(a, b);
}

int SimplicialMap::edge_sign(int e) const {
  const auto& ed = src_->edge(e);
  int a = vmap_[ed.a], b = vmap_[ed.b];
  if (a == b) return 0;
  int te = tgt_->find_edge(a, b);
  return tgt_->edge(te).a == a ? 1 : -1;
}

int SimplicialMap::image_triangle(int t) const {
  const auto& v = src_->triangle(t).v;
  int a = vmap_[v[0]], b = vmap_[v[1]], c = vmap_[v[2]];
  if (a == b || b == c || a == c) return -1;
  return tgt_->find_triangle(a, b, c);
}

int SimplicialMap::triangle_sign(int t) const {
  const auto& v = src_->triangle(t).v;
  int a = vmap_[v[0]], b = vmap_[v[1]], c = vmap_[v[2]];
  if (a == b || b == c || a == c) return 0;
  int tt = tgt_->find_triangle(a, b, c);
  const auto& w = tgt_->triangle(tt).v;
  for (int r = 0; r < 3; ++r)
    if (w[r] == a && w[(r + 1) % 3] == b) return 1;
  return -1;
}

bool SimplicialMap::is_involution() const {
  if (!same_surface(src_, tgt_)) return false;
  for (int v = 0; v < static_cast<int>(vmap_.size()); ++v)
    if (vmap_[vmap_[v]] != v) return false;
  return true;
}

SimplicialMap SimplicialMap::identity(const SurfacePtr& s) {
  std::vector<int> id(s->num_vertices());
  std::iota(id.begin(), id.end(), 0);
  return SimplicialMap(s, s, id);
}

SimplicialMap SimplicialMap::after(const SimplicialMap& g) const {
  if (!same_surface(g.target(), src_)) throw InvalidSurface("maps not composable");
  std::vector<int> vm(g.vertex_map().size());
  for (std::size_t i = 0; i < vm.size(); ++i) vm[i] = vmap_[g.vertex_map()[i]];
  return SimplicialMap(g.source(), tgt_, vm);
}

OrientationCover orientation_cover(const SurfacePtr& base) {
  if (!base->closed()) throw NotClosed("orientation cover needs a closed surface");
  const int nt = base->num_triangles();
  UnionFind uf(nt * 2 * 3);
  auto slot = [](int c, int corner) { return c * 3 + corner; };
  auto corner_of = [&](int t, int v) {
    const auto& tv = base->triangle(t).v;
    for (int j = 0; j < 3; ++j)
      if (tv[j] == v) return j;
    return -1;
  };
  for (int e = 0; e < base->num_edges(); ++e) {
    const auto& et = base->edge_triangles(e);
    int t1 = et[0], t2 = et[1];
    int j1 = 0, j2 = 0;
    while (base->triangle(t1).e[j1] != e) ++j1;
    while (base->triangle(t2).e[j2] != e) ++j2;
    int s1 = base->triangle(t1).sign[j1], s2 = base->triangle(t2).sign[j2];
    for (int b1 = 0; b1 < 2; ++b1) {
      int eps1 = b1 == 0 ? 1 : -1;
      int eta = eps1 * s1;
      int eps2 = -eta * s2;  // eps2 * s2 == -eta
      int b2 = eps2 > 0 ? 0 : 1;
      int c1 = 2 * t1 + b1, c2 = 2 * t2 + b2;
      for (int v : {base->edge(e).a, base->edge(e).b})
        uf.unite(slot(c1, corner_of(t1, v)), slot(c2, corner_of(t2, v)));
    }
  }
  std::map<int, int> cls;
  std::vector<int> pr_v;
  std::vector<std::array<int, 3>> ctris;
  for (int c = 0; c < 2 * nt; ++c) {
    std::array<int, 3> cv{};
    for (int j = 0; j < 3; ++j) {
      int r = uf.find(slot(c, j));
      auto it = cls.find(r);
      if (it == cls.end()) {
        it = cls.emplace(r, static_cast<int>(pr_v.size())).first;
        pr_v.push_back(base->triangle(c / 2).v[j]);
      }
      cv[j] = it->second;
    }
    if (c % 2 == 0)
      ctris.push_back({cv[0], cv[1], cv[2]});
    else
      ctris.push_back({cv[0], cv[2], cv[1]});
  }
  auto cover = std::make_shared<SimplicialSurface>(
      SimplicialSurface::build(ctris, true, static_cast<int>(pr_v.size())));
  if (!cover->orientation())
    throw InvalidSurface("orientation cover failed to be orientable");
  for (int s : *cover->orientation())
    if (s != 1) throw InvalidSurface("orientation cover lost coherence");

  std::vector<std::vector<int>> lifts(base->num_vertices());
  for (int v = 0; v < static_cast<int>(pr_v.size()); ++v) lifts[pr_v[v]].push_back(v);
  std::vector<int> sig(pr_v.size());
  for (int bv = 0; bv < base->num_vertices(); ++bv) {
    if (lifts[bv].empty()) continue;
    if (lifts[bv].size() != 2) throw InvalidSurface("vertex link is not a circle");
    sig[lifts[bv][0]] = lifts[bv][1];
    sig[lifts[bv][1]] = lifts[bv][0];
  }
  OrientationCover oc;
  oc.base = base;
  oc.cover = cover;
  oc.pr = SimplicialMap(cover, base, pr_v);
  oc.sigma = SimplicialMap(cover, cover, sig);
  return oc;
}

std::vector<int> FundamentalDomain::triangles() const {
  std::vector<int> r(choice.size());
  for (std::size_t t = 0; t < choice.size(); ++t) r[t] = oc->lift(static_cast<int>(t), choice[t]);
  return r;
}

FundamentalDomain FundamentalDomain::flipped(int t) const {
  FundamentalDomain f = *this;
  f.choice[t] ^= 1;
  return f;
}

FundamentalDomain fundamental_domain(const std::shared_ptr<const OrientationCover>& oc, unsigned seed) {
  const auto& base = *oc->base;
  const int nt = base.num_triangles();
  FundamentalDomain f;
  f.oc = oc;
  f.choice.assign(nt, -1);
  if (seed == 0) {
    for (int root = 0; root < nt; ++root) {
      if (f.choice[root] >= 0) continue;
      f.choice[root] = 0;
      std::queue<int> q;
      q.push(root);
      while (!q.empty()) {
        int t = q.front();
        q.pop();
        int eps = f.choice[t] == 0 ? 1 : -1;
        for (int j = 0; j < 3; ++j) {
          int e = base.triangle(t).e[j];
          for (int u : base.edge_triangles(e)) {
            if (u == t || f.choice[u] >= 0) continue;
            int ju = 0;
            while (base.triangle(u).e[ju] != e) ++ju;
            int eps_u = -eps * base.triangle(t).sign[j] * base.triangle(u).sign[ju];
            f.choice[u] = eps_u > 0 ? 0 : 1;
            q.push(u);
          }
        }
      }
    }
  } else {
    std::mt19937 rng(seed);
    for (int t = 0; t < nt; ++t) f.choice[t] = static_cast<int>(rng() & 1u);
  }
  return f;
}

std::vector<std::pair<int, int>> domain_boundary_edges(const FundamentalDomain& f) {
  const auto& base = *f.oc->base;
  std::vector<std::pair<int, int>> r;
  for (int e = 0; e < base.num_edges(); ++e) {
    const auto& et = base.edge_triangles(e);
    if (et.size() != 2) continue;
    int eta[2];
    for (int k = 0; k < 2; ++k) {
      int t = et[k];
      int j = 0;
      while (base.triangle(t).e[j] != e) ++j;
      int eps = f.choice[t] == 0 ? 1 : -1;
      eta[k] = eps * base.triangle(t).sign[j];
    }
    if (eta[0] == -eta[1]) continue;
    r.emplace_back(e, eta[0]);
  }
  return r;
}

std::vector<OrientedCycle> domain_boundary(const FundamentalDomain& f) {
  return decompose_cycles(*f.oc->base, domain_boundary_edges(f));
}

}  // namespace gerbes
