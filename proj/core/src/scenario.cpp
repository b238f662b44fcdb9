#include "gerbes/scenario.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

namespace gerbes {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key '") + key + "'");
  return j.at(key);
}

// Vertex, edge and triangle naming over one surface.
class Names {
 public:
  explicit Names(const SimplicialSurface& s) : s_(&s) {
    const auto& given = s.vertex_names();
    for (int v = 0; v < s.num_vertices(); ++v) {
      vn_.push_back(static_cast<int>(given.size()) == s.num_vertices() ? given[v] : "v" + std::to_string(v));
      vid_[vn_.back()] = v;
    }
  }
  const SimplicialSurface& surface() const { return *s_; }
  const std::string& vname(int v) const { return vn_[v]; }
  int vertex(const json& j) const {
    if (!j.is_string()) bad("vertex id must be a string");
    auto it = vid_.find(j.get<std::string>());
    if (it == vid_.end()) bad("unknown vertex '" + j.get<std::string>() + "'");
    return it->second;
  }
  json edge_json(int e) const { return json::array({vn_[s_->edge(e).a], vn_[s_->edge(e).b]}); }
  // Edge id and +1 when [a,b] follows the canonical orientation.
  std::pair<int, int> edge(const json& j) const {
    if (!j.is_array() || j.size() != 2) bad("edge must be a pair of vertex ids");
    int a = vertex(j[0]), b = vertex(j[1]);
    int e = s_->find_edge(a, b);
    if (e < 0) bad("no edge " + j.dump());
    return {e, s_->edge(e).a == a ? 1 : -1};
  }
  static std::string tname(int t) { return "t" + std::to_string(t); }
  int triangle(const json& j) const {
    if (!j.is_string()) bad("triangle id must be a string");
    const auto str = j.get<std::string>();
    if (str.size() < 2 || str[0] != 't') bad("bad triangle id '" + str + "'");
    int t = -1;
    try {
      std::size_t used = 0;
      t = std::stoi(str.substr(1), &used);
      if (used != str.size() - 1) t = -1;
    } catch (const std::exception&) {
      t = -1;
    }
    if (t < 0 || t >= s_->num_triangles()) bad("unknown triangle '" + str + "'");
    return t;
  }
  json simplex_json(int x) const {
    json a = json::array();
    for (int v : s_->simplex_vertices(x)) a.push_back(vn_[v]);
    return a;
  }
  int simplex(const json& j) const {
    if (!j.is_array() || j.empty() || j.size() > 3) bad("simplex must list 1 to 3 vertex ids");
    std::vector<int> vs;
    for (const auto& x : j) vs.push_back(vertex(x));
    int x = s_->find_simplex(vs);
    if (x < 0) bad("no simplex " + j.dump());
    return x;
  }

 private:
  const SimplicialSurface* s_;
  std::vector<std::string> vn_;
  std::unordered_map<std::string, int> vid_;
};

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) bad("complex must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json mat_json(const Mat& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(cplx_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from(const json& j, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) bad("matrix has the wrong row count");
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) bad("matrix has the wrong column count");
    for (int c = 0; c < cols; ++c) m(r, c) = cplx_from(j[r][c]);
  }
  return m;
}

double real_from(const json& j) {
  if (!j.is_number()) bad("expected a number");
  return j.get<double>();
}

// Maximal simplices of a downward-closed support.
json support_json(const Names& nm, const Bits& b) {
  const auto& s = nm.surface();
  Bits covered(s.num_simplices());
  json out = json::array();
  for (int x = s.num_simplices() - 1; x >= 0; --x) {
    if (!b.test(x) || covered.test(x)) continue;
    out.push_back(nm.simplex_json(x));
    for (int y : s.closure(x)) covered.set(y);
  }
  return out;
}

Bits support_from(const Names& nm, const json& j) {
  const auto& s = nm.surface();
  if (!j.is_array()) bad("support must be a list of simplices");
  Bits b(s.num_simplices());
  for (const auto& x : j) b.set(nm.simplex(x));
  return downward_closure(s, b);
}

json surface_json(const SimplicialSurface& s) {
  Names nm(s);
  json v = json::array();
  for (int i = 0; i < s.num_vertices(); ++i) v.push_back(nm.vname(i));
  json t = json::array();
  for (const auto& tri : s.triangles()) t.push_back({nm.vname(tri.v[0]), nm.vname(tri.v[1]), nm.vname(tri.v[2])});
  return {{"vertices", v}, {"triangles", t}, {"oriented", s.orientation().has_value()}};
}

SurfacePtr surface_from(const json& j) {
  const auto& vs = need(j, "vertices");
  if (!vs.is_array() || vs.empty()) bad("surface needs vertices");
  std::vector<std::string> names;
  std::unordered_map<std::string, int> id;
  for (const auto& v : vs) {
    if (!v.is_string()) bad("vertex id must be a string");
    names.push_back(v.get<std::string>());
    if (!id.emplace(names.back(), static_cast<int>(names.size()) - 1).second) bad("duplicate vertex " + names.back());
  }
  std::vector<std::array<int, 3>> tris;
  for (const auto& t : need(j, "triangles")) {
    if (!t.is_array() || t.size() != 3) bad("triangle must list 3 vertices");
    std::array<int, 3> a{};
    for (int i = 0; i < 3; ++i) {
      if (!t[i].is_string() || !id.count(t[i].get<std::string>())) bad("unknown vertex in triangle " + t.dump());
      a[i] = id[t[i].get<std::string>()];
    }
    tris.push_back(a);
  }
  if (tris.empty()) bad("surface needs triangles");
  bool oriented = j.value("oriented", false);
  SimplicialSurface s;
  try {
    s = SimplicialSurface::build(tris, oriented, static_cast<int>(names.size()));
  } catch (const Error& e) {
    bad(std::string("surface: ") + e.what());
  }
  s.set_vertex_names(std::move(names));
  return std::make_shared<const SimplicialSurface>(std::move(s));
}

std::string index_id(char p, int i) { return std::string(1, p) + std::to_string(i); }

// Index table of a cover section.
struct IndexTable {
  std::unordered_map<std::string, int> id;
  int at(const json& j) const {
    if (!j.is_string()) bad("index id must be a string");
    auto it = id.find(j.get<std::string>());
    if (it == id.end()) bad("unknown index '" + j.get<std::string>() + "'");
    return it->second;
  }
};

json cover_json(const Names& nm, const Cover& c, char prefix) {
  json idx = json::array();
  for (int i = 0; i < c.size(); ++i)
    idx.push_back({{"id", index_id(prefix, i)}, {"label", c.label(i)}, {"support", support_json(nm, c.support(i))}});
  return {{"indices", idx}};
}

CoverPtr cover_from(const Names& nm, const SurfacePtr& base, const json& j, IndexTable& table) {
  const auto& idx = need(j, "indices");
  if (!idx.is_array() || idx.empty()) bad("cover needs indices");
  std::vector<std::vector<int>> labels;
  std::vector<Bits> sup;
  for (const auto& x : idx) {
    std::string id = need(x, "id").get<std::string>();
    if (!table.id.emplace(id, static_cast<int>(labels.size())).second) bad("duplicate index " + id);
    if (x.contains("label")) {
      if (!x["label"].is_array()) bad("label must be a list of integers");
      labels.push_back(x["label"].get<std::vector<int>>());
    } else {
      labels.push_back({static_cast<int>(labels.size())});
    }
    sup.push_back(support_from(nm, need(x, "support")));
  }
  return Cover::labelled(base, std::move(labels), std::move(sup));
}

IndexTable positional(char prefix, int n) {
  IndexTable t;
  for (int i = 0; i < n; ++i) t.id[index_id(prefix, i)] = i;
  return t;
}

json gerbe_json(const Names& nm, const BundleGerbe& g) {
  const auto& s = nm.surface();
  const auto& Y = *g.Y;
  json C = json::array(), Lt = json::array(), Lc = json::array(), mu = json::array();
  for (int t = 0; t < s.num_triangles(); ++t)
    for (int i : Y.valid_at(s.triangle_simplex(t))) C.push_back({Names::tname(t), index_id('y', i), g.c(t, i)});
  for (int e = 0; e < s.num_edges(); ++e) {
    auto idx = Y.valid_at(s.edge_simplex(e));
    for (int i : idx)
      for (int j : idx) Lt.push_back({nm.edge_json(e), index_id('y', i), index_id('y', j), cplx_json(g.u(e, i, j))});
  }
  for (int t = 0; t < s.num_triangles(); ++t) {
    auto idx = Y.valid_at(s.triangle_simplex(t));
    for (int i : idx)
      for (int j : idx) Lc.push_back({Names::tname(t), index_id('y', i), index_id('y', j), g.L.curv(t, g.pair(i, j))});
  }
  for (int v = 0; v < s.num_vertices(); ++v) {
    auto idx = Y.valid_at(v);
    for (int i : idx)
      for (int j : idx)
        for (int k : idx)
          mu.push_back({nm.vname(v), index_id('y', i), index_id('y', j), index_id('y', k), cplx_json(g.m(v, i, j, k))});
  }
  return {{"C", C}, {"L", {{"transport", Lt}, {"curvature", Lc}}}, {"mu", mu}};
}

GerbePtr gerbe_from(const Names& nm, const CoverPtr& Y, const IndexTable& yt, const json& j) {
  BundleGerbe g = BundleGerbe::empty(Y);
  auto pair_of = [&](const json& a, const json& b) {
    int p = g.pair(yt.at(a), yt.at(b));
    if (p < 0) bad("indices " + a.dump() + "," + b.dump() + " do not overlap");
    return p;
  };
  auto check_valid = [&](int simplex, int p, const std::string& where) {
    if (!g.Y2->valid(p, simplex)) bad("index pair not valid on " + where);
  };
  for (const auto& r : need(j, "C")) {
    if (!r.is_array() || r.size() != 3) bad("C entry must be [triangle, index, value]");
    int t = nm.triangle(r[0]), i = yt.at(r[1]);
    if (!Y->valid(i, nm.surface().triangle_simplex(t))) bad("C entry on an invalid index");
    g.C.set({t, i}, real_from(r[2]));
  }
  const auto& L = need(j, "L");
  for (const auto& r : need(L, "transport")) {
    if (!r.is_array() || r.size() != 4) bad("L transport entry must be [edge, i, j, value]");
    auto [e, dir] = nm.edge(r[0]);
    int p = pair_of(r[1], r[2]);
    check_valid(nm.surface().edge_simplex(e), p, "edge");
    cplx u = cplx_from(r[3]);
    g.L.transport.set({e, p}, scalar_mat(dir > 0 ? u : unit_inv(u)));
  }
  for (const auto& r : need(L, "curvature")) {
    if (!r.is_array() || r.size() != 4) bad("L curvature entry must be [triangle, i, j, value]");
    int t = nm.triangle(r[0]);
    int p = pair_of(r[1], r[2]);
    check_valid(nm.surface().triangle_simplex(t), p, "triangle");
    g.L.tc.set({t, p}, real_from(r[3]));
  }
  for (const auto& r : need(j, "mu")) {
    if (!r.is_array() || r.size() != 5) bad("mu entry must be [vertex, i, j, k, value]");
    int v = nm.vertex(r[0]);
    int a = yt.at(r[1]), b = yt.at(r[2]), c = yt.at(r[3]);
    if (!Y->valid(a, v) || !Y->valid(b, v) || !Y->valid(c, v)) bad("mu entry on an invalid index");
    g.mu.set({v, a, b, c}, cplx_from(r[4]));
  }
  return std::make_shared<const BundleGerbe>(std::move(g));
}

// Resolves gerbe references inside morphism sections.
struct GerbeRefs {
  GerbePtr G, Gd, kG;
  const IndexTable* main = nullptr;
  SurfacePtr base;

  json ref(const GerbePtr& g) const {
    if (G && same_gerbe(g, G)) return "G";
    if (Gd && same_gerbe(g, Gd)) return "G*";
    if (kG && same_gerbe(g, kG)) return "k*G";
    if (is_trivial_gerbe(*g)) return {{"trivial", trivial_rho(*g)}};
    throw ParseError("morphism endpoint is not expressible in the scenario");
  }
  std::pair<GerbePtr, IndexTable> resolve(const json& j) const {
    if (j.is_string()) {
      auto s = j.get<std::string>();
      if (s == "G" && G) return {G, *main};
      if (s == "G*" && Gd) return {Gd, *main};
      if (s == "k*G" && kG) return {kG, *main};
      bad("unknown gerbe reference '" + s + "'");
    }
    if (j.is_object() && j.contains("trivial")) {
      const auto& r = j["trivial"];
      if (!r.is_array() || static_cast<int>(r.size()) != base->num_triangles()) bad("trivial gerbe needs rho per triangle");
      std::vector<double> rho;
      for (const auto& x : r) rho.push_back(real_from(x));
      return {trivial_gerbe(base, rho), positional('y', 1)};
    }
    bad("bad gerbe reference " + j.dump());
  }
  // Index ids of a gerbe's cover as written by ref().
  std::string yid(const GerbePtr&, int i) const { return index_id('y', i); }
};

json atomic_json(const Names& nm, const GerbeRefs& refs, const MorphPtr& a) {
  const auto& s = nm.surface();
  const auto& m = *a;
  const auto& Z = *m.Z();
  json idx = json::array();
  for (int k = 0; k < m.size(); ++k)
    idx.push_back({{"id", index_id('z', k)},
                   {"label", Z.label(k)},
                   {"support", support_json(nm, Z.support(k))},
                   {"legs", {index_id('y', m.s(k)), index_id('y', m.t(k))}}});
  json tr = json::array(), cu = json::array(), al = json::array();
  for (int e = 0; e < s.num_edges(); ++e)
    for (int k : Z.valid_at(s.edge_simplex(e))) tr.push_back({nm.edge_json(e), index_id('z', k), mat_json(m.a(e, k))});
  for (int t = 0; t < s.num_triangles(); ++t)
    for (int k : Z.valid_at(s.triangle_simplex(t))) cu.push_back({Names::tname(t), index_id('z', k), m.A.curv(t, k)});
  for (int v = 0; v < s.num_vertices(); ++v) {
    auto idk = Z.valid_at(v);
    for (int k : idk)
      for (int k2 : idk) al.push_back({nm.vname(v), index_id('z', k), index_id('z', k2), mat_json(m.al(v, k, k2))});
  }
  return {{"source", refs.ref(m.src)},
          {"target", refs.ref(m.tgt)},
          {"rank", m.rank},
          {"refinement", {{"indices", idx}}},
          {"transport", tr},
          {"curvature", cu},
          {"alpha", al}};
}

// Composites are written as their atomic factors when every intermediate gerbe
// is expressible, otherwise as one atomized morphism.
json morphism_json(const Names& nm, const GerbeRefs& refs, const MorphPtr& m) {
  if (!m->atomic()) {
    try {
      json fs = json::array();
      for (const auto& f : factors(m)) fs.push_back(atomic_json(nm, refs, f));
      return {{"factors", fs}};
    } catch (const ParseError&) {
    }
  }
  return atomic_json(nm, refs, atomize(m));
}

MorphPtr atomic_from(const Names& nm, const GerbeRefs& refs, const json& j) {
  auto [src, st] = refs.resolve(need(j, "source"));
  auto [tgt, tt] = refs.resolve(need(j, "target"));
  const auto& rk = need(j, "rank");
  if (!rk.is_number_integer() || rk.get<int>() < 0) bad("rank must be a non-negative integer");
  const int n = rk.get<int>();
  IndexTable zt;
  CoverPtr Z = cover_from(nm, refs.base, need(j, "refinement"), zt);
  std::vector<std::pair<int, int>> legs(Z->size());
  for (const auto& x : need(need(j, "refinement"), "indices")) {
    const auto& l = need(x, "legs");
    if (!l.is_array() || l.size() != 2) bad("legs must be [source index, target index]");
    legs[zt.at(x["id"])] = {st.at(l[0]), tt.at(l[1])};
  }
  OneMorphism m;
  try {
    m = empty_morphism(src, tgt, Z, legs, n);
  } catch (const Error& e) {
    bad(std::string("refinement: ") + e.what());
  }
  const auto& s = nm.surface();
  for (const auto& r : need(j, "transport")) {
    if (!r.is_array() || r.size() != 3) bad("transport entry must be [edge, index, matrix]");
    auto [e, dir] = nm.edge(r[0]);
    int k = zt.at(r[1]);
    if (!Z->valid(k, s.edge_simplex(e))) bad("transport on an invalid index");
    Mat u = mat_from(r[2], n, n);
    m.A.transport.set({e, k}, dir > 0 ? u : Mat(u.adjoint()));
  }
  if (j.contains("curvature")) {
    for (const auto& r : j["curvature"]) {
      if (!r.is_array() || r.size() != 3) bad("curvature entry must be [triangle, index, value]");
      int t = nm.triangle(r[0]), k = zt.at(r[1]);
      if (!Z->valid(k, s.triangle_simplex(t))) bad("curvature on an invalid index");
      m.A.tc.set({t, k}, real_from(r[2]));
    }
  } else {
    set_morphism_curvature(m);
  }
  for (const auto& r : need(j, "alpha")) {
    if (!r.is_array() || r.size() != 4) bad("alpha entry must be [vertex, index, index, matrix]");
    int v = nm.vertex(r[0]), k = zt.at(r[1]), k2 = zt.at(r[2]);
    if (!Z->valid(k, v) || !Z->valid(k2, v)) bad("alpha on an invalid index");
    m.alpha.set({v, k, k2}, mat_from(r[3], n, n));
  }
  return std::make_shared<const OneMorphism>(std::move(m));
}

MorphPtr morphism_from(const Names& nm, const GerbeRefs& refs, const json& j) {
  if (!j.is_object() || !j.contains("factors")) return atomic_from(nm, refs, j);
  const auto& fs = j["factors"];
  if (!fs.is_array() || fs.empty()) bad("factors must be a nonempty list");
  std::vector<MorphPtr> ms;
  for (const auto& f : fs) ms.push_back(atomic_from(nm, refs, f));
  try {
    return compose_chain(ms);
  } catch (const Error& e) {
    bad(std::string("factors do not compose: ") + e.what());
  }
}

json map_json(const SimplicialMap& f) {
  Names sn(*f.source()), tn(*f.target());
  json vm = json::object();
  for (int v = 0; v < f.source()->num_vertices(); ++v) vm[sn.vname(v)] = tn.vname(f.vertex_map()[v]);
  return vm;
}

std::vector<int> vertex_map_from(const Names& sn, const Names& tn, const json& j) {
  if (!j.is_object()) bad("vertex map must be an object");
  std::vector<int> vm(sn.surface().num_vertices(), -1);
  for (auto it = j.begin(); it != j.end(); ++it) vm[sn.vertex(json(it.key()))] = tn.vertex(it.value());
  for (int x : vm)
    if (x < 0) bad("vertex map is not total");
  return vm;
}

}  // namespace

std::optional<DBrane> Scenario::brane() const {
  if (!brane_support) return std::nullopt;
  auto it = morphisms.find(brane_module);
  if (it == morphisms.end()) throw ParseError("brane module '" + brane_module + "' is not a morphism");
  return DBrane{*brane_support, it->second};
}

json serialize(const Scenario& sc) {
  json j;
  j["surface"] = surface_json(*sc.surface);
  if (!sc.meta.empty()) j["meta"] = sc.meta;
  if (!sc.gerbe) return j;
  SurfacePtr gb = sc.gerbe_base();
  Names nm(*gb);
  j["cover"] = cover_json(nm, *sc.gerbe->Y, 'y');
  j["gerbe"] = gerbe_json(nm, *sc.gerbe);
  j["gerbe"]["double_cover"] = sc.double_cover;

  IndexTable main = positional('y', sc.gerbe->size());
  GerbeRefs refs{sc.gerbe, dual_gerbe(sc.gerbe), nullptr, &main, gb};
  if (sc.jandl) refs.kG = pullback_gerbe(sc.gerbe, sc.jandl->k);

  json ms = json::object();
  for (const auto& [name, m] : sc.morphisms) ms[name] = morphism_json(nm, refs, m);
  j["morphisms"] = ms;

  if (sc.jandl) {
    const auto& J = *sc.jandl;
    json jj;
    jj["involution"] = map_json(J.k);
    jj["A"] = morphism_json(nm, refs, J.A);
    const auto& phi = J.phi;
    json idx = json::array();
    for (int w = 0; w < phi.size(); ++w)
      idx.push_back({{"id", index_id('w', w)},
                     {"label", phi.W->label(w)},
                     {"support", support_json(nm, phi.W->support(w))},
                     {"legs", {index_id('z', phi.w1[w]), index_id('z', phi.w2[w])}}});
    json beta = json::array();
    for (int v = 0; v < gb->num_vertices(); ++v)
      for (int w : phi.W->valid_at(v)) beta.push_back({nm.vname(v), index_id('w', w), mat_json(phi.b(v, w))});
    jj["phi"] = {{"W", {{"indices", idx}}}, {"beta", beta}};
    j["jandl"] = jj;
  }
  if (sc.brane_support) j["brane"] = {{"support", support_json(nm, *sc.brane_support)}, {"module", sc.brane_module}};
  if (sc.map) j["map"] = {{"source", surface_json(*sc.map->source())}, {"vertices", map_json(*sc.map)}};
  return j;
}

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) bad("scenario must be a JSON object");
  Scenario sc;
  sc.surface = surface_from(need(j, "surface"));
  if (j.contains("meta")) sc.meta = j["meta"];
  if (!j.contains("gerbe")) {
    for (const char* k : {"morphisms", "jandl", "brane", "cover"})
      if (j.contains(k)) bad(std::string("section '") + k + "' needs a gerbe");
    if (j.contains("map")) {
      const auto& mj = j["map"];
      auto src = surface_from(need(mj, "source"));
      sc.map = SimplicialMap(src, sc.surface, vertex_map_from(Names(*src), Names(*sc.surface), need(mj, "vertices")));
    }
    return sc;
  }
  const auto& gj = j["gerbe"];
  sc.double_cover = gj.value("double_cover", false);
  if (sc.double_cover) {
    if (!sc.surface->closed()) bad("double_cover needs a closed surface");
    sc.oc = std::make_shared<const OrientationCover>(orientation_cover(sc.surface));
  }
  SurfacePtr gb = sc.gerbe_base();
  Names nm(*gb);
  IndexTable yt;
  CoverPtr Y = cover_from(nm, gb, need(j, "cover"), yt);
  sc.gerbe = gerbe_from(nm, Y, yt, gj);

  GerbeRefs refs{sc.gerbe, dual_gerbe(sc.gerbe), nullptr, &yt, gb};
  std::optional<SimplicialMap> k;
  if (j.contains("jandl")) {
    k = SimplicialMap(gb, gb, vertex_map_from(nm, nm, need(j["jandl"], "involution")));
    if (!k->is_involution()) bad("jandl involution is not an involution");
    refs.kG = pullback_gerbe(sc.gerbe, *k);
  }
  if (j.contains("morphisms")) {
    const auto& ms = j["morphisms"];
    if (!ms.is_object()) bad("morphisms must be an object");
    for (auto it = ms.begin(); it != ms.end(); ++it) sc.morphisms[it.key()] = morphism_from(nm, refs, it.value());
  }
  if (k) {
    const auto& jj = j["jandl"];
    JandlStructure J;
    J.k = *k;
    J.A = morphism_from(nm, refs, need(jj, "A"));
    MorphPtr ka, ad;
    try {
      ka = pullback_1(J.A, J.k);
      ad = dual_1(J.A);
    } catch (const Error& e) {
      bad(std::string("jandl: ") + e.what());
    }
    const auto& pj = need(jj, "phi");
    IndexTable wt;
    CoverPtr W = cover_from(nm, gb, need(pj, "W"), wt);
    IndexTable z1 = positional('z', ka->size()), z2 = positional('z', ad->size());
    std::vector<int> w1(W->size()), w2(W->size());
    for (const auto& x : need(need(pj, "W"), "indices")) {
      const auto& l = need(x, "legs");
      if (!l.is_array() || l.size() != 2) bad("W legs must be [source index, target index]");
      int w = wt.at(x["id"]);
      w1[w] = z1.at(l[0]);
      w2[w] = z2.at(l[1]);
    }
    J.phi = empty_rep(ka, ad, W, w1, w2);
    for (const auto& r : need(pj, "beta")) {
      if (!r.is_array() || r.size() != 3) bad("beta entry must be [vertex, index, matrix]");
      int v = nm.vertex(r[0]), w = wt.at(r[1]);
      if (!W->valid(w, v)) bad("beta on an invalid index");
      J.phi.beta.set({v, w}, mat_from(r[2], ad->rank, ka->rank));
    }
    sc.jandl = std::move(J);
  }
  if (j.contains("brane")) {
    const auto& bj = j["brane"];
    sc.brane_support = support_from(nm, need(bj, "support"));
    sc.brane_module = need(bj, "module").get<std::string>();
    if (!sc.morphisms.count(sc.brane_module)) bad("brane module '" + sc.brane_module + "' is not a morphism");
  }
  if (j.contains("map")) {
    const auto& mj = j["map"];
    auto src = surface_from(need(mj, "source"));
    sc.map = SimplicialMap(src, gb, vertex_map_from(Names(*src), nm, need(mj, "vertices")));
  }
  return sc;
}

Report validate_scenario(const Scenario& s, double eps) {
  Report r;
  r.merge(validate_gerbe(*s.gerbe, eps), "gerbe.");
  for (const auto& [name, m] : s.morphisms) r.merge(validate_1(*m, eps), "morphisms." + name + ".");
  if (s.jandl) r.merge(jandl_validate(s.gerbe, *s.jandl, eps), "jandl.");
  if (auto b = s.brane()) r.merge(validate_dbrane(s.gerbe, *b, eps), "brane.");
  return r;
}

Scenario read_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  try {
    return parse_scenario(j);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << serialize(s).dump(1) << "\n";
  if (!out) throw ParseError("write failed for " + path);
}

bool scenarios_equal(const Scenario& a, const Scenario& b) {
  if (!same_surface(a.surface, b.surface) || a.double_cover != b.double_cover || a.meta != b.meta) return false;
  Names na(*a.surface), nb(*b.surface);
  for (int v = 0; v < a.surface->num_vertices(); ++v)
    if (na.vname(v) != nb.vname(v)) return false;
  if (!a.gerbe != !b.gerbe || (a.gerbe && !gerbes_equal(*a.gerbe, *b.gerbe))) return false;
  if (a.morphisms.size() != b.morphisms.size()) return false;
  for (const auto& [name, m] : a.morphisms) {
    auto it = b.morphisms.find(name);
    if (it == b.morphisms.end() || !morphisms_equal(*m, *it->second)) return false;
  }
  if (a.jandl.has_value() != b.jandl.has_value()) return false;
  if (a.jandl) {
    const auto &x = *a.jandl, &y = *b.jandl;
    if (x.k.vertex_map() != y.k.vertex_map() || !morphisms_equal(*x.A, *y.A) || !reps_equal(x.phi, y.phi))
      return false;
  }
  if (a.brane_support.has_value() != b.brane_support.has_value()) return false;
  if (a.brane_support && (!(*a.brane_support == *b.brane_support) || a.brane_module != b.brane_module)) return false;
  if (a.map.has_value() != b.map.has_value()) return false;
  if (a.map && (!same_surface(a.map->source(), b.map->source()) || a.map->vertex_map() != b.map->vertex_map()))
    return false;
  return true;
}

}  // namespace gerbes
