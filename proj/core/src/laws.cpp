#include "gerbes/laws.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "gerbes/holonomy.hpp"
#include "gerbes/jandl.hpp"
#include "gerbes/normalize.hpp"
#include "gerbes/random.hpp"
#include "gerbes/surfaces.hpp"

namespace gerbes {

void LawResult::observe(double dev, double eps, const std::string& where) {
  if (std::isnan(dev)) dev = std::numeric_limits<double>::infinity();
  max_deviation = std::max(max_deviation, dev);
  if (dev > eps) {
    pass = false;
    if (failures.size() < 8) {
      std::ostringstream os;
      os << where << ": deviation " << dev;
      failures.push_back(os.str());
    }
  }
}

void LawResult::require(bool ok, const std::string& where) {
  if (ok) return;
  pass = false;
  max_deviation = std::numeric_limits<double>::infinity();
  if (failures.size() < 8) failures.push_back(where);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double exact(bool same) { return same ? 0.0 : kInf; }

// Laws of one suite keyed by name, in insertion order.
class Book {
 public:
  LawResult& operator[](const std::string& name) {
    auto it = pos_.find(name);
    if (it != pos_.end()) return laws_[it->second];
    pos_[name] = laws_.size();
    laws_.emplace_back().name = name;
    return laws_.back();
  }
  // Runs one case; an exception fails `law` with its message.
  template <class F>
  void run(const std::string& law, int c, F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    try {
      f();
    } catch (const std::exception& e) {
      (*this)[law].require(false, "case " + std::to_string(c) + ": " + e.what());
    }
    (*this)[law].seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  Suite finish(int cases) {
    for (auto& l : laws_)
      if (l.cases == 0) l.cases = cases;
    return laws_;
  }

 private:
  std::vector<LawResult> laws_;
  std::map<std::string, std::size_t> pos_;
};

std::string at(int c) { return "case " + std::to_string(c); }

// Random instances: gauged gerbes and 1-morphisms between them.
struct Gen {
  Rng rng;
  explicit Gen(unsigned seed) : rng(seed) {}

  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  SurfacePtr surface(bool closed_only) { return random_surface(rng, closed_only); }
  GaugedGerbe gerbe(const SurfacePtr& s, const std::vector<double>& rho) {
    return random_gauge(s, rho, uniform_int(1, 4), rng);
  }
  GaugedGerbe gerbe(const SurfacePtr& s) { return gerbe(s, random_rho(*s, rng)); }

  struct Step {
    MorphPtr E;
    GaugedGerbe to;
    RandomMorphism A;
  };
  Step step(const GaugedGerbe& from, int rank, bool refine = true) {
    Step st;
    st.E = random_trivial_morphism(from.I, rank, rng);
    st.to = gerbe(from.G->base(), trivial_rho(*st.E->tgt));
    st.A = random_morphism(from, st.E, st.to, rng, refine);
    return st;
  }

  // X => Y => Z over the same gerbes, with b: X => Y and bp: Y => Z.
  struct Cell {
    MorphPtr X, Y, Z;
    TwoMorphismRep b, bp;
  };
  Cell cell(const GaugedGerbe& from, const Step& st) {
    Cell c;
    auto c1 = random_conjugate(st.E, rng);
    auto c2 = random_conjugate(c1.E2, rng);
    auto Y = random_morphism(from, c1.E2, st.to, rng);
    auto Z = random_morphism(from, c2.E2, st.to, rng);
    c.X = st.A.A;
    c.Y = Y.A;
    c.Z = Z.A;
    c.b = lift_2(from, st.to, st.A, Y, c1.gamma);
    c.bp = lift_2(from, st.to, Y, Z, c2.gamma);
    return c;
  }
};

bool same_chain(const MorphPtr& a, const MorphPtr& b) {
  auto fa = factors(a), fb = factors(b);
  if (fa.size() != fb.size()) return false;
  for (std::size_t i = 0; i < fa.size(); ++i)
    if (fa[i] != fb[i] && !morphisms_equal(*fa[i], *fb[i])) return false;
  return true;
}

// Index i1*n2+i2 of a Kronecker product kron(x1, x2) sits at i2*n1+i1 in kron(x2, x1).
std::vector<int> swap_perm(int n1, int n2) {
  std::vector<int> p(static_cast<std::size_t>(n1 * n2));
  for (int i1 = 0; i1 < n1; ++i1)
    for (int i2 = 0; i2 < n2; ++i2) p[i1 * n2 + i2] = i2 * n1 + i1;
  return p;
}

bool permuted_equal(const Mat& x, const Mat& y, const std::vector<int>& rows, const std::vector<int>& cols) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
  for (Eigen::Index r = 0; r < x.rows(); ++r)
    for (Eigen::Index c = 0; c < x.cols(); ++c)
      if (x(r, c) != y(rows[r], cols[c])) return false;
  return true;
}

// x lives over FP(Y1, Y2), y over FP(Y2, Y1); exact comparison under the factor swap.
bool gerbes_equal_swapped(const BundleGerbe& x, const BundleGerbe& y) {
  if (x.size() != y.size()) return false;
  const auto& s = *x.base();
  std::vector<int> m(x.size());
  for (int a = 0; a < x.size(); ++a) {
    m[a] = y.Y->index_of2(x.Y->comp(a, 1), x.Y->comp(a, 0));
    if (m[a] < 0 || !(x.Y->support(a) == y.Y->support(m[a]))) return false;
  }
  for (int a = 0; a < x.size(); ++a) {
    for (int t = 0; t < s.num_triangles(); ++t)
      if (x.Y->valid(a, s.triangle_simplex(t)) && x.c(t, a) != y.c(t, m[a])) return false;
    for (int b = 0; b < x.size(); ++b) {
      int p = x.pair(a, b);
      if (p < 0) continue;
      int q = y.pair(m[a], m[b]);
      if (q < 0) return false;
      for (int e = 0; e < s.num_edges(); ++e)
        if (x.Y2->valid(p, s.edge_simplex(e)) && x.u(e, a, b) != y.u(e, m[a], m[b])) return false;
      for (int t = 0; t < s.num_triangles(); ++t)
        if (x.Y2->valid(p, s.triangle_simplex(t)) && x.L.curv(t, p) != y.L.curv(t, q)) return false;
    }
  }
  for (int v = 0; v < s.num_vertices(); ++v) {
    auto idx = x.Y->valid_at(v);
    for (int a : idx)
      for (int b : idx)
        for (int c : idx)
          if (x.m(v, a, b, c) != y.m(v, m[a], m[b], m[c])) return false;
  }
  return true;
}

// x = (A1 (x) A2)*, y = A2* (x) A1* for atomic A1, A2 of ranks n1, n2.
bool morphisms_equal_swapped(const OneMorphism& x, const OneMorphism& y, int n1, int n2) {
  if (x.rank != y.rank || x.size() != y.size()) return false;
  if (!gerbes_equal_swapped(*x.src, *y.src) || !gerbes_equal_swapped(*x.tgt, *y.tgt)) return false;
  const auto& s = *x.Z()->base();
  auto swapped = [](const Cover& from, const Cover& to, int i) { return to.index_of2(from.comp(i, 1), from.comp(i, 0)); };
  std::vector<int> m(x.size());
  for (int k = 0; k < x.size(); ++k) {
    m[k] = swapped(*x.Z(), *y.Z(), k);
    if (m[k] < 0 || !(x.Z()->support(k) == y.Z()->support(m[k]))) return false;
    if (swapped(*x.src->Y, *y.src->Y, x.s(k)) != y.s(m[k])) return false;
    if (swapped(*x.tgt->Y, *y.tgt->Y, x.t(k)) != y.t(m[k])) return false;
  }
  auto p = swap_perm(n1, n2);
  for (int k = 0; k < x.size(); ++k) {
    for (int e = 0; e < s.num_edges(); ++e)
      if (x.Z()->valid(k, s.edge_simplex(e)) && !permuted_equal(x.a(e, k), y.a(e, m[k]), p, p)) return false;
    for (int t = 0; t < s.num_triangles(); ++t)
      if (x.Z()->valid(k, s.triangle_simplex(t)) && x.A.curv(t, k) != y.A.curv(t, m[k])) return false;
  }
  for (int v = 0; v < s.num_vertices(); ++v) {
    auto idx = x.Z()->valid_at(v);
    for (int k : idx)
      for (int k2 : idx)
        if (!permuted_equal(x.al(v, k, k2), y.al(v, m[k], m[k2]), p, p)) return false;
  }
  return true;
}

// x = (b1 (x) b2)*, y = b2* (x) b1* for 2-morphisms between atomic morphisms.
bool reps_equal_swapped(const TwoMorphismRep& x, const TwoMorphismRep& y, int s1, int s2, int t1, int t2) {
  if (x.size() != y.size()) return false;
  if (!morphisms_equal_swapped(*x.src, *y.src, s1, s2) || !morphisms_equal_swapped(*x.tgt, *y.tgt, t1, t2))
    return false;
  const auto& s = *x.W->base();
  auto swapped = [](const Cover& from, const Cover& to, int i) { return to.index_of2(from.comp(i, 1), from.comp(i, 0)); };
  auto ps = swap_perm(s1, s2), pt = swap_perm(t1, t2);
  for (int w = 0; w < x.size(); ++w) {
    int w2 = swapped(*x.W, *y.W, w);
    if (w2 < 0 || !(x.W->support(w) == y.W->support(w2))) return false;
    if (swapped(*x.src->Z(), *y.src->Z(), x.w1[w]) != y.w1[w2]) return false;
    if (swapped(*x.tgt->Z(), *y.tgt->Z(), x.w2[w]) != y.w2[w2]) return false;
    for (int v = 0; v < s.num_vertices(); ++v)
      if (x.W->valid(w, v) && !permuted_equal(x.b(v, w), y.b(v, w2), pt, ps)) return false;
  }
  return true;
}

// Exact comparison of two reps between the same morphisms as functions of
// (vertex, leg pair), each read from its least index; W labels may differ.
bool tables_equal(const TwoMorphismRep& x, const TwoMorphismRep& y) {
  if (!morphisms_equal(*x.src, *y.src) || !morphisms_equal(*x.tgt, *y.tgt)) return false;
  using Key = std::tuple<int, int, int>;
  auto table = [](const TwoMorphismRep& r) {
    std::map<Key, const Mat*> t;
    const auto& s = *r.W->base();
    for (int v = 0; v < s.num_vertices(); ++v)
      for (int w : r.W->valid_at(v)) t.emplace(Key{v, r.w1[w], r.w2[w]}, &r.b(v, w));
    return t;
  };
  auto tx = table(x), ty = table(y);
  if (tx.size() != ty.size()) return false;
  for (auto ix = tx.begin(), iy = ty.begin(); ix != tx.end(); ++ix, ++iy)
    if (ix->first != iy->first || !exactly_equal(*ix->second, *iy->second)) return false;
  return true;
}

// Transport data agree exactly (sites may be labelled differently); returns the
// largest curvature gap, +inf on any transport mismatch.
double bundle_gap(const DiscreteBundle& a, const DiscreteBundle& b) {
  if (a.rank != b.rank || a.tc.shape() != b.tc.shape() ||
      !fields_equal(a.transport, b.transport, [](const Mat& x, const Mat& y) { return exactly_equal(x, y); }))
    return kInf;
  double d = 0.0;
  for (std::size_t i = 0; i < a.tc.flat_size(); ++i) {
    const auto &x = a.tc.raw(i), &y = b.tc.raw(i);
    if (x.has_value() != y.has_value()) return kInf;
    if (x) d = std::max(d, std::abs(*x - *y));
  }
  return d;
}

double morphism_distance(const BundleMorphism& f, const BundleMorphism& g) {
  if (f.m.shape() != g.m.shape()) return kInf;
  double d = 0.0;
  for (std::size_t i = 0; i < f.m.flat_size(); ++i) {
    const auto &x = f.m.raw(i), &y = g.m.raw(i);
    if (x.has_value() != y.has_value()) return kInf;
    if (x) d = std::max(d, max_abs_diff(*x, *y));
  }
  return d;
}

void check_report(LawResult& l, const Report& r, double eps, const std::string& where) {
  if (r.ok()) {
    l.observe(r.max_deviation, eps, where);
    return;
  }
  l.require(false, where + ": " + r.violations.front().law + " at " + r.violations.front().where);
}

// Loop transport of a single-index bundle along a boundary cycle.
Mat direct_loop(const OneMorphism& E, const OrientedCycle& c) {
  Mat m = Mat::Identity(E.rank, E.rank);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Mat& u = E.a(c.edges[i], 0);
    m = (c.dirs[i] > 0 ? u : Mat(u.adjoint())) * m;
  }
  return m;
}

double phase_gap(cplx a, cplx b) { return std::abs(a - b); }

}  // namespace

Suite twocat_laws(const LawConfig& cfg) {
  Gen g(cfg.seed);
  Book book;
  for (int c = 0; c < cfg.cases; ++c) {
    auto s = g.surface(false);
    auto g0 = g.gerbe(s);
    auto st0 = g.step(g0, g.uniform_int(1, 2));
    auto st1 = g.step(st0.to, g.uniform_int(1, 2));
    auto st2 = g.step(st1.to, 1);
    const MorphPtr &A1 = st0.A.A, &A2 = st1.A.A, &A3 = st2.A.A;
    book.run("compose.associativity", c, [&] {
      auto l = compose_1(A3, compose_1(A2, A1));
      auto r = compose_1(compose_1(A3, A2), A1);
      book["compose.associativity"].observe(exact(morphisms_equal(*l, *r) && same_chain(l, r)), 0.0, at(c));
    });
    book.run("compose.unitor_triangle", c, [&] {
      auto x = horizontal(identity_2(A2), right_unitor(A1));
      auto y = horizontal(left_unitor(A2), identity_2(A1));
      book["compose.unitor_triangle"].observe(distance_2(x, y), cfg.eps, at(c));
    });
    book.run("functor.identity", c, [&] {
      auto x = horizontal(identity_2(A2), identity_2(A1));
      book["functor.identity"].observe(distance_2(x, identity_2(compose_1(A2, A1))), cfg.eps, at(c));
    });
    auto c0 = g.cell(g0, st0);
    auto c1 = g.cell(st0.to, st1);
    book.run("interchange", c, [&] {
      auto lhs = horizontal(vertical(c1.bp, c1.b), vertical(c0.bp, c0.b));
      auto rhs = vertical(horizontal(c1.bp, c0.bp), horizontal(c1.b, c0.b));
      book["interchange"].observe(distance_2(lhs, rhs), cfg.eps, at(c));
    });
    book.run("vertical.unit", c, [&] {
      double d = std::max(distance_2(vertical(c0.b, identity_2(c0.X)), c0.b),
                          distance_2(vertical(identity_2(c0.Y), c0.b), c0.b));
      book["vertical.unit"].observe(d, cfg.eps, at(c));
    });
    book.run("vertical.associativity", c, [&] {
      auto inv = inverse_2(c0.b);
      auto l = vertical(vertical(c0.bp, c0.b), inv);
      auto r = vertical(c0.bp, vertical(c0.b, inv));
      book["vertical.associativity"].observe(distance_2(l, r), cfg.eps, at(c));
    });
    book.run("unitor.naturality", c, [&] {
      auto idl = identity_2(identity_1(g0.G));
      auto idr = identity_2(identity_1(st0.to.G));
      double d = std::max(
          distance_2(vertical(c0.b, left_unitor(c0.X)), vertical(left_unitor(c0.Y), horizontal(c0.b, idl))),
          distance_2(vertical(c0.b, right_unitor(c0.X)), vertical(right_unitor(c0.Y), horizontal(idr, c0.b))));
      book["unitor.naturality"].observe(d, cfg.eps, at(c));
    });
    book.run("horizontal.valid", c, [&] {
      check_report(book["horizontal.valid"], validate_2(horizontal(c1.b, c0.b), cfg.eps), cfg.eps, at(c));
    });
  }
  return book.finish(cfg.cases);
}

Suite lemma_laws(const LawConfig& cfg) {
  Gen g(cfg.seed + 1000);
  Book book;
  for (int c = 0; c < cfg.cases; ++c) {
    auto s = g.surface(false);
    auto g0 = g.gerbe(s);
    auto st = g.step(g0, g.uniform_int(1, 3));
    book.run("t_mu.identities", c, [&] {
      for (const auto& G : {g0.G, st.to.G, tensor_gerbe(g0.G, st.to.G), dual_gerbe(g0.G)}) {
        auto t = t_mu(*G);
        double d = 0.0;
        for (int v = 0; v < s->num_vertices(); ++v) {
          auto idx = G->Y->valid_at(v);
          for (int i : idx)
            for (int j : idx) {
              d = std::max(d, std::abs(G->m(v, i, i, j) - t.at({v, i})));
              d = std::max(d, std::abs(G->m(v, i, j, j) - t.at({v, j})));
            }
        }
        book["t_mu.identities"].observe(d, cfg.eps, at(c));
      }
    });
    std::vector<MorphPtr> ms{identity_1(g0.G), g0.B, g0.Binv, st.A.A, st.A.core, compose_1(st.A.A, g0.Binv)};
    for (const auto& m : ms) {
      book.run("morphism.valid", c, [&] { check_report(book["morphism.valid"], validate_1(*m, cfg.eps), cfg.eps, at(c)); });
      book.run("d_A.cocycle", c, [&] {
        auto d = d_of(*m);
        const auto& Z = *m->Z();
        double dev = 0.0, dsq = 0.0;
        for (int v = 0; v < s->num_vertices(); ++v) {
          std::map<int, std::vector<int>> groups;
          for (int k : Z.valid_at(v)) groups[m->zeta.map[k]].push_back(k);
          for (const auto& [p, ks] : groups)
            for (int a : ks)
              for (int b : ks)
                for (int cc : ks)
                  dev = std::max(dev, max_abs_diff(d.at({v, b, cc}) * d.at({v, a, b}), d.at({v, a, cc})));
          std::vector<std::pair<int, int>> pairs;
          for (const auto& [p, ks] : groups)
            for (int a : ks)
              for (int b : ks) pairs.emplace_back(a, b);
          for (const auto& [k1, k2] : pairs)
            for (const auto& [k3, k4] : pairs)
              dsq = std::max(dsq, max_abs_diff(d.at({v, k1, k2}) * m->al(v, k1, k3), m->al(v, k2, k4) * d.at({v, k3, k4})));
        }
        book["d_A.cocycle"].observe(dev, cfg.eps, at(c));
        book["d_A.square"].observe(dsq, cfg.eps, at(c));
      });
    }
  }
  book["d_A.square"];
  return book.finish(cfg.cases);
}

Suite inverse_laws(const LawConfig& cfg) {
  Gen g(cfg.seed + 2000);
  Book book;
  for (int c = 0; c < cfg.cases; ++c) {
    auto s = g.surface(false);
    auto g0 = g.gerbe(s);
    auto st = g.step(g0, 1);
    const MorphPtr& A = st.A.A;
    book.run("invert.zigzag", c, [&] {
      auto inv = invert(A);
      auto zig = vertical(left_unitor(A), vertical(horizontal(identity_2(A), inv.i_l), horizontal(inv.i_r, identity_2(A))));
      double d1 = distance_2(zig, right_unitor(A));
      const auto& B = inv.inv;
      auto zag = vertical(right_unitor(B),
                          vertical(horizontal(inv.i_l, identity_2(B)),
                                   vertical(horizontal(identity_2(B), inv.i_r), inverse_2(left_unitor(B)))));
      double d2 = distance_2(zag, identity_2(B));
      book["invert.zigzag"].observe(std::max(d1, d2), cfg.eps, at(c));
    });
    auto cell = g.cell(g0, st);
    book.run("mate.identity", c, [&] {
      auto inv = invert_1(A);
      book["mate.identity"].observe(distance_2(mate(identity_2(A)), identity_2(inv)), cfg.eps, at(c));
    });
    book.run("mate.vertical", c, [&] {
      auto l = mate(vertical(cell.bp, cell.b));
      auto r = vertical(mate(cell.b), mate(cell.bp));
      book["mate.vertical"].observe(distance_2(l, r), cfg.eps, at(c));
    });
    book.run("mate.insertion_order", c, [&] {
      book["mate.insertion_order"].observe(distance_2(mate(cell.b), mate_alternative(cell.b)), cfg.eps, at(c));
    });
    book.run("inverse.composition", c, [&] {
      auto st1 = g.step(st.to, 1);
      auto l = invert_1(compose_1(st1.A.A, A));
      auto r = compose_1(invert_1(A), invert_1(st1.A.A));
      auto iso = solve_2iso(l, r);
      book["inverse.composition"].require(iso.has_value(), at(c) + ": no 2-isomorphism");
      if (iso) check_report(book["inverse.composition"], validate_2(*iso, cfg.eps), cfg.eps, at(c));
    });
    book.run("invert.not_invertible", c, [&] {
      auto big = g.step(g0, g.uniform_int(2, 3));
      int thrown = 0;
      for (const auto& m : {big.A.A, big.A.core, big.E}) {
        try {
          invert_1(m);
        } catch (const NotInvertible&) {
          ++thrown;
        }
        try {
          invert(m);
        } catch (const NotInvertible&) {
          ++thrown;
        }
        try {
          mate(identity_2(m));
        } catch (const NotInvertible&) {
          ++thrown;
        }
      }
      book["invert.not_invertible"].require(thrown == 9, at(c) + ": " + std::to_string(thrown) + "/9 raised");
    });
  }
  return book.finish(cfg.cases);
}

Suite descent_laws(const LawConfig& cfg) {
  Gen g(cfg.seed + 3000);
  Book book;
  for (int c = 0; c < cfg.cases; ++c) {
    auto s = g.surface(false);
    auto g0 = g.gerbe(s);
    auto st = g.step(g0, g.uniform_int(1, 3));
    const MorphPtr& A = st.A.A;
    Normalized N;
    book.run("normalize.round_trip", c, [&] {
      auto& l = book["normalize.round_trip"];
      l.require(!is_fp_form(*A), at(c) + ": input already in FP form");
      N = normalize_1(A);
      l.require(is_fp_form(*N.S), at(c) + ": S not in FP form");
      l.require(N.S->rank == A->rank, at(c) + ": rank changed");
      check_report(l, validate_1(*N.S, cfg.eps), cfg.eps, at(c) + " S");
      check_report(l, validate_2(N.iso, cfg.eps), cfg.eps, at(c) + " iso");
      auto inv = inverse_2(N.iso);
      l.observe(std::max(distance_2(vertical(N.iso, inv), identity_2(A)), distance_2(vertical(inv, N.iso), identity_2(N.S))),
                cfg.eps, at(c));
    });
    book.run("normalize.canonical", c, [&] {
      const auto& beta = st.A.iso;
      auto b2 = vertical(beta, identity_2(st.A.core));
      auto X = random_refinement(beta.W, g.rng);
      auto b3 = restrict_rep(beta, X.cover, X.to_old);
      auto t = make_two(beta);
      double d = std::max(canonical_distance(t, make_two(b2)), canonical_distance(t, make_two(b3)));
      book["normalize.canonical"].observe(d, cfg.eps, at(c));
    });
    book.run("normalize.fullness", c, [&] {
      auto cj = random_conjugate(st.E, g.rng);
      book["normalize.fullness"].observe(distance_2(cj.gamma, normalize_2(cj.gamma)), cfg.eps, at(c));
    });
    book.run("normalize.composition", c, [&] {
      auto st1 = g.step(st.to, 1);
      const MorphPtr& A2 = st1.A.A;
      if (!N.S) N = normalize_1(A);
      auto N2 = normalize_1(A2);
      auto Nc = normalize_1(compose_1(A2, A));
      auto q = vertical(inverse_2(Nc.iso), horizontal(N2.iso, N.iso));
      auto& l = book["normalize.composition"];
      check_report(l, validate_2(q, cfg.eps), cfg.eps, at(c));
      l.observe(distance_2(vertical(inverse_2(q), q), identity_2(compose_1(N2.S, N.S))), cfg.eps, at(c));
    });
  }
  return book.finish(cfg.cases);
}

Suite bun_laws(const LawConfig& cfg) {
  Gen g(cfg.seed + 4000);
  Book book;
  for (int c = 0; c < cfg.cases; ++c) {
    auto s = g.surface(false);
    auto rho1 = random_rho(*s, g.rng);
    auto I1 = trivial_gerbe(s, rho1);
    const int r1 = g.uniform_int(1, 3), r2 = g.uniform_int(1, 2);
    auto E1 = random_trivial_morphism(I1, r1, g.rng);
    auto E2 = random_trivial_morphism(E1->tgt, r2, g.rng);
    auto D1 = gauge_refine(E1, g.rng);
    auto D2 = gauge_refine(E2, g.rng);
    book.run("bun.composition", c, [&] {
      auto& l = book["bun.composition"];
      auto fp = bun(compose_1(E2, E1));
      l.observe(bundle_gap(fp, tensor(bun(E1), bun(E2))), cfg.eps, at(c) + " bundle");
      auto X = bun(compose_1(D2.A, D1.A));
      check_report(l, validate_bundle_morphism(fp, X, bun_2(horizontal(D2.iso, D1.iso)), cfg.eps), cfg.eps, at(c));
    });
    book.run("bun.unit", c, [&] {
      auto b = bun(identity_1(I1));
      bool ok = b.rank == 1;
      for (int e = 0; e < s->num_edges() && ok; ++e) ok = exactly_equal(b.U(e, 0), Mat::Identity(1, 1));
      for (int t = 0; t < s->num_triangles() && ok; ++t) ok = b.curv(t, 0) == 0.0;
      book["bun.unit"].observe(exact(ok), 0.0, at(c));
    });
    book.run("bun.inverse", c, [&] {
      auto& l = book["bun.inverse"];
      auto L1 = random_trivial_morphism(I1, 1, g.rng);
      auto Dl = gauge_refine(L1, g.rng);
      auto fp = bun(invert_1(L1));
      l.observe(bundle_gap(fp, dual(bun(L1))), 0.0, at(c) + " bundle");
      check_report(l, validate_bundle_morphism(bun(invert_1(Dl.A)), fp, bun_2(mate(Dl.iso)), cfg.eps), cfg.eps, at(c));
    });
    book.run("bun.tensor", c, [&] {
      auto& l = book["bun.tensor"];
      auto fp = bun(tensor_1(E1, E2));
      l.observe(bundle_gap(fp, tensor(bun(E1), bun(E2))), cfg.eps, at(c) + " bundle");
      check_report(l, validate_bundle_morphism(fp, bun(tensor_1(D1.A, D2.A)), bun_2(tensor_2(D1.iso, D2.iso)), cfg.eps),
                   cfg.eps, at(c));
    });
    auto cj = random_conjugate(E1, g.rng);
    book.run("bun.pullback", c, [&] {
      auto& l = book["bun.pullback"];
      std::vector<SimplicialMap> maps{SimplicialMap::identity(s),
                                      SimplicialMap(s, s, std::vector<int>(s->num_vertices(), 0))};
      if (s->closed()) {
        auto oc = orientation_cover(s);
        maps.push_back(oc.pr);
      }
      for (const auto& f : maps) {
        l.observe(bundle_gap(bun(pullback_1(E1, f)), pullback(bun(E1), f)), 0.0, at(c) + " bundle");
        auto pb = bun_2(pullback_2(cj.gamma, f));
        auto base = bun_2(cj.gamma);
        double d = 0.0;
        for (int v = 0; v < f.source()->num_vertices(); ++v)
          d = std::max(d, max_abs_diff(pb.m.at({v, 0}), base.m.at({f.vertex_map()[v], 0})));
        l.observe(d, 0.0, at(c) + " 2-morphism");
        check_report(l,
                     validate_bundle_morphism(bun(pullback_1(E1, f)), bun(pullback_1(D1.A, f)),
                                              bun_2(pullback_2(D1.iso, f)), cfg.eps),
                     cfg.eps, at(c) + " refined");
      }
    });
    book.run("bun.duality", c, [&] {
      auto& l = book["bun.duality"];
      l.observe(bundle_gap(bun(dual_1(E1)), bun(E1)), 0.0, at(c) + " bundle");
      l.observe(morphism_distance(bun_2(dual_2(cj.gamma)), bun_2(cj.gamma)), 0.0, at(c) + " 2-morphism");
    });
    book.run("bun.curvature", c, [&] {
      auto b = bun(D1.A);
      auto rho2 = trivial_rho(*E1->tgt);
      bool ok = b.rank == r1;
      for (int t = 0; t < s->num_triangles() && ok; ++t) ok = b.curv(t, 0) == r1 * (rho2[t] - rho1[t]);
      book["bun.curvature"].observe(exact(ok), 0.0, at(c));
    });
    book.run("bun.functorial", c, [&] {
      auto c2 = random_conjugate(cj.E2, g.rng);
      auto l = bun_2(vertical(c2.gamma, cj.gamma));
      auto r = compose(bun_2(c2.gamma), bun_2(cj.gamma));
      book["bun.functorial"].observe(morphism_distance(l, r), cfg.eps, at(c));
    });
  }
  return book.finish(cfg.cases);
}

Suite duality_laws(const LawConfig& cfg) {
  Gen g(cfg.seed + 5000);
  Book book;
  for (int c = 0; c < cfg.cases; ++c) {
    auto s = g.surface(c % 2 == 0);
    auto g0 = g.gerbe(s);
    auto h = g.gerbe(s);
    book.run("duality.gerbe_involution", c, [&] {
      book["duality.gerbe_involution"].observe(exact(gerbes_equal(*dual_gerbe(dual_gerbe(g0.G)), *g0.G)), 0.0, at(c));
    });
    book.run("duality.gerbe_tensor", c, [&] {
      auto x = dual_gerbe(tensor_gerbe(g0.G, h.G));
      auto y = tensor_gerbe(dual_gerbe(h.G), dual_gerbe(g0.G));
      book["duality.gerbe_tensor"].observe(exact(gerbes_equal_swapped(*x, *y)), 0.0, at(c));
    });
    book.run("duality.trivial_gerbe", c, [&] {
      auto rho = g0.rho;
      for (auto& x : rho) x = -x;
      book["duality.trivial_gerbe"].observe(exact(gerbes_equal(*dual_gerbe(g0.I), *trivial_gerbe(s, rho))), 0.0, at(c));
    });
    auto st0 = g.step(g0, g.uniform_int(1, 2));
    auto st1 = g.step(st0.to, g.uniform_int(1, 2));
    book.run("duality.morphism_involution", c, [&] {
      bool ok = morphisms_equal(*dual_1(dual_1(st0.A.A)), *st0.A.A) &&
                morphisms_equal(*dual_1(dual_1(st0.A.core)), *st0.A.core);
      book["duality.morphism_involution"].observe(exact(ok), 0.0, at(c));
    });
    book.run("duality.morphism_composition", c, [&] {
      auto l = dual_1(compose_1(st1.A.A, st0.A.A));
      auto r = compose_1(dual_1(st0.A.A), dual_1(st1.A.A));
      book["duality.morphism_composition"].observe(exact(morphisms_equal(*l, *r) && same_chain(l, r)), 0.0, at(c));
    });
    book.run("duality.morphism_tensor", c, [&] {
      const auto &a1 = st0.A.A, &a2 = st1.A.A;
      auto x = dual_1(tensor_1(a1, a2));
      auto y = tensor_1(dual_1(a2), dual_1(a1));
      book["duality.morphism_tensor"].observe(exact(morphisms_equal_swapped(*x, *y, a1->rank, a2->rank)), 0.0, at(c));
    });
    auto c0 = g.cell(g0, st0);
    auto c1 = g.cell(st0.to, st1);
    book.run("duality.vertical", c, [&] {
      auto l = dual_2(vertical(c0.bp, c0.b));
      auto r = vertical(dual_2(c0.bp), dual_2(c0.b));
      book["duality.vertical"].observe(exact(tables_equal(l, r)), 0.0, at(c));
    });
    book.run("duality.horizontal", c, [&] {
      auto l = dual_2(horizontal(c1.b, c0.b));
      auto r = horizontal(dual_2(c0.b), dual_2(c1.b));
      book["duality.horizontal"].observe(exact(tables_equal(l, r)), 0.0, at(c));
    });
    book.run("duality.two_morphism_involution", c, [&] {
      book["duality.two_morphism_involution"].observe(exact(reps_equal(dual_2(dual_2(c0.b)), c0.b)), 0.0, at(c));
    });
    book.run("duality.two_morphism_tensor", c, [&] {
      auto x = dual_2(tensor_2(c0.b, c1.b));
      auto y = tensor_2(dual_2(c1.b), dual_2(c0.b));
      const int n0 = c0.X->rank, n1 = c1.X->rank;
      book["duality.two_morphism_tensor"].observe(exact(reps_equal_swapped(x, y, n0, n1, n0, n1)), 0.0, at(c));
    });
    // Every case gets a closed instance, drawn separately when s has boundary.
    auto gc = s->closed() ? g0 : g.gerbe(g.surface(true));
    book.run("hol.dual", c, [&] {
      cplx h1 = holonomy_closed(gc.G), h2 = holonomy_closed(dual_gerbe(gc.G));
      book["hol.dual"].observe(phase_gap(h2, std::conj(h1)), cfg.eps, at(c));
    });
  }
  return book.finish(cfg.cases);
}

Suite holonomy_laws(const LawConfig& cfg) {
  Gen g(cfg.seed + 6000);
  Book book;
  for (int c = 0; c < cfg.cases; ++c) {
    auto s = g.surface(true);
    auto rho = random_rho(*s, g.rng);
    auto g0 = g.gerbe(s, rho);
    const cplx expected = std::polar(1.0, oriented_sum(*s, rho));
    book.run("hol.gauge", c, [&] {
      book["hol.gauge"].observe(phase_gap(holonomy_closed(g0.G), expected), cfg.eps, at(c));
    });
    book.run("hol.seeds", c, [&] {
      auto h0 = holonomy_closed(g0.G, 0u);
      auto h1 = holonomy_closed(g0.G, static_cast<unsigned>(c + 1));
      book["hol.seeds"].observe(phase_gap(h0, h1), cfg.eps, at(c));
    });
    auto h = g.gerbe(s);
    book.run("hol.tensor", c, [&] {
      auto ht = holonomy_closed(tensor_gerbe(g0.G, h.G));
      book["hol.tensor"].observe(phase_gap(ht, holonomy_closed(g0.G) * holonomy_closed(h.G)), cfg.eps, at(c));
    });
    book.run("hol.refinement", c, [&] {
      auto X = random_refinement(g0.G->Y, g.rng);
      auto r = refine_gerbe(g0.G, X.cover, X.to_old);
      book["hol.refinement"].observe(phase_gap(holonomy_closed(r, 3u), holonomy_closed(g0.G)), cfg.eps, at(c));
    });
    book.run("hol.stable_iso", c, [&] {
      auto& l = book["hol.stable_iso"];
      auto g1 = g.gerbe(s, rho);
      auto iso = stably_isomorphic(g0.G, g1.G);
      l.require(iso.has_value(), at(c) + ": no isomorphism between gauges of one I_rho");
      if (iso) {
        check_report(l, validate_1(**iso, cfg.eps), cfg.eps, at(c));
        l.require((*iso)->rank == 1 && is_fp_form(**iso), at(c) + ": not an FP 1-isomorphism");
      }
      l.observe(phase_gap(holonomy_closed(g0.G), holonomy_closed(g1.G)), cfg.eps, at(c));
      auto shifted = rho;
      shifted[0] += 1.0;
      l.require(!stably_isomorphic(g0.G, trivial_gerbe(s, shifted)).has_value(), at(c) + ": spurious isomorphism");
    });
    book.run("hol.double_cover", c, [&] {
      auto oc = orientation_cover(s);
      book["hol.double_cover"].observe(phase_gap(holonomy_closed(g0.G, oc.pr), 1.0), cfg.eps, at(c));
    });
    book.run("dbrane.direct", c, [&] {
      auto d = c % 2 == 0 ? surfaces::square_disc() : surfaces::grid_disc(2, 2);
      auto drho = random_rho(*d, g.rng);
      auto I = trivial_gerbe(d, drho);
      auto E = random_trivial_morphism(I, g.uniform_int(1, 3), g.rng);
      auto gd = g.gerbe(d, drho);
      DBrane br;
      br.Q = full_support(*d);
      br.module = compose_1(E, gd.B);
      cplx direct = std::polar(1.0, oriented_sum(*d, drho));
      for (const auto& cyc : d->boundary_cycles()) direct *= direct_loop(*E, cyc).trace();
      auto& l = book["dbrane.direct"];
      l.observe(phase_gap(holonomy_dbrane(gd.G, br, 0u), direct), cfg.eps, at(c) + " seed 0");
      l.observe(phase_gap(holonomy_dbrane(gd.G, br, static_cast<unsigned>(c + 5)), direct), cfg.eps, at(c) + " seed");
    });
  }
  return book.finish(cfg.cases);
}

Suite jandl_laws(const LawConfig& cfg) {
  Gen g(cfg.seed + 7000);
  Book book;
  const double eps = cfg.eps;
  for (int c = 0; c < cfg.cases; ++c) {
    auto base = c % 2 == 0 ? surfaces::rp2() : surfaces::klein(3, 4);
    auto oc = std::make_shared<const OrientationCover>(orientation_cover(base));
    const auto& cov = oc->cover;
    auto brho = c % 4 == 0 ? std::vector<double>(base->num_triangles(), 0.0) : random_rho(*base, g.rng);
    auto rho = symmetric_rho(*oc, brho);
    auto I = trivial_gerbe(cov, rho);
    std::vector<cplx> gauge(cov->num_vertices());
    for (auto& x : gauge) x = random_phase(g.rng);
    const int sign = g.uniform_int(0, 1) ? 1 : -1;
    auto J = gauge_jandl(I, oc->sigma, sign, gauge);
    auto g1 = g.gerbe(cov, rho);
    auto g2 = g.gerbe(cov, rho);
    auto B = compose_1(g1.Binv, g2.B);  // G2 -> G1
    JandlStructure J1, J21;
    book.run("jandl.valid", c, [&] { check_report(book["jandl.valid"], jandl_validate(I, J, eps), eps, at(c)); });
    book.run("jandl.transport_valid", c, [&] {
      auto& l = book["jandl.transport_valid"];
      J1 = jandl_transport(g1.B, J);
      check_report(l, jandl_validate(g1.G, J1, eps), eps, at(c) + " J_B");
      J21 = jandl_transport(B, J1);
      check_report(l, jandl_validate(g2.G, J21, eps), eps, at(c) + " J_B'J_B");
    });
    book.run("jandl.transport_identity", c, [&] {
      book["jandl.transport_identity"].require(jandl_equivalent(jandl_transport(identity_1(I), J), J, eps), at(c));
    });
    book.run("jandl.transport_composition", c, [&] {
      auto& l = book["jandl.transport_composition"];
      if (!J21.A) J21 = jandl_transport(B, jandl_transport(g1.B, J));
      auto Jc = jandl_transport(compose_1(g1.B, B), J);
      l.observe(exact(morphisms_equal(*Jc.A, *J21.A)), 0.0, at(c) + " A");
      l.observe(canonical_distance(make_two(Jc.phi), make_two(J21.phi)), eps, at(c) + " phi");
    });
    book.run("jandl.transport_two_morphism", c, [&] {
      auto Bp = gauge_refine(g1.B, g.rng);
      book["jandl.transport_two_morphism"].require(
          jandl_equivalent(jandl_transport(g1.B, J), jandl_transport(Bp.A, J), eps), at(c));
    });
    book.run("unoriented.independence", c, [&] {
      auto& l = book["unoriented.independence"];
      auto F0 = fundamental_domain(oc, 0);
      cplx h0 = holonomy_unoriented(I, J, F0, 0);
      l.require(std::abs(std::abs(h0) - 1.0) <= eps, at(c) + ": value off the unit circle");
      for (unsigned fs : {1u, 2u, 3u}) {
        auto F = fundamental_domain(oc, fs + static_cast<unsigned>(c) * 7);
        l.observe(phase_gap(holonomy_unoriented(I, J, F, 0), h0), eps, at(c) + " domain");
        l.observe(phase_gap(holonomy_unoriented(I, J, F, fs + 11), h0), eps, at(c) + " trivialization");
      }
      if (!J1.A) J1 = jandl_transport(g1.B, J);
      l.observe(phase_gap(holonomy_unoriented(g1.G, J1, fundamental_domain(oc, 5), 4), h0), eps, at(c) + " gauge");
    });
    book.run("jandl.equivariant_curvature", c, [&] {
      auto e = jandl_to_equivariant(J);
      auto krho = trivial_rho(*pullback_gerbe(I, oc->sigma));
      bool ok = validate_equivariant(e, eps).ok();
      for (int t = 0; t < cov->num_triangles() && ok; ++t) ok = e.R.curv(t, 0) == -rho[t] - krho[t];
      book["jandl.equivariant_curvature"].observe(exact(ok), 0.0, at(c));
    });
  }
  return book.finish(cfg.cases);
}

const std::vector<SuiteEntry>& all_suites() {
  static const std::vector<SuiteEntry> s{
      {"twocat", twocat_laws},   {"lemmas", lemma_laws},     {"inverse", inverse_laws},
      {"descent", descent_laws}, {"bun", bun_laws},          {"duality", duality_laws},
      {"holonomy", holonomy_laws}, {"jandl", jandl_laws},
  };
  return s;
}

}  // namespace gerbes
