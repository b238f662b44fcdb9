#include "gerbes/twomorphism.hpp"

#include <limits>
#include <map>

namespace gerbes {

namespace {

std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

void require_same(const MorphPtr& a, const MorphPtr& b, const char* what) {
  if (!same_morphism(a, b, tolerance())) throw MorphismMismatch(what);
}

std::size_t factors_count(const OneMorphism& m) { return m.atomic() ? 1 : m.chain.size(); }

// All pairs of Z_S x_P Z_T.
CoverPtr pair_cover(const OneMorphism& S, const OneMorphism& T) {
  return fiber_product({S.Z(), T.Z()}, [&](const std::vector<int>& t) { return S.zeta.map[t[0]] == T.zeta.map[t[1]]; });
}

// Value of a rep on a leg pair at a vertex, read from its least index.
class PairTable {
 public:
  explicit PairTable(const TwoMorphismRep& r) : r_(r) {
    for (int w = 0; w < r.size(); ++w) legs_[{r.w1[w], r.w2[w]}].push_back(w);
  }
  const Mat* find(int v, int a, int c) const {
    auto it = legs_.find({a, c});
    if (it == legs_.end()) return nullptr;
    for (int w : it->second)
      if (r_.W->valid(w, v)) return &r_.b(v, w);
    return nullptr;
  }
  const Mat& at(int v, int a, int c) const { return *find(v, a, c); }
  // a itself when (a, c) is covered at v, else the least such source index.
  int choose(int v, int a, int c) const {
    if (find(v, a, c)) return a;
    for (int e : r_.src->Z()->valid_at(v))
      if (r_.src->zeta.map[e] == r_.tgt->zeta.map[c] && find(v, e, c)) return e;
    return -1;
  }

 private:
  const TwoMorphismRep& r_;
  std::map<std::pair<int, int>, std::vector<int>> legs_;
};

}  // namespace

TwoMorphismRep empty_rep(MorphPtr src, MorphPtr tgt, CoverPtr W, std::vector<int> w1, std::vector<int> w2) {
  TwoMorphismRep r;
  r.beta = Field<Mat>({W->base()->num_vertices(), W->size()});
  r.src = std::move(src);
  r.tgt = std::move(tgt);
  r.W = std::move(W);
  r.w1 = std::move(w1);
  r.w2 = std::move(w2);
  return r;
}

Report validate_2(const TwoMorphismRep& r, double eps) {
  Report rep;
  const auto& A1 = *r.src;
  const auto& A2 = *r.tgt;
  if (!same_gerbe(A1.src, A2.src) || !same_gerbe(A1.tgt, A2.tgt)) {
    rep.fail("two.endpoints", "1-morphisms between different gerbes");
    return rep;
  }
  const auto& s = *r.W->base();
  const int nw = r.size();
  if (static_cast<int>(r.w1.size()) != nw || static_cast<int>(r.w2.size()) != nw) {
    rep.fail("two.legs", "leg arrays have wrong size");
    return rep;
  }
  for (int w = 0; w < nw; ++w) {
    ++rep.checks;
    std::string where = "index " + std::to_string(w);
    if (r.w1[w] < 0 || r.w1[w] >= A1.size() || r.w2[w] < 0 || r.w2[w] >= A2.size()) {
      rep.fail("two.legs", where);
      continue;
    }
    if (A1.zeta.map[r.w1[w]] != A2.zeta.map[r.w2[w]]) rep.fail("two.legs", where + " legs over different P indices");
    if (!r.W->support(w).subset_of(A1.Z()->support(r.w1[w]) & A2.Z()->support(r.w2[w])))
      rep.fail("two.support", where);
  }
  if (!rep.ok()) return rep;
  for (int x = 0; x < s.num_simplices(); ++x) {
    for (int k1 : A1.Z()->valid_at(x))
      for (int k2 : A2.Z()->valid_at(x)) {
        if (A1.zeta.map[k1] != A2.zeta.map[k2]) continue;
        bool hit = false;
        for (int w = 0; w < nw && !hit; ++w) hit = r.w1[w] == k1 && r.w2[w] == k2 && r.W->valid(w, x);
        ++rep.checks;
        if (!hit)
          rep.fail("two.surjective", "simplex " + std::to_string(x) + " pair (" + std::to_string(k1) + "," +
                                        std::to_string(k2) + ")");
      }
  }
  if (!rep.ok()) return rep;
  for (int w = 0; w < nw; ++w)
    for (int v = 0; v < s.num_vertices(); ++v) {
      if (!r.W->valid(w, v)) continue;
      const Mat* b = r.beta.find({v, w});
      std::string where = "vertex " + std::to_string(v) + " index " + std::to_string(w);
      if (!b || b->rows() != A2.rank || b->cols() != A1.rank) {
        rep.fail("two.shape", where);
        continue;
      }
      rep.check("two.isometry", max_abs_diff(b->adjoint() * *b, Mat::Identity(A1.rank, A1.rank)), eps, where);
    }
  if (!rep.ok()) return rep;
  for (int w = 0; w < nw; ++w)
    for (int e = 0; e < s.num_edges(); ++e) {
      if (!r.W->valid(w, s.edge_simplex(e))) continue;
      int v0 = s.edge(e).a, v1 = s.edge(e).b;
      Mat lhs = r.b(v1, w) * A1.a(e, r.w1[w]);
      Mat rhs = A2.a(e, r.w2[w]) * r.b(v0, w);
      rep.check("two.connection", max_abs_diff(lhs, rhs), eps,
                "edge " + std::to_string(e) + " index " + std::to_string(w));
    }
  for (int v = 0; v < s.num_vertices(); ++v) {
    auto idx = r.W->valid_at(v);
    for (int w : idx)
      for (int w2 : idx) {
        Mat lhs = A2.al(v, r.w2[w], r.w2[w2]) * r.b(v, w2);
        Mat rhs = r.b(v, w) * A1.al(v, r.w1[w], r.w1[w2]);
        rep.check("two.compatibility", max_abs_diff(lhs, rhs), eps,
                  "vertex " + std::to_string(v) + " (" + std::to_string(w) + "," + std::to_string(w2) + ")");
      }
  }
  return rep;
}

TwoMorphismRep identity_2(const MorphPtr& a) {
  Refinement z = common_refinement(a->zeta, a->zeta);
  std::vector<int> w1, w2;
  for (int w = 0; w < z.size(); ++w) {
    w1.push_back(z.cover->comp(w, 0));
    w2.push_back(z.cover->comp(w, 1));
  }
  TwoMorphismRep r = empty_rep(a, a, z.cover, w1, w2);
  auto d = d_of(*a);
  const auto& s = *a->Z()->base();
  for (int w = 0; w < r.size(); ++w)
    for (int v = 0; v < s.num_vertices(); ++v)
      if (r.W->valid(w, v)) r.beta.set({v, w}, d.at({v, r.w1[w], r.w2[w]}));
  return r;
}

TwoMorphismRep compact(const TwoMorphismRep& r) {
  const auto& s = *r.W->base();
  std::map<std::pair<int, int>, int> slot;
  std::vector<std::vector<int>> members;
  for (int w = 0; w < r.size(); ++w) {
    auto [it, fresh] = slot.emplace(std::make_pair(r.w1[w], r.w2[w]), static_cast<int>(members.size()));
    if (fresh) members.emplace_back();
    members[it->second].push_back(w);
  }
  if (members.size() == static_cast<std::size_t>(r.size())) return r;
  const double eps = tolerance();
  std::vector<std::vector<int>> labels;
  std::vector<Bits> sup;
  std::vector<int> w1, w2;
  for (const auto& g : members) {
    Bits u(s.num_simplices());
    for (int w : g) u = u | r.W->support(w);
    labels.push_back({r.w1[g[0]], r.w2[g[0]]});
    sup.push_back(u);
    w1.push_back(r.w1[g[0]]);
    w2.push_back(r.w2[g[0]]);
  }
  TwoMorphismRep q = empty_rep(r.src, r.tgt, Cover::labelled(r.W->base(), labels, sup), w1, w2);
  for (std::size_t c = 0; c < members.size(); ++c)
    for (int w : members[c])
      for (int v = 0; v < s.num_vertices(); ++v) {
        if (!r.W->valid(w, v)) continue;
        const Mat* old = q.beta.find({v, static_cast<int>(c)});
        if (!old) {
          q.beta.set({v, static_cast<int>(c)}, r.b(v, w));
        } else if (old->rows() != r.b(v, w).rows() || old->cols() != r.b(v, w).cols() ||
                   max_abs_diff(*old, r.b(v, w)) > eps) {
          return r;  // not a valid rep; keep the data as is
        }
      }
  return q;
}

TwoMorphismRep vertical(const TwoMorphismRep& b2, const TwoMorphismRep& b1) {
  require_same(b1.tgt, b2.src, "vertical composition of non-matching 2-morphisms");
  CoverPtr W = fiber_product({b1.W, b2.W}, [&](const std::vector<int>& t) { return b1.w2[t[0]] == b2.w1[t[1]]; });
  std::vector<int> w1, w2;
  for (int w = 0; w < W->size(); ++w) {
    w1.push_back(b1.w1[W->comp(w, 0)]);
    w2.push_back(b2.w2[W->comp(w, 1)]);
  }
  TwoMorphismRep r = empty_rep(b1.src, b2.tgt, W, w1, w2);
  const auto& s = *W->base();
  for (int w = 0; w < W->size(); ++w)
    for (int v = 0; v < s.num_vertices(); ++v)
      if (W->valid(w, v)) r.beta.set({v, w}, b2.b(v, W->comp(w, 1)) * b1.b(v, W->comp(w, 0)));
  return compact(r);
}

TwoMorphismRep horizontal(const TwoMorphismRep& b2, const TwoMorphismRep& b1) {
  if (!same_gerbe(b1.src->tgt, b2.src->src)) throw MorphismMismatch("horizontal composition of non-composable squares");
  MorphPtr S = compose_1(b2.src, b1.src);
  MorphPtr T = compose_1(b2.tgt, b1.tgt);
  const auto& A1 = *b1.src;
  const auto& A2 = *b2.src;
  // Splits composite indices into their (A1, A2) parts.
  auto split = [](const OneMorphism& C, const OneMorphism& first, const OneMorphism& second) {
    const std::size_t n1 = factors_count(first);
    std::vector<std::pair<int, int>> out(C.size());
    for (int z = 0; z < C.size(); ++z) {
      auto t = C.factor_tuple(z);
      out[z] = {first.index_of_tuple({t.begin(), t.begin() + static_cast<std::ptrdiff_t>(n1)}),
                second.index_of_tuple({t.begin() + static_cast<std::ptrdiff_t>(n1), t.end()})};
    }
    return out;
  };
  auto ps = split(*S, A1, A2);
  auto pt = split(*T, *b1.tgt, *b2.tgt);
  PairTable t1(b1), t2(b2);
  auto tm_src = t_mu(*S->src);
  auto tm_tgt = t_mu(*S->tgt);
  CoverPtr W = pair_cover(*S, *T);
  std::vector<int> w1(W->size()), w2(W->size());
  for (int w = 0; w < W->size(); ++w) {
    w1[w] = W->comp(w, 0);
    w2[w] = W->comp(w, 1);
  }
  TwoMorphismRep r = empty_rep(S, T, W, w1, w2);
  const auto& s = *W->base();
  for (int v = 0; v < s.num_vertices(); ++v)
    for (int w : W->valid_at(v)) {
      auto [a1, a2] = ps[w1[w]];
      auto [c1, c2] = pt[w2[w]];
      // Source indices a1', a2' paired with c1, c2; the own index wins, else the least one.
      int e1 = t1.choose(v, a1, c1), e2 = t2.choose(v, a2, c2);
      if (e1 < 0 || e2 < 0) throw MorphismMismatch("horizontal composition of non-surjective 2-morphisms");
      const Mat& x1 = t1.at(v, e1, c1);
      const Mat& x2 = t2.at(v, e2, c2);
      if (e1 == a1 && e2 == a2) {
        r.beta.set({v, w}, kron(x1, x2));
        continue;
      }
      // d_S from (a1, a2) to (e1, e2), taken factor by factor.
      cplx c = tm_src.at({v, S->s(w1[w])}) * std::conj(tm_tgt.at({v, S->t(w1[w])}));
      Mat y1 = x1 * A1.al(v, a1, e1).adjoint();
      Mat y2 = x2 * A2.al(v, a2, e2).adjoint();
      r.beta.set({v, w}, Mat(c * kron(y1, y2)));
    }
  return r;
}

TwoMorphismRep inverse_2(const TwoMorphismRep& r) {
  if (r.src->rank != r.tgt->rank) throw NotInvertible("2-morphism between bundles of different rank");
  TwoMorphismRep q = empty_rep(r.tgt, r.src, r.W, r.w2, r.w1);
  for (std::size_t i = 0; i < r.beta.flat_size(); ++i)
    if (r.beta.raw(i)) q.beta.raw(i) = Mat(r.beta.raw(i)->adjoint());
  return q;
}

TwoMorphismRep left_unitor(const MorphPtr& a) {
  const auto& G = *a->src;
  MorphPtr S = compose_1(a, identity_1(a->src));
  auto tm = t_mu(*a->tgt);
  auto zidx = [&](int k, int k2) {
    int y = G.pair(a->s(k2), a->s(k));
    if (y < 0) return -1;
    return S->index_of_tuple(concat({y}, a->factor_tuple(k)));
  };
  CoverPtr W = fiber_product({a->Z(), a->Z()}, [&](const std::vector<int>& t) {
    return a->t(t[0]) == a->t(t[1]) && zidx(t[0], t[1]) >= 0;
  });
  std::vector<int> w1, w2;
  for (int w = 0; w < W->size(); ++w) {
    w1.push_back(zidx(W->comp(w, 0), W->comp(w, 1)));
    w2.push_back(W->comp(w, 1));
  }
  TwoMorphismRep r = empty_rep(S, a, W, w1, w2);
  const auto& s = *W->base();
  for (int w = 0; w < W->size(); ++w) {
    int k = W->comp(w, 0), k2 = W->comp(w, 1);
    for (int v = 0; v < s.num_vertices(); ++v)
      if (W->valid(w, v)) r.beta.set({v, w}, Mat(tm.at({v, a->t(k)}) * a->al(v, k2, k)));
  }
  return r;
}

TwoMorphismRep right_unitor(const MorphPtr& a) {
  const auto& H = *a->tgt;
  MorphPtr S = compose_1(identity_1(a->tgt), a);
  auto tm = t_mu(*a->src);
  auto zidx = [&](int k, int k2) {
    int y = H.pair(a->t(k), a->t(k2));
    if (y < 0) return -1;
    return S->index_of_tuple(concat(a->factor_tuple(k), {y}));
  };
  CoverPtr W = fiber_product({a->Z(), a->Z()}, [&](const std::vector<int>& t) {
    return a->s(t[0]) == a->s(t[1]) && zidx(t[0], t[1]) >= 0;
  });
  std::vector<int> w1, w2;
  for (int w = 0; w < W->size(); ++w) {
    w1.push_back(zidx(W->comp(w, 0), W->comp(w, 1)));
    w2.push_back(W->comp(w, 1));
  }
  TwoMorphismRep r = empty_rep(S, a, W, w1, w2);
  const auto& s = *W->base();
  for (int w = 0; w < W->size(); ++w) {
    int k = W->comp(w, 0), k2 = W->comp(w, 1);
    for (int v = 0; v < s.num_vertices(); ++v)
      if (W->valid(w, v)) r.beta.set({v, w}, Mat(tm.at({v, a->s(k)}) * a->al(v, k, k2).adjoint()));
  }
  return r;
}

Inverse invert(const MorphPtr& a) {
  Inverse out;
  out.inv = invert_1(a);
  const auto& s = *a->Z()->base();
  const int na = static_cast<int>(a->factor_tuple(0).size());
  auto t1 = t_mu(*a->src);
  auto t2 = t_mu(*a->tgt);
  auto split = [&](const MorphPtr& c, int z, bool inv_last) {
    auto tu = c->factor_tuple(z);
    std::vector<int> pre, post;
    if (inv_last) {
      pre.assign(tu.begin(), tu.begin() + na);
      return std::make_pair(a->index_of_tuple(pre), tu.back());
    }
    post.assign(tu.begin() + 1, tu.end());
    return std::make_pair(tu.front(), a->index_of_tuple(post));
  };
  {
    MorphPtr S = compose_1(out.inv, a);
    MorphPtr id = identity_1(a->src);
    std::vector<int> w1, w2;
    for (int z = 0; z < S->size(); ++z) {
      auto [k, kb] = split(S, z, true);
      w1.push_back(z);
      w2.push_back(a->src->pair(a->s(k), a->s(kb)));
    }
    out.i_l = empty_rep(S, id, S->Z(), w1, w2);
    for (int z = 0; z < S->size(); ++z) {
      auto [k, kb] = split(S, z, true);
      for (int v = 0; v < s.num_vertices(); ++v)
        if (S->Z()->valid(z, v))
          out.i_l.beta.set({v, z}, scalar_mat(std::conj(a->al(v, k, kb)(0, 0)) * unit_inv(t2.at({v, a->t(k)}))));
    }
  }
  {
    MorphPtr S = compose_1(a, out.inv);
    MorphPtr id = identity_1(a->tgt);
    std::vector<int> w1, w2;
    for (int z = 0; z < S->size(); ++z) {
      auto [kb, k] = split(S, z, false);
      w1.push_back(a->tgt->pair(a->t(kb), a->t(k)));
      w2.push_back(z);
    }
    out.i_r = empty_rep(id, S, S->Z(), w1, w2);
    for (int z = 0; z < S->size(); ++z) {
      auto [kb, k] = split(S, z, false);
      for (int v = 0; v < s.num_vertices(); ++v)
        if (S->Z()->valid(z, v))
          out.i_r.beta.set({v, z}, scalar_mat(t1.at({v, a->s(k)}) * std::conj(a->al(v, kb, k)(0, 0))));
    }
  }
  return out;
}

TwoMorphismRep mate(const TwoMorphismRep& beta) {
  if (beta.src->rank != 1 || beta.tgt->rank != 1) throw NotInvertible("mate needs rank-1 morphisms");
  Inverse ia = invert(beta.src);
  Inverse iap = invert(beta.tgt);
  Inverse iainv = invert(ia.inv);
  Inverse iapinv = invert(iap.inv);
  // A'^-1 => id o A'^-1 => A^-1 o A o A'^-1 => A^-1 o A' o A'^-1 => A^-1 o id => A^-1
  TwoMorphismRep step1 = inverse_2(right_unitor(iap.inv));
  TwoMorphismRep step2 = horizontal(iainv.i_r, identity_2(iap.inv));
  TwoMorphismRep step3 = horizontal(identity_2(ia.inv), horizontal(beta, identity_2(iap.inv)));
  TwoMorphismRep step4 = horizontal(identity_2(ia.inv), iapinv.i_l);
  TwoMorphismRep step5 = left_unitor(ia.inv);
  return vertical(step5, vertical(step4, vertical(step3, vertical(step2, step1))));
}

TwoMorphismRep mate_alternative(const TwoMorphismRep& beta) {
  if (beta.src->rank != 1 || beta.tgt->rank != 1) throw NotInvertible("mate needs rank-1 morphisms");
  Inverse ia = invert(beta.src);
  Inverse iap = invert(beta.tgt);
  // A'^-1 => A'^-1 o id => A'^-1 o A o A^-1 => A'^-1 o A' o A^-1 => id o A^-1 => A^-1
  TwoMorphismRep step1 = inverse_2(left_unitor(iap.inv));
  TwoMorphismRep step2 = horizontal(identity_2(iap.inv), ia.i_r);
  TwoMorphismRep step3 = horizontal(identity_2(iap.inv), horizontal(beta, identity_2(ia.inv)));
  TwoMorphismRep step4 = horizontal(iap.i_l, identity_2(ia.inv));
  TwoMorphismRep step5 = right_unitor(ia.inv);
  return vertical(step5, vertical(step4, vertical(step3, vertical(step2, step1))));
}

namespace {

// Position of a row-major multi-index after reversing the factor order.
std::vector<int> reverse_perm(const std::vector<int>& ranks) {
  int total = 1;
  for (int r : ranks) total *= r;
  std::vector<int> perm(total);
  const std::size_t m = ranks.size();
  std::vector<int> digit(m);
  for (int i = 0; i < total; ++i) {
    int x = i;
    for (std::size_t j = m; j-- > 0;) {
      digit[j] = x % ranks[j];
      x /= ranks[j];
    }
    int y = 0;
    for (std::size_t j = m; j-- > 0;) y = y * ranks[j] + digit[j];
    perm[i] = y;
  }
  return perm;
}

std::vector<int> factor_ranks(const MorphPtr& m) {
  std::vector<int> r;
  for (const auto& f : factors(m)) r.push_back(f->rank);
  return r;
}

std::vector<int> reversed(std::vector<int> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

}  // namespace

TwoMorphismRep dual_2(const TwoMorphismRep& r) {
  MorphPtr src = dual_1(r.src);
  MorphPtr tgt = dual_1(r.tgt);
  std::vector<int> w1, w2;
  for (int w = 0; w < r.size(); ++w) {
    w1.push_back(src->index_of_tuple(reversed(r.src->factor_tuple(r.w1[w]))));
    w2.push_back(tgt->index_of_tuple(reversed(r.tgt->factor_tuple(r.w2[w]))));
  }
  TwoMorphismRep q = empty_rep(src, tgt, r.W, w1, w2);
  auto ps = reverse_perm(factor_ranks(r.src));
  auto pt = reverse_perm(factor_ranks(r.tgt));
  for (std::size_t i = 0; i < r.beta.flat_size(); ++i) {
    if (!r.beta.raw(i)) continue;
    const Mat& b = *r.beta.raw(i);
    Mat m(b.rows(), b.cols());
    for (Eigen::Index a = 0; a < b.rows(); ++a)
      for (Eigen::Index c = 0; c < b.cols(); ++c) m(pt[a], ps[c]) = b(a, c);
    q.beta.raw(i) = std::move(m);
  }
  return q;
}

TwoMorphismRep pullback_2(const TwoMorphismRep& r, const SimplicialMap& f) {
  MorphPtr src = pullback_1(r.src, f);
  MorphPtr tgt = pullback_1(r.tgt, f);
  auto new_maps = [&](const MorphPtr& m) {
    std::vector<std::vector<int>> maps;
    for (const auto& fac : factors(m)) {
      auto pc = pullback_cover(fac->Z(), f);
      std::vector<int> inv(fac->size(), -1);
      for (std::size_t i = 0; i < pc.old_index.size(); ++i) inv[pc.old_index[i]] = static_cast<int>(i);
      maps.push_back(std::move(inv));
    }
    return maps;
  };
  auto ms = new_maps(r.src);
  auto mt = new_maps(r.tgt);
  auto translate = [](const MorphPtr& oldm, const MorphPtr& newm, const std::vector<std::vector<int>>& maps, int k) {
    auto tu = oldm->factor_tuple(k);
    for (std::size_t j = 0; j < tu.size(); ++j) tu[j] = maps[j][tu[j]];
    return newm->index_of_tuple(tu);
  };
  PulledCover pw = pullback_cover(r.W, f);
  std::vector<int> w1, w2;
  for (int w = 0; w < pw.cover->size(); ++w) {
    int ow = pw.old_index[w];
    w1.push_back(translate(r.src, src, ms, r.w1[ow]));
    w2.push_back(translate(r.tgt, tgt, mt, r.w2[ow]));
  }
  TwoMorphismRep q = empty_rep(src, tgt, pw.cover, w1, w2);
  const auto& s = *f.source();
  for (int w = 0; w < pw.cover->size(); ++w)
    for (int v = 0; v < s.num_vertices(); ++v)
      if (pw.cover->valid(w, v)) q.beta.set({v, w}, r.b(f.vertex_map()[v], pw.old_index[w]));
  return q;
}

TwoMorphismRep tensor_2(const TwoMorphismRep& b1, const TwoMorphismRep& b2) {
  MorphPtr src = tensor_1(b1.src, b2.src);
  MorphPtr tgt = tensor_1(b1.tgt, b2.tgt);
  CoverPtr W = fiber_product({b1.W, b2.W});
  std::vector<int> w1, w2;
  for (int w = 0; w < W->size(); ++w) {
    int x = W->comp(w, 0), y = W->comp(w, 1);
    w1.push_back(src->Z()->index_of2(b1.w1[x], b2.w1[y]));
    w2.push_back(tgt->Z()->index_of2(b1.w2[x], b2.w2[y]));
  }
  TwoMorphismRep r = empty_rep(src, tgt, W, w1, w2);
  const auto& s = *W->base();
  for (int w = 0; w < W->size(); ++w)
    for (int v = 0; v < s.num_vertices(); ++v)
      if (W->valid(w, v)) r.beta.set({v, w}, kron(b1.b(v, W->comp(w, 0)), b2.b(v, W->comp(w, 1))));
  return r;
}

TwoMorphismRep restrict_rep(const TwoMorphismRep& r, const CoverPtr& X, const std::vector<int>& to_w) {
  std::vector<int> w1, w2;
  for (int x = 0; x < X->size(); ++x) {
    if (!X->support(x).subset_of(r.W->support(to_w[x]))) throw SiteMismatch("restriction exceeds the support");
    w1.push_back(r.w1[to_w[x]]);
    w2.push_back(r.w2[to_w[x]]);
  }
  TwoMorphismRep q = empty_rep(r.src, r.tgt, X, w1, w2);
  const auto& s = *X->base();
  for (int x = 0; x < X->size(); ++x)
    for (int v = 0; v < s.num_vertices(); ++v)
      if (X->valid(x, v)) q.beta.set({v, x}, r.b(v, to_w[x]));
  return q;
}

double distance_2(const TwoMorphismRep& r1, const TwoMorphismRep& r2) {
  const double inf = std::numeric_limits<double>::infinity();
  double eps = tolerance();
  if (!same_morphism(r1.src, r2.src, eps) || !same_morphism(r1.tgt, r2.tgt, eps)) return inf;
  const auto& s = *r1.W->base();
  double d = 0.0;
  for (int a = 0; a < r1.size(); ++a)
    for (int b = 0; b < r2.size(); ++b) {
      if (r1.w1[a] != r2.w1[b] || r1.w2[a] != r2.w2[b]) continue;
      for (int v = 0; v < s.num_vertices(); ++v)
        if (r1.W->valid(a, v) && r2.W->valid(b, v)) d = std::max(d, max_abs_diff(r1.b(v, a), r2.b(v, b)));
    }
  return d;
}

bool equivalent_2(const TwoMorphismRep& r1, const TwoMorphismRep& r2, double eps) {
  return distance_2(r1, r2) <= eps;
}

bool reps_equal(const TwoMorphismRep& a, const TwoMorphismRep& b) {
  return morphisms_equal(*a.src, *b.src) && morphisms_equal(*a.tgt, *b.tgt) && same_cover(a.W, b.W) &&
         a.w1 == b.w1 && a.w2 == b.w2 &&
         fields_equal(a.beta, b.beta, [](const Mat& x, const Mat& y) { return exactly_equal(x, y); });
}

}  // namespace gerbes
