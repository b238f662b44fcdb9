#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "gerbes/bundle.hpp"
#include "gerbes/gerbe.hpp"
#include "gerbes/site.hpp"

namespace gerbes {

struct OneMorphism;
using MorphPtr = std::shared_ptr<const OneMorphism>;

// (zeta, A, alpha) between two gerbes. zeta maps K into P = Y_src x Y_tgt;
// alpha(v, k, k'): A_{k'} -> A_k absorbs the line fibres L1_{sk,sk'} and L2_{tk,tk'}.
// Composites remember their atomic factors so that composition is strictly
// associative on the data.
struct OneMorphism {
  GerbePtr src, tgt;
  Refinement zeta;
  int rank = 0;
  DiscreteBundle A;
  Field<Mat> alpha;  // {vertices, K, K}
  std::vector<MorphPtr> chain;  // atomic factors, first applied first; empty when atomic

  int size() const { return zeta.size(); }
  const CoverPtr& Z() const { return zeta.cover; }
  const CoverPtr& P() const { return zeta.target; }
  int s(int k) const { return zeta.leg(k, 0); }
  int t(int k) const { return zeta.leg(k, 1); }
  const Mat& a(int e, int k) const { return A.U(e, k); }
  const Mat& al(int v, int k, int k2) const { return alpha.at({v, k, k2}); }
  bool atomic() const { return chain.empty(); }
  // Factor indices of index k (a single entry for atomic morphisms).
  std::vector<int> factor_tuple(int k) const;
  int index_of_tuple(const std::vector<int>& tuple) const;
};

// Allocates an atomic morphism over the given refinement cover; P is built from the gerbes.
OneMorphism empty_morphism(GerbePtr src, GerbePtr tgt, CoverPtr Z, std::vector<std::pair<int, int>> legs,
                           int rank);
// tc[t,k] = rank * (C_tgt(t, tk) - C_src(t, sk)).
void set_morphism_curvature(OneMorphism& m);

std::vector<MorphPtr> factors(const MorphPtr& m);
Report validate_1(const OneMorphism& m, double eps);

// Data equality up to eps (chain structure ignored).
bool same_morphism(const OneMorphism& a, const OneMorphism& b, double eps);
inline bool same_morphism(const MorphPtr& a, const MorphPtr& b, double eps) {
  return a == b || same_morphism(*a, *b, eps);
}
// Exact data equality.
bool morphisms_equal(const OneMorphism& a, const OneMorphism& b);

// d(k,k'): A_k -> A_k' for pairs over the same P index.
Field<Mat> d_of(const OneMorphism& m);
Mat d_at(const OneMorphism& m, const Field<Mat>& d, int v, int k, int k2);

MorphPtr identity_1(const GerbePtr& g);
// a2 after a1.
MorphPtr compose_1(const MorphPtr& a2, const MorphPtr& a1);
MorphPtr compose_chain(const std::vector<MorphPtr>& ms);  // ms[0] applied first

// Rank 1 only; the inverse is atomic with swapped legs and dual bundle.
MorphPtr invert_1(const MorphPtr& m);
MorphPtr dual_1(const MorphPtr& m);
MorphPtr pullback_1(const MorphPtr& m, const SimplicialMap& f);
MorphPtr tensor_1(const MorphPtr& a1, const MorphPtr& a2);

// Same bundle data as `m` presented as an atomic morphism.
MorphPtr atomize(const MorphPtr& m);

// Pulls a gerbe back and records index maps between the covers.
struct PulledGerbe {
  GerbePtr g;
  std::vector<int> old_index;  // new -> old
  std::vector<int> new_index;  // old -> new, -1 if dropped
};
PulledGerbe pullback_gerbe_indexed(const GerbePtr& g, const SimplicialMap& f);

}  // namespace gerbes
