#pragma once

#include <vector>

#include "gerbes/config.hpp"
#include "gerbes/site.hpp"

namespace gerbes {

// Hermitian vector bundle with connection over the indices of a cover:
// transport[e, k] along the canonical orientation of edge e, and
// tc[t, k] = integral of tr F over triangle t (relative to its stored order).
struct DiscreteBundle {
  CoverPtr site;
  int rank = 0;
  Field<Mat> transport;  // {edges, indices}
  Field<double> tc;      // {triangles, indices}

  static DiscreteBundle empty(CoverPtr site, int rank);
  // All transports identity, tc zero.
  static DiscreteBundle trivial(CoverPtr site, int rank = 1);

  const Mat& U(int e, int k) const { return transport.at({e, k}); }
  double curv(int t, int k) const { return tc.at({t, k}); }
  // Transport from v[j] to v[j+1] of triangle t, honouring incidence signs.
  Mat step(int e, int k, int dir) const;
};

// Map between fibres, per (vertex, index).
struct BundleMorphism {
  Field<Mat> m;  // {vertices, indices}, n_target x n_source
};

// Loop transport around triangle t starting at its first vertex.
Mat triangle_loop(const DiscreteBundle& b, int t, int k);

Report validate_bundle(const DiscreteBundle& b, double eps);
Report validate_bundle_morphism(const DiscreteBundle& src, const DiscreteBundle& tgt,
                                const BundleMorphism& f, double eps);

BundleMorphism identity_morphism(const DiscreteBundle& b);
BundleMorphism compose(const BundleMorphism& g, const BundleMorphism& f);  // g after f

DiscreteBundle tensor(const DiscreteBundle& b1, const DiscreteBundle& b2);
DiscreteBundle dual(const DiscreteBundle& b);
// Pulls b back along f; `pulled` must come from pullback_cover(b.site, f).
DiscreteBundle pullback(const DiscreteBundle& b, const SimplicialMap& f, const PulledCover& pulled);
DiscreteBundle pullback(const DiscreteBundle& b, const SimplicialMap& f);

// Exact data equality.
bool bundles_equal(const DiscreteBundle& a, const DiscreteBundle& b);
double bundle_distance(const DiscreteBundle& a, const DiscreteBundle& b);

// Loop along `cycle` using index idx[i] on edge i. splice[i] (empty = identity,
// requiring idx[i-1] == idx[i]) maps the fibre of idx[i-1] to that of idx[i] at
// cycle.vertices[i]; splice[0] closes the loop.
struct IndexedCycle {
  OrientedCycle cycle;
  std::vector<int> idx;
  std::vector<Mat> splice;
};
Mat cycle_transport(const DiscreteBundle& b, const IndexedCycle& c);
cplx cycle_holonomy(const DiscreteBundle& b, const IndexedCycle& c);  // rank 1
cplx trace_holonomy(const DiscreteBundle& b, const IndexedCycle& c);
// Cycle with a single index valid on every edge.
IndexedCycle single_index_cycle(const OrientedCycle& c, int idx);

}  // namespace gerbes
