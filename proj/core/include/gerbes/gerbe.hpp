#pragma once

#include <memory>
#include <vector>

#include "gerbes/bundle.hpp"
#include "gerbes/site.hpp"

namespace gerbes {

// (Y, L, C, mu) with every line fibre trivialized, so mu is a unit scalar.
struct BundleGerbe {
  CoverPtr Y;
  CoverPtr Y2;       // fiber_product({Y, Y})
  Field<double> C;   // {triangles, N}
  DiscreteBundle L;  // rank 1 over Y2
  Field<cplx> mu;    // {vertices, N, N, N}

  int size() const { return Y->size(); }
  const SurfacePtr& base() const { return Y->base(); }
  int pair(int i, int j) const { return Y2->index_of2(i, j); }
  cplx u(int e, int i, int j) const { return L.U(e, pair(i, j))(0, 0); }
  double c(int t, int i) const { return C.at({t, i}); }
  cplx m(int v, int i, int j, int k) const { return mu.at({v, i, j, k}); }

  // Allocates empty fields for a cover.
  static BundleGerbe empty(CoverPtr Y);
};
using GerbePtr = std::shared_ptr<const BundleGerbe>;

// Fills tc of L with C_j - C_i on every valid pair.
void set_line_curvature_from_c(BundleGerbe& g);

Report validate_gerbe(const BundleGerbe& g, double eps);
GerbePtr trivial_gerbe(const SurfacePtr& base, const std::vector<double>& rho);
GerbePtr tensor_gerbe(const GerbePtr& g1, const GerbePtr& g2);
GerbePtr dual_gerbe(const GerbePtr& g);
GerbePtr pullback_gerbe(const GerbePtr& g, const SimplicialMap& f);

// Pulls every datum back to a finer cover; to_old[i] is the index of g's
// cover that index i of `finer` sits over (supports must be contained).
GerbePtr refine_gerbe(const GerbePtr& g, const CoverPtr& finer, const std::vector<int>& to_old);

// Per (vertex, index): the canonical trivialization of the diagonal line.
Field<cplx> t_mu(const BundleGerbe& g);

// Single index with empty label, L trivial and mu = 1.
bool is_trivial_gerbe(const BundleGerbe& g);
// rho of a trivial gerbe.
std::vector<double> trivial_rho(const BundleGerbe& g);

bool gerbes_equal(const BundleGerbe& a, const BundleGerbe& b);
inline bool same_gerbe(const GerbePtr& a, const GerbePtr& b) { return a == b || (a && b && gerbes_equal(*a, *b)); }

// Sum over triangles of rho weighted by the stored orientation.
double oriented_sum(const SimplicialSurface& s, const std::vector<double>& rho);

}  // namespace gerbes
