#pragma once

#include <vector>

#include "gerbes/morphism.hpp"
#include "gerbes/twomorphism.hpp"

namespace gerbes {

// Rank-1 1-isomorphism T: G -> I_rho.
struct Trivialization {
  MorphPtr T;
  std::vector<double> rho;
};

// Seed 0 uses the least valid index as anchor everywhere and trivial edge
// phases; other seeds draw anchors and phases pseudo-randomly. A trivial
// gerbe with seed 0 gets its identity morphism.
Trivialization trivialize(const GerbePtr& g, unsigned seed = 0);

// exp(i sum_t o_t rho(t)) for a trivialization of G on a closed oriented base.
cplx holonomy_closed(const GerbePtr& g, unsigned seed = 0);
cplx holonomy_closed(const GerbePtr& g, const SimplicialMap& phi, unsigned seed = 0);

// Brane support Q (downward closed) and a left module E: G -> I_omega. E is a
// morphism over the whole base; only its data over Q enters the holonomy.
struct DBrane {
  Bits Q;
  MorphPtr module;
};
Report validate_dbrane(const GerbePtr& g, const DBrane& b, double eps);

// exp(i sum rho) times the product of trace holonomies of Bun(E o T^-1) over
// the boundary cycles.
cplx holonomy_dbrane(const GerbePtr& g, const DBrane& b, unsigned seed = 0);
cplx holonomy_dbrane(const GerbePtr& g, const DBrane& b, const SimplicialMap& phi, unsigned seed = 0);

// Module transport along a 1-isomorphism A: G -> G'.
MorphPtr transport_left_module(const MorphPtr& e, const MorphPtr& a);   // E o A^-1
MorphPtr transport_right_module(const MorphPtr& f, const MorphPtr& a);  // A o F
// (E o A^-1) o A => E.
TwoMorphismRep left_module_roundtrip(const MorphPtr& e, const MorphPtr& a);
// Left G-module E: G -> I_w becomes the right G*-module E*: I_-w -> G*.
MorphPtr exchange_module(const MorphPtr& e);

}  // namespace gerbes
