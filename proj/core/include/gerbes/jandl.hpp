#pragma once

#include <random>
#include <vector>

#include "gerbes/holonomy.hpp"
#include "gerbes/morphism.hpp"
#include "gerbes/twomorphism.hpp"

namespace gerbes {

// (k, A, phi) with A: k*G -> G* and phi: k*A => A*.
struct JandlStructure {
  SimplicialMap k;
  MorphPtr A;
  TwoMorphismRep phi;
};

Report jandl_validate(const GerbePtr& g, const JandlStructure& j, double eps);
// beta: A => A' commuting with phi and phi'.
Report jandl_morphism_validate(const JandlStructure& j1, const JandlStructure& j2, const TwoMorphismRep& beta,
                               double eps);
// Searches a morphism of Jandl structures (rank-1 solve plus the square).
bool jandl_equivalent(const JandlStructure& j1, const JandlStructure& j2, double eps);

// J_B for B: G -> G' sends a Jandl structure on G' to one on G.
JandlStructure jandl_transport(const MorphPtr& b, const JandlStructure& j);
// J_B on a morphism beta of Jandl structures on G'.
TwoMorphismRep jandl_transport_2(const MorphPtr& b, const SimplicialMap& k, const TwoMorphismRep& beta);

// Line bundle R over a surface with involution sigma and phi(v): R_{sigma v} -> R_v.
struct EquivariantLineBundle {
  SimplicialMap sigma;
  DiscreteBundle R;
  std::vector<cplx> phi;
};
Report validate_equivariant(const EquivariantLineBundle& e, double eps);
EquivariantLineBundle jandl_to_equivariant(const JandlStructure& j);

// exp(i sum_F rho) * hol_R(boundary of F) for a gerbe on the orientation cover.
cplx holonomy_unoriented(const GerbePtr& g, const JandlStructure& j, const FundamentalDomain& f,
                         unsigned seed = 0);

// Jandl structure on I_rho with k*rho = -rho: trivial line in the gauge g(v)
// and phi(v) = sign * g(v) / g(k v). Throws NotEquivariant when rho + k*rho != 0.
JandlStructure gauge_jandl(const GerbePtr& I, const SimplicialMap& k, int sign, const std::vector<cplx>& gauge);
JandlStructure gauge_jandl(const GerbePtr& I, const SimplicialMap& k, int sign);

// rho on the cover equal on both lifts of every base triangle, so k*rho = -rho.
std::vector<double> symmetric_rho(const OrientationCover& oc, const std::vector<double>& base_rho);

}  // namespace gerbes
