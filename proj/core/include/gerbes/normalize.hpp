#pragma once

#include <optional>
#include <vector>

#include "gerbes/descent.hpp"
#include "gerbes/morphism.hpp"
#include "gerbes/twomorphism.hpp"

namespace gerbes {

// Refinement is the identity on the pair cover P.
bool is_fp_form(const OneMorphism& a);

struct Normalized {
  MorphPtr S;          // fibre-product form
  TwoMorphismRep iso;  // S => A
};
// Glues A along the lexicographic section. FP-form input is returned as is
// with the identity 2-morphism.
Normalized normalize_1(const MorphPtr& a);

// Canonical representative over P between normalize_1(src).S and
// normalize_1(tgt).S. Throws DescentObstruction when matrices over the same
// P index disagree.
TwoMorphismRep normalize_2(const TwoMorphismRep& r);

// A 2-morphism with its raw and canonical representatives.
struct TwoMorphism {
  TwoMorphismRep raw;
  TwoMorphismRep canonical;
};
TwoMorphism make_two(const TwoMorphismRep& r);
// Max deviation of canonical matrices; +inf when the endpoints differ.
double canonical_distance(const TwoMorphism& a, const TwoMorphism& b);
bool same_two(const TwoMorphism& a, const TwoMorphism& b, double eps);

// Bundle of a morphism between trivial gerbes, over the single P index.
struct BunResult {
  DiscreteBundle R;
  Normalized norm;
};
BunResult bun_with_iso(const MorphPtr& a);
DiscreteBundle bun(const MorphPtr& a);
// Vertex maps bun(src) -> bun(tgt).
BundleMorphism bun_2(const TwoMorphismRep& r);

// Rank-1 bundle over the single-index site with tc = f. On a closed oriented
// component the oriented sum of f must be a multiple of 2 pi (within eps).
std::optional<DiscreteBundle> line_bundle_with_curvature(const SurfacePtr& s, const std::vector<double>& f,
                                                         double eps);
// Rank-1 morphism I_rho1 -> I_rho2 built from such a line bundle.
std::optional<MorphPtr> line_morphism(const GerbePtr& I1, const GerbePtr& I2, double eps);

// A 2-isomorphism a => b between rank-1 morphisms, if one exists.
std::optional<TwoMorphismRep> solve_2iso(const MorphPtr& a, const MorphPtr& b);

// FP-form 1-isomorphism G1 -> G2, if the gerbes are isomorphic.
std::optional<MorphPtr> stably_isomorphic(const GerbePtr& g1, const GerbePtr& g2);

}  // namespace gerbes
