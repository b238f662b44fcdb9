#pragma once

#include <vector>

#include "gerbes/morphism.hpp"

namespace gerbes {

// Representative (W, omega, beta) of a 2-morphism src => tgt. W refines
// Z_src x_P Z_tgt via the legs w1, w2; beta(v, w): A_src,w1 -> A_tgt,w2.
struct TwoMorphismRep {
  MorphPtr src, tgt;
  CoverPtr W;
  std::vector<int> w1, w2;
  Field<Mat> beta;  // {vertices, W}

  int size() const { return W->size(); }
  const Mat& b(int v, int w) const { return beta.at({v, w}); }
};

// Allocates a rep with empty matrices.
TwoMorphismRep empty_rep(MorphPtr src, MorphPtr tgt, CoverPtr W, std::vector<int> w1, std::vector<int> w2);

Report validate_2(const TwoMorphismRep& r, double eps);

// Merges indices with equal legs (beta of a valid rep depends only on the legs).
// Returns r unchanged when the merged values disagree.
TwoMorphismRep compact(const TwoMorphismRep& r);

TwoMorphismRep identity_2(const MorphPtr& a);
// b2 after b1 (vertical). Throws MorphismMismatch unless b1.tgt matches b2.src.
TwoMorphismRep vertical(const TwoMorphismRep& b2, const TwoMorphismRep& b1);
// b2 o b1 for b1: A1 => A1' and b2: A2 => A2' with A2 after A1.
TwoMorphismRep horizontal(const TwoMorphismRep& b2, const TwoMorphismRep& b1);
// Inverse of a 2-isomorphism (equal ranks).
TwoMorphismRep inverse_2(const TwoMorphismRep& r);

// lambda_A: A o id => A and rho_A: id o A => A.
TwoMorphismRep left_unitor(const MorphPtr& a);
TwoMorphismRep right_unitor(const MorphPtr& a);

struct Inverse {
  MorphPtr inv;
  TwoMorphismRep i_l;  // inv o A => id_src
  TwoMorphismRep i_r;  // id_tgt => A o inv
};
Inverse invert(const MorphPtr& a);

// beta: A => A' between rank-1 morphisms gives A'^-1 => A^-1.
TwoMorphismRep mate(const TwoMorphismRep& beta);
// Same mate with the opposite insertion order of i_l and i_r.
TwoMorphismRep mate_alternative(const TwoMorphismRep& beta);

TwoMorphismRep dual_2(const TwoMorphismRep& r);
TwoMorphismRep pullback_2(const TwoMorphismRep& r, const SimplicialMap& f);
TwoMorphismRep tensor_2(const TwoMorphismRep& b1, const TwoMorphismRep& b2);

// Pulls a rep back along a refinement map X -> W (legs and matrices composed).
TwoMorphismRep restrict_rep(const TwoMorphismRep& r, const CoverPtr& X, const std::vector<int>& to_w);

// Max deviation of the matrices on the common refinement; +inf if the
// endpoints differ.
double distance_2(const TwoMorphismRep& r1, const TwoMorphismRep& r2);
bool equivalent_2(const TwoMorphismRep& r1, const TwoMorphismRep& r2, double eps);
// Exact equality of representatives.
bool reps_equal(const TwoMorphismRep& a, const TwoMorphismRep& b);

}  // namespace gerbes
