#pragma once

#include "gerbes/bundle.hpp"
#include "gerbes/site.hpp"

namespace gerbes {

// Bundle A over a refinement K -> P with transition isometries d(k,k'): A_k -> A_k'
// for pairs over the same P index.
struct DescentDatum {
  Refinement zeta;
  DiscreteBundle A;
  Field<Mat> d;  // {vertices, K, K}
};

Report validate_descent(const DescentDatum& D, double eps);

// Lexicographically smallest k over p valid on simplex s, -1 if none.
int section(const Refinement& r, int p, int s);

struct Glued {
  DiscreteBundle S;   // over r.target
  Field<Mat> beta;    // {vertices, K}: S_{map k} -> A_k
};

// Glues along the lexicographic section. Throws InvalidDescent on a bad datum.
Glued glue(const DescentDatum& D);
// Pulls S back to the refinement with identity transitions.
DescentDatum restrict_bundle(const DiscreteBundle& S, const Refinement& r);

}  // namespace gerbes
