#pragma once

#include <random>
#include <vector>

#include "gerbes/morphism.hpp"
#include "gerbes/twomorphism.hpp"

namespace gerbes {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double a, double b);
cplx random_phase(Rng& rng);
Mat random_unitary(int n, Rng& rng);
std::vector<double> random_rho(const SimplicialSurface& s, Rng& rng, double scale = 1.0);

// Region-like cover: triangles grouped around random centres, each region
// grown by a random ring of neighbours. n is capped by the triangle count.
CoverPtr random_cover(const SurfacePtr& s, int n, Rng& rng);

// Each index kept once and, at random, duplicated with a smaller support.
struct RefinedCover {
  CoverPtr cover;
  std::vector<int> to_old;
};
RefinedCover random_refinement(const CoverPtr& c, Rng& rng);

// A gerbe in the gauge orbit of I_rho together with B: G -> I_rho.
struct GaugedGerbe {
  GerbePtr G;
  GerbePtr I;  // I_rho
  MorphPtr B;
  MorphPtr Binv;
  std::vector<double> rho;
};
GaugedGerbe random_gauge(const SurfacePtr& s, const std::vector<double>& rho, const CoverPtr& Y, Rng& rng);
GaugedGerbe random_gauge(const SurfacePtr& s, const std::vector<double>& rho, int n_indices, Rng& rng);

// Random rank-n bundle E: I_rho1 -> I_rho2 on the single-index site; rho2 is
// chosen so that the curvature law holds.
MorphPtr random_trivial_morphism(const GerbePtr& I1, int rank, Rng& rng);
// Adjoint-action copy of E by a random vertex gauge gamma, and gamma: E => E'.
struct Conjugated {
  MorphPtr E2;
  TwoMorphismRep gamma;
};
Conjugated random_conjugate(const MorphPtr& E, Rng& rng);

// Duplicates indices (with random sub-supports when `refine`) and applies a
// random vertex gauge; iso: A0 => A.
struct Dressed {
  MorphPtr A;
  TwoMorphismRep iso;
};
Dressed gauge_refine(const MorphPtr& A0, Rng& rng, bool refine = true);

// A = dressing of B2^-1 o E o B1 : G1 -> G2.
struct RandomMorphism {
  MorphPtr core;  // B2^-1 o E o B1 as a chain
  MorphPtr E;
  MorphPtr A;
  TwoMorphismRep iso;  // core => A
};
RandomMorphism random_morphism(const GaugedGerbe& g1, const MorphPtr& E, const GaugedGerbe& g2, Rng& rng,
                               bool refine = true);
// Lifts gamma: X.E => Y.E to X.A => Y.A.
TwoMorphismRep lift_2(const GaugedGerbe& g1, const GaugedGerbe& g2, const RandomMorphism& X,
                      const RandomMorphism& Y, const TwoMorphismRep& gamma);

// Random closed or bordered test surface with at most 30 triangles.
SurfacePtr random_surface(Rng& rng, bool closed_only = false);

}  // namespace gerbes
