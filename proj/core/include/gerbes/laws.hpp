#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gerbes/config.hpp"

namespace gerbes {

// Outcome of one law over all generated cases.
struct LawResult {
  std::string name;
  bool pass = true;
  double max_deviation = 0.0;
  int cases = 0;
  double seconds = 0.0;  // wall time spent in this law's checks
  std::vector<std::string> failures;  // first few offending cases

  // Fails when dev > eps; eps = 0 demands exact agreement.
  void observe(double dev, double eps, const std::string& where);
  void require(bool ok, const std::string& where);
};

struct LawConfig {
  int cases = 100;
  unsigned seed = 1;
  double eps = 1e-9;
};

using Suite = std::vector<LawResult>;

// Associativity (byte-exact), unitor triangle, identities, interchange, unitor naturality.
Suite twocat_laws(const LawConfig& cfg);
// t_mu identities, d_A cocycle and square.
Suite lemma_laws(const LawConfig& cfg);
// Zig-zag, mates, NotInvertible for rank >= 2.
Suite inverse_laws(const LawConfig& cfg);
// normalize_1 round trip, canonical forms, fullness, compatibility with composition.
Suite descent_laws(const LawConfig& cfg);
// Bun on composition, unit, inverse, tensor, pullback and duals; curvature, functoriality.
Suite bun_laws(const LawConfig& cfg);
// Duality identities on gerbes, 1- and 2-morphisms; holonomy of the dual.
Suite duality_laws(const LawConfig& cfg);
// Trivialization independence, tensor, refinement, stable isomorphism, D-branes.
Suite holonomy_laws(const LawConfig& cfg);
// Jandl validity, transport along 1- and 2-morphisms and composites, unoriented holonomy independence.
Suite jandl_laws(const LawConfig& cfg);

struct SuiteEntry {
  std::string name;
  std::function<Suite(const LawConfig&)> run;
};
const std::vector<SuiteEntry>& all_suites();

}  // namespace gerbes
