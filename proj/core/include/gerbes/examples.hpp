#pragma once

#include <string>
#include <vector>

#include "gerbes/scenario.hpp"

namespace gerbes {

struct ExampleParams {
  double theta = 0.0;             // torus: total curvature; disc-brane: rank-2 boundary angle
  std::string jandl = "trivial";  // klein, rp2: trivial | twisted
  int rank = 1;                   // disc-brane module rank
  int indices = 0;                // cover size of the random gauge; 0 keeps the trivial gerbe
  unsigned seed = 1;
};

// sphere | torus | klein | rp2 | disc-brane | random-gauge.
// meta records the name, the parameters and the holonomy mode.
Scenario make_example(const std::string& name, const ExampleParams& p);
const std::vector<std::string>& example_names();

}  // namespace gerbes
