#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gerbes/examples.hpp"

namespace gerbes::cli {

enum Exit : int { kPass = 0, kInvalid = 1, kIoError = 2 };

struct Outcome {
  int code = kPass;
  nlohmann::json report;
};

// Validates every file; files are processed in parallel.
Outcome cmd_validate(const std::vector<std::string>& files, double eps);

struct HolonomyOptions {
  std::string mode;  // closed | dbrane | unoriented; empty reads meta.mode
  unsigned seed = 0;
  bool check_independence = false;
};
Outcome cmd_holonomy(const std::string& file, const HolonomyOptions& opt, double eps);

// Empty `suites` runs all of them.
Outcome cmd_axioms(int cases, unsigned seed, const std::vector<std::string>& suites, double eps);

// Writes the scenario to `out`, or returns it in the report when `out` is empty.
Outcome cmd_example(const std::string& name, const ExampleParams& p, const std::string& out);

// "1.5", "pi", "-pi/2", "3pi/4", "2*pi".
double parse_angle(const std::string& text);

}  // namespace gerbes::cli
