#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "gerbes/config.hpp"

namespace gerbes::testing {

constexpr double kEps = 1e-9;

// Seeds for hand-rolled generators; fixed so failures replay.
inline std::vector<std::uint64_t> seeds(int n, std::uint64_t base = 0x9e3779b97f4a7c15ull) {
  std::vector<std::uint64_t> s;
  std::mt19937_64 g(base);
  for (int i = 0; i < n; ++i) s.push_back(g());
  return s;
}

inline double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace gerbes::testing
