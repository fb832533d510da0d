#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "tlm/grid.hpp"

namespace tlm::fixtures {

inline GridFunction random_function(const Grid& grid, std::uint64_t seed,
                                    bool complex_values = true) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  GridFunction f(grid);
  for (auto& v : f.samples()) {
    v = Complex(normal(rng), complex_values ? normal(rng) : 0.0);
  }
  return f;
}

/// Random field with a Gaussian envelope, so it decays at the boundary.
inline GridFunction windowed_random(const Grid& grid, std::uint64_t seed,
                                    double sigma) {
  auto f = random_function(grid, seed);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Point x = grid.point(i);
    f[i] *= std::exp(-(x[0] * x[0] + x[1] * x[1]) / (2.0 * sigma * sigma));
  }
  return f;
}

inline double max_abs_diff(const GridFunction& a, const GridFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double rel(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace tlm::fixtures
