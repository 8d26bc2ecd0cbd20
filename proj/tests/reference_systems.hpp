#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "rifs/grid.hpp"
#include "rifs/system.hpp"

namespace rifs::ref {

inline IfsSystem s1() {
  return make_system(0.4, {{-0.3, 1.0, 0.5}, {0.2, 1.0, 0.5}}, NoiseDensity::uniform(0.1));
}

inline IfsSystem s2() { return make_system(0.5, {{0.0, 1.0, 1.0}}, NoiseDensity::uniform(0.1)); }

inline IfsSystem s3() {
  return make_system(0.4, {{-0.3, 1.0, 0.7}, {0.2, 1.0, 0.3}}, NoiseDensity::raised_cosine(0.1));
}

struct Named {
  const char* name;
  IfsSystem sys;
};

inline std::vector<Named> reference_systems() { return {{"S1", s1()}, {"S2", s2()}, {"S3", s3()}}; }

inline double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Random polynomial of degree <= 5 with coefficients in [-1, 1].
inline GridFunction random_polynomial(const Grid& grid, std::mt19937_64& rng) {
  std::vector<double> c(6);
  for (double& v : c) v = 2.0 * unit(rng) - 1.0;
  return GridFunction::sample(grid, [&](double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  });
}

inline std::vector<std::pair<double, double>> random_intervals(std::size_t count, std::mt19937_64& rng) {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < count; ++i) {
    double c = 2.0 * unit(rng) - 1.0;
    double d = 2.0 * unit(rng) - 1.0;
    if (c > d) std::swap(c, d);
    out.emplace_back(c, d);
  }
  return out;
}

}  // namespace rifs::ref
