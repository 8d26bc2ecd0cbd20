#pragma once

#include <cstdint>
#include <vector>

#include "rifs/grid.hpp"
#include "rifs/system.hpp"

namespace rifs {

/// States of the random IFS chain after burn-in.
struct SampleSet {
  std::vector<double> samples;
  std::uint64_t seed = 0;
  std::size_t burn_in = 0;
  std::size_t count = 0;
};

/// Runs x_{j+1} = f_{K_j, T_j}(x_j) from x_0 = 0. Each step draws K by inverse
/// CDF over the branch probabilities, then T by the noise quantile, from one
/// mt19937_64 stream; the result is bit-reproducible from (system, count,
/// burn_in, seed). epsilon == 0 is allowed here.
SampleSet sample_chain(const IfsSystem& sys, std::size_t count, std::size_t burn_in, std::uint64_t seed);

/// Right-continuous step CDF of a sample.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);

  std::size_t size() const { return sorted_.size(); }
  const std::vector<double>& sorted() const { return sorted_; }
  double operator()(double x) const;
  double left_limit(double x) const;

 private:
  std::vector<double> sorted_;
};

EmpiricalCdf empirical_cdf(const SampleSet& s);

/// F(x_j) = int_{-1}^{x_j} phi dm by cumulative Simpson (half panels at odd
/// nodes). DomainError if phi < -1e-9 anywhere.
GridFunction density_cdf(const GridFunction& phi);

/// sup |F1 - F2| over all sample points (both one-sided limits) and grid nodes.
double ks_distance(const EmpiricalCdf& f1, const GridFunction& f2);
double ks_distance(const GridFunction& f1, const EmpiricalCdf& f2);
double ks_distance(const EmpiricalCdf& f1, const EmpiricalCdf& f2);
double ks_distance(const GridFunction& f1, const GridFunction& f2);

}  // namespace rifs
