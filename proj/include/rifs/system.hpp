#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rifs/noise.hpp"

namespace rifs {

/// One affine branch x -> lambda x + shift + coupling * t, chosen with the
/// given probability.
struct Branch {
  double shift = 0.0;
  double coupling = 1.0;
  double probability = 1.0;
};

/// Random IFS on I = [-1, 1]: at each step branch k is drawn with probability
/// p_k and t is drawn from the noise density on [0, epsilon].
struct IfsSystem {
  double lambda = 0.5;
  std::vector<Branch> branches;
  double epsilon = 0.0;
  NoiseDensity noise = NoiseDensity::uniform(0.0);
};

// Builds a system whose epsilon is taken from the noise density.
IfsSystem make_system(double lambda, std::vector<Branch> branches, const NoiseDensity& noise);

struct Violation {
  std::string rule;
  std::optional<std::size_t> branch;
  std::optional<double> endpoint;  // value of t at which containment fails
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool admissible() const { return violations.empty(); }
  std::string summary() const;
};

ValidationReport validate_system(const IfsSystem& sys);

// Throws PreconditionError carrying the report summary if sys is inadmissible.
void require_admissible(const IfsSystem& sys);

// As require_admissible, and additionally rejects epsilon == 0.
void require_smoothing(const IfsSystem& sys, const char* operation);

double map_apply(const IfsSystem& sys, std::size_t k, double t, double x);
double map_inverse(const IfsSystem& sys, std::size_t k, double t, double y);
std::pair<double, double> image_interval(const IfsSystem& sys, std::size_t k, double t);

}  // namespace rifs
