#pragma once

#include <string>
#include <string_view>

namespace rifs {

enum class NoiseFamily { uniform, linear_ramp, raised_cosine, quadratic_bump };

std::string_view to_string(NoiseFamily family);

/// Parses the JSON spelling of a family ("uniform", "linear-ramp",
/// "raised-cosine", "quadratic-bump"). Throws ConfigurationError otherwise.
NoiseFamily parse_noise_family(std::string_view name);

/// Density h of the noise parameter t on [0, epsilon].
///
/// Every family is normalized in closed form, so h(0), h(epsilon), sup|h'|
/// and the quantile function are exact. With s = t / epsilon:
///
///   uniform         h = 1/eps
///   linear-ramp     h = (1 + c (2s - 1)) / eps, slope c in [-1, 1]
///   raised-cosine   h = (1 - cos(2 pi s)) / eps
///   quadratic-bump  h = 6 s (1 - s) / eps
///
/// epsilon == 0 is a point mass at t = 0; only the quantile is defined then.
class NoiseDensity {
 public:
  static NoiseDensity uniform(double epsilon);
  static NoiseDensity linear_ramp(double epsilon, double slope = 1.0);
  static NoiseDensity raised_cosine(double epsilon);
  static NoiseDensity quadratic_bump(double epsilon);

  NoiseFamily family() const { return family_; }
  double epsilon() const { return epsilon_; }
  double slope() const { return slope_; }
  bool degenerate() const { return epsilon_ == 0.0; }

  // Same family and parameters on a different noise range.
  NoiseDensity with_epsilon(double epsilon) const;

  double pdf(double t) const;
  double derivative(double t) const;
  double cdf(double t) const;
  double quantile(double u) const;

  double at_zero() const;
  double at_epsilon() const;
  double derivative_sup() const;

 private:
  NoiseDensity(NoiseFamily family, double epsilon, double slope);

  NoiseFamily family_;
  double epsilon_;
  double slope_;
};

struct NoiseStats {
  double h0;
  double heps;
  double hprime_sup;
  double mass;
};

/// Closed-form h(0), h(eps), sup|h'| and total mass. Throws
/// UnsupportedConfiguration for the degenerate epsilon == 0 density.
NoiseStats noise_stats(const NoiseDensity& h);

}  // namespace rifs
