#include "rifs/noise.hpp"

#include <cmath>
#include <numbers>

#include "rifs/errors.hpp"

namespace rifs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Inverse of s - sin(2 pi s) / (2 pi) on [0, 1]. Newton steps safeguarded by
// a bisection bracket; the derivative vanishes at both ends.
double raised_cosine_inverse_cdf(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  double s = u;
  for (int iter = 0; iter < 200; ++iter) {
    const double f = s - std::sin(kTwoPi * s) / kTwoPi - u;
    if (f > 0.0) {
      hi = s;
    } else {
      lo = s;
    }
    const double df = 1.0 - std::cos(kTwoPi * s);
    double next = df > 0.0 ? s - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - s) <= 1e-15 * next || hi - lo <= 1e-16) return next;
    s = next;
  }
  return s;
}

}  // namespace

std::string_view to_string(NoiseFamily family) {
  switch (family) {
    case NoiseFamily::uniform:
      return "uniform";
    case NoiseFamily::linear_ramp:
      return "linear-ramp";
    case NoiseFamily::raised_cosine:
      return "raised-cosine";
    case NoiseFamily::quadratic_bump:
      return "quadratic-bump";
  }
  return "unknown";
}

NoiseFamily parse_noise_family(std::string_view name) {
  if (name == "uniform") return NoiseFamily::uniform;
  if (name == "linear-ramp") return NoiseFamily::linear_ramp;
  if (name == "raised-cosine") return NoiseFamily::raised_cosine;
  if (name == "quadratic-bump") return NoiseFamily::quadratic_bump;
  throw ConfigurationError("unknown noise family '" + std::string(name) + "'");
}

NoiseDensity::NoiseDensity(NoiseFamily family, double epsilon, double slope)
    : family_(family), epsilon_(epsilon), slope_(slope) {
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    throw DomainError("noise range epsilon must be finite and >= 0");
  }
  if (!(slope >= -1.0 && slope <= 1.0)) {
    throw DomainError("linear-ramp slope must lie in [-1, 1]");
  }
}

NoiseDensity NoiseDensity::uniform(double epsilon) {
  return NoiseDensity(NoiseFamily::uniform, epsilon, 0.0);
}

NoiseDensity NoiseDensity::linear_ramp(double epsilon, double slope) {
  return NoiseDensity(NoiseFamily::linear_ramp, epsilon, slope);
}

NoiseDensity NoiseDensity::raised_cosine(double epsilon) {
  return NoiseDensity(NoiseFamily::raised_cosine, epsilon, 0.0);
}

NoiseDensity NoiseDensity::quadratic_bump(double epsilon) {
  return NoiseDensity(NoiseFamily::quadratic_bump, epsilon, 0.0);
}

NoiseDensity NoiseDensity::with_epsilon(double epsilon) const {
  return NoiseDensity(family_, epsilon, slope_);
}

double NoiseDensity::pdf(double t) const {
  if (degenerate()) throw UnsupportedConfiguration("pdf of a point-mass noise density");
  if (t < 0.0 || t > epsilon_) return 0.0;
  const double s = t / epsilon_;
  switch (family_) {
    case NoiseFamily::uniform:
      return 1.0 / epsilon_;
    case NoiseFamily::linear_ramp:
      return (1.0 + slope_ * (2.0 * s - 1.0)) / epsilon_;
    case NoiseFamily::raised_cosine:
      return (1.0 - std::cos(kTwoPi * s)) / epsilon_;
    case NoiseFamily::quadratic_bump:
      return 6.0 * s * (1.0 - s) / epsilon_;
  }
  return 0.0;
}

double NoiseDensity::derivative(double t) const {
  if (degenerate()) throw UnsupportedConfiguration("derivative of a point-mass noise density");
  if (t < 0.0 || t > epsilon_) return 0.0;
  const double s = t / epsilon_;
  const double e2 = epsilon_ * epsilon_;
  switch (family_) {
    case NoiseFamily::uniform:
      return 0.0;
    case NoiseFamily::linear_ramp:
      return 2.0 * slope_ / e2;
    case NoiseFamily::raised_cosine:
      return kTwoPi * std::sin(kTwoPi * s) / e2;
    case NoiseFamily::quadratic_bump:
      return 6.0 * (1.0 - 2.0 * s) / e2;
  }
  return 0.0;
}

double NoiseDensity::cdf(double t) const {
  if (degenerate()) return t >= 0.0 ? 1.0 : 0.0;
  if (t <= 0.0) return 0.0;
  if (t >= epsilon_) return 1.0;
  const double s = t / epsilon_;
  switch (family_) {
    case NoiseFamily::uniform:
      return s;
    case NoiseFamily::linear_ramp:
      return slope_ * s * s + (1.0 - slope_) * s;
    case NoiseFamily::raised_cosine:
      return s - std::sin(kTwoPi * s) / kTwoPi;
    case NoiseFamily::quadratic_bump:
      return s * s * (3.0 - 2.0 * s);
  }
  return 0.0;
}

double NoiseDensity::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
  if (degenerate()) return 0.0;
  double s = 0.0;
  switch (family_) {
    case NoiseFamily::uniform:
      s = u;
      break;
    case NoiseFamily::linear_ramp: {
      // Root of c s^2 + (1 - c) s = u in the cancellation-free form.
      // At u = 0 with c = 1 the denominator vanishes too.
      const double q = 1.0 - slope_;
      s = u == 0.0 ? 0.0 : 2.0 * u / (q + std::sqrt(q * q + 4.0 * slope_ * u));
      break;
    }
    case NoiseFamily::raised_cosine:
      s = raised_cosine_inverse_cdf(u);
      break;
    case NoiseFamily::quadratic_bump:
      s = 0.5 - std::sin(std::asin(1.0 - 2.0 * u) / 3.0);
      break;
  }
  if (s < 0.0) s = 0.0;
  if (s > 1.0) s = 1.0;
  return s * epsilon_;
}

double NoiseDensity::at_zero() const {
  if (degenerate()) throw UnsupportedConfiguration("h(0) of a point-mass noise density");
  switch (family_) {
    case NoiseFamily::uniform:
      return 1.0 / epsilon_;
    case NoiseFamily::linear_ramp:
      return (1.0 - slope_) / epsilon_;
    case NoiseFamily::raised_cosine:
    case NoiseFamily::quadratic_bump:
      return 0.0;
  }
  return 0.0;
}

double NoiseDensity::at_epsilon() const {
  if (degenerate()) throw UnsupportedConfiguration("h(eps) of a point-mass noise density");
  switch (family_) {
    case NoiseFamily::uniform:
      return 1.0 / epsilon_;
    case NoiseFamily::linear_ramp:
      return (1.0 + slope_) / epsilon_;
    case NoiseFamily::raised_cosine:
    case NoiseFamily::quadratic_bump:
      return 0.0;
  }
  return 0.0;
}

double NoiseDensity::derivative_sup() const {
  if (degenerate()) throw UnsupportedConfiguration("sup|h'| of a point-mass noise density");
  const double e2 = epsilon_ * epsilon_;
  switch (family_) {
    case NoiseFamily::uniform:
      return 0.0;
    case NoiseFamily::linear_ramp:
      return 2.0 * std::abs(slope_) / e2;
    case NoiseFamily::raised_cosine:
      return kTwoPi / e2;
    case NoiseFamily::quadratic_bump:
      return 6.0 / e2;
  }
  return 0.0;
}

NoiseStats noise_stats(const NoiseDensity& h) {
  return NoiseStats{h.at_zero(), h.at_epsilon(), h.derivative_sup(), h.cdf(h.epsilon())};
}

}  // namespace rifs
