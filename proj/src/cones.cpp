#include "rifs/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rifs/errors.hpp"

namespace rifs {

namespace {

constexpr double kMembershipTolerance = 1e-6;
constexpr double kDegenerateDenominator = 1e-12;
constexpr double kWitnessAmplitude = 0.9;
constexpr double kUnitMassTolerance = 1e-10;

void check_cone_parameters(double a, double gamma) {
  if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("cone amplitude a must be finite and >= 0");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("cone exponent gamma must lie in (0, 1]");
}

void require_member(const GridFunction& rho, double a, double gamma, const char* name) {
  for (double v : rho.values()) {
    if (!(v > 0.0)) throw DomainError(std::string(name) + " is not strictly positive");
  }
  const double c = holder_log_constant(rho, gamma).value;
  if (c > a + kMembershipTolerance) {
    std::ostringstream msg;
    msg << name << " is not in D(a, gamma): log-Hoelder constant " << c << " exceeds a = " << a;
    throw PreconditionError(msg.str());
  }
}

GridFunction unit_mass(GridFunction f) {
  f *= 1.0 / integrate_dm(f);
  return f;
}

// Van der Corput points in (-1, 1), used as extra bump centres.
double corput_centre(std::size_t k) {
  double x = 0.0;
  double base = 0.5;
  while (k > 0) {
    if (k & 1U) x += base;
    base *= 0.5;
    k >>= 1U;
  }
  return 2.0 * x - 1.0;
}

}  // namespace

ConeConstants contraction_constants(double lambda, double a, double gamma) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in (0, 1)");
  check_cone_parameters(a, gamma);
  const double log_ratio = std::log((1.0 + lambda) / (1.0 - lambda));
  ConeConstants c;
  c.lambda0 = std::tanh(0.5 * log_ratio + std::pow(2.0, gamma - 1.0) * lambda * a);
  c.diameter_D = 2.0 * log_ratio + std::pow(2.0, 1.0 + gamma) * lambda * a;
  c.b_min = 1.0 / (1.0 - c.lambda0);
  return c;
}

EConeDiameter e_cone_diameter(double lambda, double a, double gamma, double b) {
  const ConeConstants c = contraction_constants(lambda, a, gamma);
  if (!(b > c.b_min)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "E-cone modulus b = " << b << " must exceed b_min = " << c.b_min;
    throw PreconditionError(msg.str());
  }
  const double log_ratio = std::log((1.0 + lambda) / (1.0 - lambda));
  EConeDiameter d;
  d.diameter_LE = 8.0 * b * log_ratio + std::pow(2.0, 3.0 + gamma) * lambda * a * b +
                  2.0 * std::log((b + 1.0 + b * c.lambda0) / (b - 1.0 - b * c.lambda0));
  d.lambda1 = std::tanh(d.diameter_LE / 4.0);
  return d;
}

double theta_D(const GridFunction& rho1, const GridFunction& rho2, double a, double gamma) {
  check_cone_parameters(a, gamma);
  if (!(rho1.grid() == rho2.grid())) throw ConfigurationError("theta_D: functions live on different grids");
  require_member(rho1, a, gamma, "rho1");
  require_member(rho2, a, gamma, "rho2");

  const auto r1 = rho1.values();
  const auto r2 = rho2.values();
  double alpha = std::numeric_limits<double>::infinity();
  double beta = 0.0;
  for (std::size_t j = 0; j < r1.size(); ++j) {
    const double q = r2[j] / r1[j];
    alpha = std::min(alpha, q);
    beta = std::max(beta, q);
  }

  const std::size_t stride = pair_stride(rho1.size());
  const std::size_t m = (rho1.size() - 1) / stride + 1;
  std::vector<double> growth(m);
  for (std::size_t k = 0; k < m; ++k) {
    growth[k] = std::exp(a * std::pow(static_cast<double>(k * stride) * rho1.grid().spacing(), gamma));
  }
  for (std::size_t i = 0; i < m; ++i) {
    const double r1x = r1[i * stride];
    const double r2x = r2[i * stride];
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const double e = growth[i > j ? i - j : j - i];
      const double den = e * r1[j * stride] - r1x;
      if (std::abs(den) < kDegenerateDenominator) continue;
      const double ratio = (e * r2[j * stride] - r2x) / den;
      alpha = std::min(alpha, ratio);
      beta = std::max(beta, ratio);
    }
  }
  if (!(alpha > 0.0)) return std::numeric_limits<double>::infinity();
  return std::log(beta / alpha);
}

std::vector<GridFunction> witness_family(const Grid& grid, double a, double gamma, std::size_t count) {
  check_cone_parameters(a, gamma);
  if (count == 0) throw ConfigurationError("witness_family needs count >= 1");
  // A tilt s x has log-Hoelder constant s 2^{1 - gamma}; a bump has s.
  const double tilt = kWitnessAmplitude * a * std::pow(2.0, gamma - 1.0);
  const double bump = kWitnessAmplitude * a;
  auto make_bump = [&](double centre, double sign, double amplitude) {
    return GridFunction::sample(grid, [=](double x) {
      return std::exp(sign * amplitude * (1.0 - std::pow(std::abs(x - centre), gamma)));
    });
  };

  std::vector<GridFunction> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    switch (k) {
      case 0:
        out.push_back(GridFunction(grid, 1.0));
        break;
      case 1:
        out.push_back(GridFunction::sample(grid, [=](double x) { return std::exp(tilt * x); }));
        break;
      case 2:
        out.push_back(GridFunction::sample(grid, [=](double x) { return std::exp(-tilt * x); }));
        break;
      case 3:
        out.push_back(make_bump(0.0, 1.0, bump));
        break;
      case 4:
        out.push_back(make_bump(0.0, -1.0, bump));
        break;
      case 5:
        out.push_back(make_bump(-0.5, 1.0, bump));
        break;
      case 6:
        out.push_back(make_bump(0.5, 1.0, bump));
        break;
      case 7:
        out.push_back(make_bump(-0.5, -1.0, bump));
        break;
      case 8:
        out.push_back(make_bump(0.5, -1.0, bump));
        break;
      default: {
        // Alternate bumps and dips at half amplitude over fresh centres.
        const std::size_t extra = k - 9;
        const double centre = corput_centre(extra / 2 + 3);
        const double sign = extra % 2 == 0 ? 1.0 : -1.0;
        out.push_back(make_bump(centre, sign, 0.5 * bump));
        break;
      }
    }
    out.back() = unit_mass(std::move(out.back()));
  }
  return out;
}

WitnessSet::WitnessSet(std::vector<GridFunction> witnesses, double a, double gamma)
    : witnesses_(std::move(witnesses)), a_(a), gamma_(gamma) {
  if (witnesses_.empty()) throw ConfigurationError("witness set is empty");
  for (std::size_t k = 0; k < witnesses_.size(); ++k) {
    if (!(witnesses_[k].grid() == witnesses_[0].grid())) {
      throw ConfigurationError("witnesses live on different grids");
    }
    if (std::abs(integrate_dm(witnesses_[k]) - 1.0) > kUnitMassTolerance) {
      throw PreconditionError("witness " + std::to_string(k) + " does not have unit mass");
    }
    require_member(witnesses_[k], a, gamma, ("witness " + std::to_string(k)).c_str());
  }
  const std::size_t n = witnesses_.size();
  theta_.assign(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const double t = theta_D(witnesses_[j], witnesses_[k], a, gamma);
      theta_[j * n + k] = t;
      theta_[k * n + j] = t;
    }
  }
}

double theta_E_lower_bound(const GridFunction& phi1, const GridFunction& phi2, const WitnessSet& witnesses,
                           double b) {
  if (!(b > 0.0)) throw DomainError("E-cone modulus b must be > 0");
  const std::size_t n = witnesses.size();
  std::vector<double> m1(n);
  std::vector<double> m2(n);
  for (std::size_t k = 0; k < n; ++k) {
    const GridFunction& rho = witnesses.functions()[k];
    m1[k] = integrate_dm(pointwise_product(phi1, rho));
    m2[k] = integrate_dm(pointwise_product(phi2, rho));
    for (const auto& [name, value] : {std::pair{"phi1", m1[k]}, std::pair{"phi2", m2[k]}}) {
      if (!(value > 0.0)) {
        throw PreconditionError(std::string(name) + " fails E-cone positivity on witness " + std::to_string(k));
      }
    }
  }

  // Membership of each phi in E restricted to the witness pairs.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (j == k) continue;
      const double bound = b * witnesses.theta(j, k);
      for (const auto& [name, m] : {std::pair{"phi1", &m1}, std::pair{"phi2", &m2}}) {
        if (std::abs(std::log((*m)[j] / (*m)[k])) >= bound) {
          throw PreconditionError(std::string(name) + " fails E-cone membership on witness pair (" +
                                  std::to_string(j) + ", " + std::to_string(k) + ")");
        }
      }
    }
  }

  // alpha_E and beta_E are the inf and sup of the same family of ratios:
  // m2/m1 per witness, and per ordered pair (j, k)
  //   (e^{b theta_jk} m2_k - m2_j) / (e^{b theta_jk} m1_k - m1_j).
  double alpha = std::numeric_limits<double>::infinity();
  double beta = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double q = m2[k] / m1[k];
    alpha = std::min(alpha, q);
    beta = std::max(beta, q);
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (j == k) continue;
      const double e = std::exp(b * witnesses.theta(j, k));
      const double ratio = (e * m2[k] - m2[j]) / (e * m1[k] - m1[j]);
      alpha = std::min(alpha, ratio);
      beta = std::max(beta, ratio);
    }
  }
  return std::log(beta / alpha);
}

}  // namespace rifs
