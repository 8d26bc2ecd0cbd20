#include "rifs/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rifs/errors.hpp"

namespace rifs {

namespace {

constexpr std::size_t kRateWindow = 10;

// Exact integral against m of the piecewise-linear interpolant of phi.
class LinearCdf {
 public:
  explicit LinearCdf(const GridFunction& phi) : phi_(phi), cumulative_(phi.size(), 0.0) {
    const double dx = phi.grid().spacing();
    for (std::size_t j = 1; j < phi.size(); ++j) {
      cumulative_[j] = cumulative_[j - 1] + 0.25 * dx * (phi[j - 1] + phi[j]);
    }
  }

  double operator()(double x) const {
    const double dx = phi_.grid().spacing();
    const double u = std::clamp((x + 1.0) / dx, 0.0, static_cast<double>(phi_.size() - 1));
    const std::size_t j = std::min(static_cast<std::size_t>(u), phi_.size() - 2);
    const double w = u - static_cast<double>(j);
    // Half of int_0^{w dx} of the linear segment.
    return cumulative_[j] + 0.5 * w * dx * (phi_[j] + 0.5 * w * (phi_[j + 1] - phi_[j]));
  }

 private:
  const GridFunction& phi_;
  std::vector<double> cumulative_;
};

}  // namespace

DensityResult solve_density(const IfsSystem& sys, const Grid& grid, const QuadratureSpec& quad,
                            const SolveOptions& options) {
  require_smoothing(sys, "solve_density");
  if (!(options.tol > 0.0)) throw ConfigurationError("solver tolerance must be > 0");
  if (options.max_iter < 1) throw ConfigurationError("solver max_iter must be >= 1");

  GridFunction phi = options.seed.value_or(GridFunction(grid, 1.0));
  if (!(phi.grid() == grid)) throw ConfigurationError("seed density lives on a different grid");
  const double seed_mass = integrate_dm(phi);
  if (!(seed_mass > 0.0)) throw DomainError("seed density must have positive mass");
  phi *= 1.0 / seed_mass;

  DensityResult result{phi, 0, false, {}, {}, std::numeric_limits<double>::quiet_NaN(), {}};
  if (options.keep_history) result.history.push_back(phi);

  for (int n = 0; n < options.max_iter; ++n) {
    GridFunction next = apply_L(sys, phi, quad);
    const double mass = integrate_dm(next);
    result.mass_trace.push_back(mass);
    if (options.renormalize) next *= 1.0 / mass;
    const double residual = sup_abs_difference(next, phi);
    result.residual_trace.push_back(residual);
    phi = std::move(next);
    if (options.keep_history) result.history.push_back(phi);
    result.iterations = n + 1;
    if (residual <= options.tol) {
      result.converged = true;
      break;
    }
  }
  result.phi = phi;

  std::vector<double> positive;
  for (double r : result.residual_trace) {
    if (r > 0.0) positive.push_back(r);
  }
  if (positive.size() >= 5) result.fitted_rate = convergence_rate(positive);
  return result;
}

std::vector<double> weak_integrals(const DensityResult& result, const GridFunction& psi) {
  if (result.history.empty()) {
    throw ConfigurationError("weak_integrals needs the iterate history (SolveOptions::keep_history)");
  }
  std::vector<double> out;
  out.reserve(result.history.size());
  for (const GridFunction& phi : result.history) out.push_back(integrate_dm(pointwise_product(psi, phi)));
  return out;
}

GeometricFit fit_geometric(std::span<const double> values, std::size_t tail) {
  if (values.size() < 5) throw ConfigurationError("geometric fit needs at least 5 values");
  const std::size_t n = std::min(tail, values.size());
  const auto window = values.subspan(values.size() - n);
  double sx = 0.0;
  double sy = 0.0;
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(window[i] > 0.0)) throw DomainError("geometric fit needs strictly positive values");
    ys[i] = std::log(window[i]);
    sx += static_cast<double>(i);
    sy += ys[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = static_cast<double>(i) - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double slope = sxy / sxx;
  // A perfectly flat sequence is an exact fit.
  const double r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return GeometricFit{std::exp(slope), r2};
}

double convergence_rate(std::span<const double> residuals) { return fit_geometric(residuals, kRateWindow).rate; }

double invariance_residual(const IfsSystem& sys, const GridFunction& phi,
                           std::span<const std::pair<double, double>> intervals, const QuadratureSpec& quad) {
  require_smoothing(sys, "invariance_residual");
  if (quad.t_nodes < 2) throw ConfigurationError("QuadratureSpec.t_nodes must be >= 2");
  const GaussLegendre gl(quad.t_nodes);
  const LinearCdf cdf(phi);

  double worst = 0.0;
  for (const auto& [c, d] : intervals) {
    if (!(c >= -1.0 && d <= 1.0 && c <= d)) throw DomainError("invariance_residual: malformed interval");
    const double direct = cdf(d) - cdf(c);

    double pulled = 0.0;
    for (const Branch& br : sys.branches) {
      // Preimage of [c, d] under x -> lambda x + a + b t, clipped to I.
      auto preimage_mass = [&](double t) {
        const double lo = std::max(-1.0, (c - br.shift - br.coupling * t) / sys.lambda);
        const double hi = std::min(1.0, (d - br.shift - br.coupling * t) / sys.lambda);
        return hi > lo ? cdf(hi) - cdf(lo) : 0.0;
      };
      // Split [0, eps] where a preimage endpoint crosses +-1.
      std::vector<double> cuts{0.0, sys.epsilon};
      for (double end : {c, d}) {
        for (double edge : {-1.0, 1.0}) {
          const double t = (end - br.shift - sys.lambda * edge) / br.coupling;
          if (t > 0.0 && t < sys.epsilon) cuts.push_back(t);
        }
      }
      std::sort(cuts.begin(), cuts.end());
      double acc = 0.0;
      for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double width = (cuts[s + 1] - cuts[s]) / quad.t_panels;
        for (int p = 0; p < quad.t_panels; ++p) {
          const double lo = cuts[s] + p * width;
          acc += gl.integrate(lo, lo + width, [&](double t) { return preimage_mass(t) * sys.noise.pdf(t); });
        }
      }
      pulled += br.probability * acc;
    }
    worst = std::max(worst, std::abs(direct - pulled));
  }
  return worst;
}

}  // namespace rifs
