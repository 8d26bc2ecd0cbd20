#include "rifs/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "rifs/errors.hpp"
#include "rifs/solver.hpp"

namespace rifs {

namespace {

double interior_sup(const GridFunction& f, std::size_t margin) {
  double m = 0.0;
  for (std::size_t j = margin; j + margin < f.size(); ++j) m = std::max(m, std::abs(f[j]));
  return m;
}

double derivative_sup(const GridFunction& phi, int k) {
  if (k == 0) return sup_abs(phi);
  const std::size_t margin = k >= 2 ? static_cast<std::size_t>(k) : 0;
  return interior_sup(finite_diff(phi, k), margin);
}

}  // namespace

double theorem_bound(const IfsSystem& sys, int k) {
  require_smoothing(sys, "theorem_bound");
  if (k < 0) throw DomainError("theorem_bound: k must be >= 0");
  const NoiseStats stats = noise_stats(sys.noise);
  const double noise = stats.heps + stats.h0 + sys.epsilon * stats.hprime_sup;
  double weight = 0.0;
  for (const Branch& br : sys.branches) weight += br.probability / std::abs(br.coupling);
  const double exponent = -0.5 * static_cast<double>((k + 1) * (k + 2));
  return std::pow(sys.lambda, exponent) * std::pow(weight * noise, k + 1);
}

bool BoundReport::passed() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const SmoothnessRow& r) { return r.informational || (r.pass && r.pass_lebesgue); });
}

BoundReport check_smoothness(const IfsSystem& sys, const GridFunction& phi, int k_max) {
  if (k_max < 0 || k_max > 3) throw ConfigurationError("check_smoothness supports k_max in 0..3");
  BoundReport report;
  const GridFunction lebesgue = 0.5 * phi;
  for (int k = 0; k <= k_max; ++k) {
    SmoothnessRow row;
    row.k = k;
    row.bound = theorem_bound(sys, k);
    row.observed = derivative_sup(phi, k);
    row.observed_lebesgue = derivative_sup(lebesgue, k);
    row.pass = row.observed <= row.bound;
    row.pass_lebesgue = row.observed_lebesgue <= row.bound;
    row.informational = k == 3;
    report.rows.push_back(row);
  }
  return report;
}

std::vector<ScalingRow> epsilon_scaling_study(const IfsSystem& sys_template, std::span<const double> eps_list,
                                              const Grid& grid, const QuadratureSpec& quad, double tol,
                                              int max_iter) {
  std::vector<ScalingRow> rows;
  for (double eps : eps_list) {
    ScalingRow row;
    row.epsilon = eps;
    IfsSystem sys = sys_template;
    sys.epsilon = eps;
    try {
      sys.noise = NoiseDensity::uniform(eps);
    } catch (const DomainError&) {
      rows.push_back(row);
      continue;
    }
    row.admissible = validate_system(sys).admissible() && eps > 0.0;
    if (!row.admissible) {
      rows.push_back(row);
      continue;
    }
    SolveOptions options;
    options.tol = tol;
    options.max_iter = max_iter;
    const DensityResult result = solve_density(sys, grid, quad, options);
    row.converged = result.converged;
    row.iterations = result.iterations;
    row.sup_phi = sup_abs(result.phi);
    row.eps_sup_phi = eps * row.sup_phi;
    row.l2_norm = std::sqrt(integrate_dm(pointwise_product(result.phi, result.phi)));
    row.sqrt_eps_l2 = std::sqrt(eps) * row.l2_norm;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rifs
