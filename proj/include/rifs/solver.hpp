#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rifs/grid.hpp"
#include "rifs/operators.hpp"
#include "rifs/system.hpp"

namespace rifs {

struct SolveOptions {
  double tol = 1e-10;
  int max_iter = 500;
  // Rescale each iterate to unit mass (the pre-rescaling mass is logged).
  bool renormalize = true;
  // Keep every iterate phi_0 .. phi_n in DensityResult::history.
  bool keep_history = false;
  // Starting density; the constant 1 when empty. Rescaled to unit mass.
  std::optional<GridFunction> seed;
};

struct DensityResult {
  GridFunction phi;
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_trace;  // sup|phi_{n+1} - phi_n|
  std::vector<double> mass_trace;      // int L(phi_n) dm before rescaling
  double fitted_rate = 0.0;            // NaN when fewer than five residuals
  std::vector<GridFunction> history;
};

/// Iterates phi_{n+1} = L phi_n until the sup-norm step falls below tol.
/// Non-convergence is reported through DensityResult::converged.
DensityResult solve_density(const IfsSystem& sys, const Grid& grid, const QuadratureSpec& quad,
                            const SolveOptions& options = {});

/// mu_n(psi) = int psi phi_n dm for every stored iterate.
std::vector<double> weak_integrals(const DensityResult& result, const GridFunction& psi);

struct GeometricFit {
  double rate = 0.0;
  double r_squared = 0.0;
};

/// Least-squares fit of log(values) against the index over the last `tail`
/// entries. Needs >= 5 positive values.
GeometricFit fit_geometric(std::span<const double> values, std::size_t tail = 10);

/// Geometric rate of the last ten residuals.
double convergence_rate(std::span<const double> residuals);

/// max over E = (c, d) of |mu(E) - sum_i p_i int mu(f_{i,t}^{-1}(E)) h(t) dt|,
/// with mu the measure of the piecewise-linear density phi against m.
double invariance_residual(const IfsSystem& sys, const GridFunction& phi,
                           std::span<const std::pair<double, double>> intervals, const QuadratureSpec& quad = {});

}  // namespace rifs
