#pragma once

#include <span>
#include <vector>

#include "rifs/grid.hpp"
#include "rifs/operators.hpp"
#include "rifs/system.hpp"

namespace rifs {

/// lambda^{-(k+1)(k+2)/2} (sum_i p_i / |b_i| (h(eps) + h(0) + eps sup|h'|))^{k+1}.
double theorem_bound(const IfsSystem& sys, int k);

struct SmoothnessRow {
  int k = 0;
  double bound = 0.0;
  double observed = 0.0;           // sup |phi^{(k)}| for phi normalized against m
  double observed_lebesgue = 0.0;  // same for phi / 2, normalized against dx
  bool pass = false;
  bool pass_lebesgue = false;
  bool informational = false;  // k = 3: reported, not part of the verdict
};

struct ScalingRow {
  double epsilon = 0.0;
  bool admissible = false;
  bool converged = false;
  int iterations = 0;
  double sup_phi = 0.0;
  double eps_sup_phi = 0.0;
  double l2_norm = 0.0;  // (int phi^2 dm)^{1/2}
  double sqrt_eps_l2 = 0.0;
};

struct BoundReport {
  std::vector<SmoothnessRow> rows;
  std::vector<ScalingRow> scaling;

  // Every non-informational row passes under both normalizations.
  bool passed() const;
};

/// Compares finite-difference derivatives of phi (orders 0..k_max, k_max <= 3)
/// with theorem_bound. For k >= 2 the k outermost nodes on each side, where
/// one-sided stencils dominate, are excluded.
BoundReport check_smoothness(const IfsSystem& sys, const GridFunction& phi, int k_max = 2);

/// Solves the invariant density of sys_template with uniform noise on [0, eps]
/// for each eps. Inadmissible rows are flagged and skipped.
std::vector<ScalingRow> epsilon_scaling_study(const IfsSystem& sys_template, std::span<const double> eps_list,
                                              const Grid& grid, const QuadratureSpec& quad, double tol,
                                              int max_iter = 500);

}  // namespace rifs
