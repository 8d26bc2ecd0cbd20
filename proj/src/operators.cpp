#include "rifs/operators.hpp"

#include <algorithm>
#include <cmath>

#include "rifs/errors.hpp"

namespace rifs {

namespace {

void check_quadrature(const QuadratureSpec& quad) {
  if (quad.t_nodes < 2) throw ConfigurationError("QuadratureSpec.t_nodes must be >= 2");
  if (quad.t_panels < 1) throw ConfigurationError("QuadratureSpec.t_panels must be >= 1");
  if (quad.cell_nodes < 0) throw ConfigurationError("QuadratureSpec.cell_nodes must be >= 0");
}

// Piecewise-linear interpolation at a point already known to be in [-1, 1]
// up to rounding.
inline double interpolate(std::span<const double> v, double inv_dx, double x) {
  const double last = static_cast<double>(v.size() - 1);
  const double u = std::clamp((x + 1.0) * inv_dx, 0.0, last);
  const std::size_t j = std::min(static_cast<std::size_t>(u), v.size() - 2);
  const double w = u - static_cast<double>(j);
  return (1.0 - w) * v[j] + w * v[j + 1];
}

// Fixed nodes t_q and weights w_q for a t-range, panels included.
struct TRule {
  std::vector<double> t;
  std::vector<double> w;
};

TRule make_rule(const GaussLegendre& gl, int panels, double lo, double hi) {
  TRule rule;
  rule.t.reserve(gl.size() * panels);
  rule.w.reserve(gl.size() * panels);
  const double width = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * width;
    const double mid = a + 0.5 * width;
    const double half = 0.5 * width;
    for (std::size_t q = 0; q < gl.size(); ++q) {
      rule.t.push_back(mid + half * gl.nodes()[q]);
      rule.w.push_back(half * gl.weights()[q]);
    }
  }
  return rule;
}

// int_lo^hi weight(t) v(c0 + c1 t) dt for the piecewise-linear v. The range is
// cut wherever the argument crosses a grid node, so each piece sees a linear
// integrand and the per-piece rule only has to resolve the weight.
template <typename Weight>
double integrate_cellwise(std::span<const double> v, double inv_dx, double c0, double c1, double lo, double hi,
                          const GaussLegendre& rule, Weight&& weight) {
  if (!(hi > lo)) return 0.0;
  const double last = static_cast<double>(v.size() - 1);
  const double u_lo = (c0 + c1 * lo + 1.0) * inv_dx;
  const double u_hi = (c0 + c1 * hi + 1.0) * inv_dx;
  const double u_min = std::clamp(std::min(u_lo, u_hi), 0.0, last);
  const double u_max = std::clamp(std::max(u_lo, u_hi), 0.0, last);
  // Node crossings strictly inside the argument range, in increasing t.
  const double dx = 1.0 / inv_dx;
  auto t_at = [&](double u) { return (u * dx - 1.0 - c0) / c1; };
  const auto k_first = static_cast<long>(std::floor(u_min)) + 1;
  const auto k_last = static_cast<long>(std::ceil(u_max)) - 1;
  double acc = 0.0;
  double a = lo;
  auto piece = [&](double b) {
    if (b > a) acc += rule.integrate(a, b, [&](double t) { return weight(t) * interpolate(v, inv_dx, c0 + c1 * t); });
    a = b;
  };
  if (c1 > 0.0) {
    for (long k = k_first; k <= k_last; ++k) piece(std::min(t_at(static_cast<double>(k)), hi));
  } else {
    for (long k = k_last; k >= k_first; --k) piece(std::min(t_at(static_cast<double>(k)), hi));
  }
  piece(hi);
  return acc;
}

}  // namespace

std::pair<double, double> covering_noise_interval(const IfsSystem& sys, std::size_t i, double y) {
  const Branch& br = sys.branches[i];
  double lo = (y - br.shift - sys.lambda) / br.coupling;
  double hi = (y - br.shift + sys.lambda) / br.coupling;
  if (br.coupling < 0.0) std::swap(lo, hi);
  return {std::max(lo, 0.0), std::min(hi, sys.epsilon)};
}

GridFunction apply_U(const IfsSystem& sys, const GridFunction& psi, const QuadratureSpec& quad) {
  require_smoothing(sys, "apply_U");
  check_quadrature(quad);
  const GaussLegendre gl(quad.cell_nodes > 0 ? quad.cell_nodes : quad.t_nodes);
  const TRule rule = make_rule(gl, quad.t_panels, 0.0, sys.epsilon);
  std::vector<double> weight(rule.t.size());
  for (std::size_t q = 0; q < rule.t.size(); ++q) weight[q] = rule.w[q] * sys.noise.pdf(rule.t[q]);
  auto h = [&](double t) { return sys.noise.pdf(t); };

  const Grid& grid = psi.grid();
  const auto v = psi.values();
  const double inv_dx = 1.0 / grid.spacing();
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.node(j);
    double total = 0.0;
    for (const Branch& br : sys.branches) {
      const double base = sys.lambda * x + br.shift;
      double acc = 0.0;
      if (quad.cell_nodes > 0) {
        acc = integrate_cellwise(v, inv_dx, base, br.coupling, 0.0, sys.epsilon, gl, h);
      } else {
        for (std::size_t q = 0; q < rule.t.size(); ++q) {
          acc += weight[q] * interpolate(v, inv_dx, base + br.coupling * rule.t[q]);
        }
      }
      total += br.probability * acc;
    }
    out[j] = total;
  }
  return GridFunction(grid, std::move(out));
}

GridFunction apply_L(const IfsSystem& sys, const GridFunction& phi, const QuadratureSpec& quad) {
  require_smoothing(sys, "apply_L");
  check_quadrature(quad);
  const GaussLegendre gl(quad.cell_nodes > 0 ? quad.cell_nodes : quad.t_nodes);
  auto h = [&](double t) { return sys.noise.pdf(t); };

  const Grid& grid = phi.grid();
  const auto v = phi.values();
  const double inv_dx = 1.0 / grid.spacing();
  const double inv_lambda = 1.0 / sys.lambda;
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double y = grid.node(j);
    double total = 0.0;
    for (std::size_t i = 0; i < sys.branches.size(); ++i) {
      const auto [lo, hi] = covering_noise_interval(sys, i, y);
      if (!(hi > lo)) continue;
      const Branch& br = sys.branches[i];
      double acc = 0.0;
      if (quad.cell_nodes > 0) {
        acc = integrate_cellwise(v, inv_dx, (y - br.shift) * inv_lambda, -br.coupling * inv_lambda, lo, hi, gl, h);
      } else {
        const double width = (hi - lo) / quad.t_panels;
        for (int p = 0; p < quad.t_panels; ++p) {
          const double mid = lo + (p + 0.5) * width;
          const double half = 0.5 * width;
          for (std::size_t q = 0; q < gl.size(); ++q) {
            const double t = mid + half * gl.nodes()[q];
            const double x = (y - br.shift - br.coupling * t) * inv_lambda;
            acc += half * gl.weights()[q] * sys.noise.pdf(t) * interpolate(v, inv_dx, x);
          }
        }
      }
      total += br.probability * inv_lambda * acc;
    }
    out[j] = total;
  }
  return GridFunction(grid, std::move(out));
}

GridFunction apply_U_derivative(const IfsSystem& sys, const GridFunction& psi, const QuadratureSpec& quad) {
  require_smoothing(sys, "apply_U_derivative");
  check_quadrature(quad);
  const GaussLegendre gl(quad.cell_nodes > 0 ? quad.cell_nodes : quad.t_nodes);
  const TRule rule = make_rule(gl, quad.t_panels, 0.0, sys.epsilon);
  std::vector<double> weight(rule.t.size());
  for (std::size_t q = 0; q < rule.t.size(); ++q) weight[q] = rule.w[q] * sys.noise.derivative(rule.t[q]);
  auto dh = [&](double t) { return sys.noise.derivative(t); };
  const double h0 = sys.noise.at_zero();
  const double heps = sys.noise.at_epsilon();

  const Grid& grid = psi.grid();
  const auto v = psi.values();
  const double inv_dx = 1.0 / grid.spacing();
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.node(j);
    double total = 0.0;
    for (const Branch& br : sys.branches) {
      const double base = sys.lambda * x + br.shift;
      const double boundary = interpolate(v, inv_dx, base + br.coupling * sys.epsilon) * heps -
                              interpolate(v, inv_dx, base) * h0;
      double interior = 0.0;
      if (quad.cell_nodes > 0) {
        interior = integrate_cellwise(v, inv_dx, base, br.coupling, 0.0, sys.epsilon, gl, dh);
      } else {
        for (std::size_t q = 0; q < rule.t.size(); ++q) {
          interior += weight[q] * interpolate(v, inv_dx, base + br.coupling * rule.t[q]);
        }
      }
      total += br.probability * sys.lambda / br.coupling * (boundary - interior);
    }
    out[j] = total;
  }
  return GridFunction(grid, std::move(out));
}

double duality_residual(const IfsSystem& sys, const GridFunction& phi, const GridFunction& psi,
                        const QuadratureSpec& quad) {
  const double lhs = integrate_dm(pointwise_product(psi, apply_L(sys, phi, quad)));
  const double rhs = integrate_dm(pointwise_product(apply_U(sys, psi, quad), phi));
  return std::abs(lhs - rhs);
}

}  // namespace rifs
