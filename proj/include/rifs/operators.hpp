#pragma once

#include "rifs/gauss_legendre.hpp"
#include "rifs/grid.hpp"
#include "rifs/system.hpp"

namespace rifs {

/// Discretization of the t-integrals, always over t-ranges already restricted
/// to where the integrand is defined. With cell_nodes == 0 each range is split
/// into t_panels equal panels with a t_nodes-point Gauss-Legendre rule on each.
/// The integrands are only piecewise smooth in t (phi and psi are
/// interpolated linearly), which leaves ~1e-8 mass drift per step on a
/// 4001-point grid; the cellwise rule removes it.
struct QuadratureSpec {
  int t_nodes = 32;
  int t_panels = 1;
  // When positive, t-ranges are instead cut wherever the interpolated argument
  // crosses a grid node, and each piece gets a cell_nodes-point rule. The
  // integrand is then smooth on every piece.
  int cell_nodes = 3;
};

/// (U psi)(x) = sum_i p_i int_0^eps psi(f_{i,t}(x)) h(t) dt at every node.
GridFunction apply_U(const IfsSystem& sys, const GridFunction& psi, const QuadratureSpec& quad = {});

/// Transfer operator
///   (L phi)(y) = sum_i (p_i / lambda) int_{T_i(y)} phi((y - a_i - b_i t) / lambda) h(t) dt
/// where T_i(y) = {t in [0, eps] : |y - a_i - b_i t| <= lambda} is computed in
/// closed form, so the indicator of f_{i,t}(I) never enters the quadrature.
GridFunction apply_L(const IfsSystem& sys, const GridFunction& phi, const QuadratureSpec& quad = {});

/// d/dx (U psi) from the boundary-term formula
///   sum_i (p_i lambda / b_i) [psi(f_{i,eps}(x)) h(eps) - psi(f_{i,0}(x)) h(0)]
///   - sum_i (p_i lambda / b_i) int_0^eps psi(f_{i,t}(x)) h'(t) dt,
/// which needs no derivative of psi.
GridFunction apply_U_derivative(const IfsSystem& sys, const GridFunction& psi, const QuadratureSpec& quad = {});

/// |int psi L(phi) dm - int U(psi) phi dm|.
double duality_residual(const IfsSystem& sys, const GridFunction& phi, const GridFunction& psi,
                        const QuadratureSpec& quad = {});

/// The closed-form set T_i(y) of noise values whose image covers y. Empty
/// when first >= second.
std::pair<double, double> covering_noise_interval(const IfsSystem& sys, std::size_t i, double y);

}  // namespace rifs
