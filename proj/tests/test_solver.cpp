#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "reference_systems.hpp"
#include "rifs/errors.hpp"
#include "rifs/solver.hpp"

using namespace rifs;

namespace {

// First two moments of the stationary law of X' = lambda X + A + T from the
// moment recursion, with E t and E t^2 of the noise supplied.
std::pair<double, double> stationary_moments(const IfsSystem& sys, double et, double et2) {
  double ea = 0.0;
  double eat2 = 0.0;
  for (const Branch& br : sys.branches) {
    ea += br.probability * (br.shift + br.coupling * et);
    eat2 += br.probability *
            (br.shift * br.shift + 2 * br.shift * br.coupling * et + br.coupling * br.coupling * et2);
  }
  const double l = sys.lambda;
  const double m1 = ea / (1 - l);
  const double m2 = (eat2 + 2 * l * m1 * ea) / (1 - l * l);
  return {m1, m2};
}

double moment(const GridFunction& phi, int k) {
  return integrate_dm(pointwise_product(phi, GridFunction::sample(phi.grid(), [k](double x) { return std::pow(x, k); })));
}

}  // namespace

TEST(SolveDensity, ReproducesStationaryMoments) {
  const double eps = 0.1;
  const double pi = std::numbers::pi;
  const std::pair<IfsSystem, std::pair<double, double>> cases[] = {
      {ref::s1(), {eps / 2, eps * eps / 3}},
      {ref::s2(), {eps / 2, eps * eps / 3}},
      {ref::s3(), {eps / 2, eps * eps * (1.0 / 3 - 1 / (2 * pi * pi))}}};
  for (const auto& [sys, noise] : cases) {
    const DensityResult r = solve_density(sys, Grid(4001), QuadratureSpec{});
    ASSERT_TRUE(r.converged);
    const auto [m1, m2] = stationary_moments(sys, noise.first, noise.second);
    EXPECT_NEAR(integrate_dm(r.phi), 1.0, 1e-12);
    EXPECT_NEAR(moment(r.phi, 1), m1, 1e-6);
    EXPECT_NEAR(moment(r.phi, 2), m2, 1e-6);
  }
}

TEST(SolveDensity, IsAFixedPointAndNonNegative) {
  const IfsSystem sys = ref::s3();
  const DensityResult r = solve_density(sys, Grid(2001), QuadratureSpec{});
  ASSERT_TRUE(r.converged);
  EXPECT_LE(r.residual_trace.back(), 1e-10);
  EXPECT_EQ(static_cast<int>(r.residual_trace.size()), r.iterations);
  for (double v : r.phi.values()) EXPECT_GE(v, 0.0);
  EXPECT_LT(sup_abs_difference(apply_L(sys, r.phi), r.phi), 1e-9);
  EXPECT_GT(r.fitted_rate, 0.0);
  EXPECT_LT(r.fitted_rate, 1.0);
}

TEST(SolveDensity, AnySeedReachesTheSameDensity) {
  const IfsSystem sys = ref::s1();
  const Grid g(1001);
  const DensityResult a = solve_density(sys, g, QuadratureSpec{});
  SolveOptions other;
  other.seed = GridFunction::sample(g, [](double x) { return std::exp(-4 * (x - 0.5) * (x - 0.5)); });
  const DensityResult b = solve_density(sys, g, QuadratureSpec{}, other);
  EXPECT_LT(sup_abs_difference(a.phi, b.phi), 1e-9);
}

TEST(SolveDensity, ReportsNonConvergence) {
  SolveOptions o;
  o.max_iter = 3;
  const DensityResult r = solve_density(ref::s1(), Grid(201), QuadratureSpec{}, o);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 3);
  EXPECT_TRUE(std::isnan(r.fitted_rate));
}

TEST(SolveDensity, UnnormalizedIteratesConserveMass) {
  SolveOptions o;
  o.renormalize = false;
  o.max_iter = 30;
  o.tol = 1e-300;
  const DensityResult r = solve_density(ref::s3(), Grid(1001), QuadratureSpec{}, o);
  ASSERT_EQ(r.mass_trace.size(), 30u);
  for (double m : r.mass_trace) EXPECT_NEAR(m, 1.0, 1e-12);
}

TEST(SolveDensity, RejectsBadOptions) {
  SolveOptions o;
  o.tol = 0.0;
  EXPECT_THROW(solve_density(ref::s1(), Grid(101), QuadratureSpec{}, o), ConfigurationError);
  o = {};
  o.seed = GridFunction(Grid(103), 1.0);
  EXPECT_THROW(solve_density(ref::s1(), Grid(101), QuadratureSpec{}, o), ConfigurationError);
  o = {};
  o.seed = GridFunction(Grid(101), 0.0);
  EXPECT_THROW(solve_density(ref::s1(), Grid(101), QuadratureSpec{}, o), DomainError);
}

TEST(WeakIntegrals, FollowHistory) {
  SolveOptions o;
  o.keep_history = true;
  const Grid g(1001);
  o.seed = GridFunction::sample(g, [](double x) { return 1.0 + 0.5 * x; });
  const DensityResult r = solve_density(ref::s1(), g, QuadratureSpec{}, o);
  ASSERT_EQ(r.history.size(), static_cast<std::size_t>(r.iterations) + 1);
  const std::vector<double> mu = weak_integrals(r, GridFunction::sample(g, [](double x) { return x; }));
  // U x = 0.4 x on S1, so mu_n(x) = 0.4^n mu_0(x) with mu_0(x) = 1/6.
  for (std::size_t n = 0; n < 8; ++n) EXPECT_NEAR(mu[n], std::pow(0.4, n) / 6.0, 1e-6);
  EXPECT_THROW(weak_integrals(solve_density(ref::s1(), g, QuadratureSpec{}), r.phi), ConfigurationError);
}

TEST(GeometricFit, ExactOnGeometricSequence) {
  std::vector<double> v;
  for (int n = 0; n < 20; ++n) v.push_back(3.0 * std::pow(0.37, n));
  const GeometricFit f = fit_geometric(v);
  EXPECT_NEAR(f.rate, 0.37, 1e-12);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
  EXPECT_NEAR(convergence_rate(v), 0.37, 1e-12);
  EXPECT_THROW(fit_geometric(std::vector<double>{1, 2, 3}), ConfigurationError);
  EXPECT_THROW(fit_geometric(std::vector<double>{1, 2, 3, 0, 5}), DomainError);
}

TEST(Invariance, SolvedDensityIsInvariantAndUniformIsNot) {
  const IfsSystem sys = ref::s1();
  const Grid g(4001);
  const DensityResult r = solve_density(sys, g, QuadratureSpec{});
  std::mt19937_64 rng(3);
  const auto intervals = ref::random_intervals(50, rng);
  EXPECT_LT(invariance_residual(sys, r.phi, intervals), 1e-4);
  EXPECT_GT(invariance_residual(sys, GridFunction(g, 1.0), intervals), 1e-2);
  const std::vector<std::pair<double, double>> whole{{-1.0, 1.0}};
  EXPECT_NEAR(invariance_residual(sys, r.phi, whole), 0.0, 1e-10);
  const std::vector<std::pair<double, double>> bad{{0.5, 0.2}};
  EXPECT_THROW(invariance_residual(sys, r.phi, bad), DomainError);
}
