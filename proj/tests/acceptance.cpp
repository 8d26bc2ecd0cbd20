// Runs every acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status is non-zero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "reference_systems.hpp"
#include "rifs/bounds.hpp"
#include "rifs/cones.hpp"
#include "rifs/operators.hpp"
#include "rifs/oracle.hpp"
#include "rifs/solver.hpp"

using namespace rifs;
using rifs::ref::reference_systems;
using rifs::ref::s1;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

constexpr std::size_t kN = 4001;
constexpr double kTol = 1e-10;

DensityResult solve(const IfsSystem& sys, std::optional<GridFunction> seed = std::nullopt, bool history = false) {
  SolveOptions options;
  options.tol = kTol;
  options.seed = std::move(seed);
  options.keep_history = history;
  return solve_density(sys, Grid(kN), QuadratureSpec{}, options);
}

void duality(Outcome& out) {
  const IfsSystem sys = s1();
  const Grid grid(kN);
  const QuadratureSpec gl32{32, 1, 0};
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const GridFunction phi = rifs::ref::random_polynomial(grid, rng);
    const GridFunction psi = rifs::ref::random_polynomial(grid, rng);
    worst = std::max(worst, duality_residual(sys, phi, psi, gl32));
  }
  out.detail << "max residual " << worst << " (<= 1e-6)";
  out.require(worst <= 1e-6, "residual");
}

void mass(Outcome& out) {
  SolveOptions options;
  options.tol = 1e-300;
  options.max_iter = 100;
  options.renormalize = false;
  const DensityResult r = solve_density(s1(), Grid(kN), QuadratureSpec{}, options);
  double worst = 0.0;
  for (double m : r.mass_trace) worst = std::max(worst, std::abs(m - 1.0));
  out.detail << r.mass_trace.size() << " steps, max |mass - 1| " << worst << " (<= 1e-8)";
  out.require(r.mass_trace.size() == 100, "100 steps");
  out.require(worst <= 1e-8, "drift");
}

void identity(Outcome& out) {
  double worst = 0.0;
  for (int i = 1; i <= 9; ++i) {
    const double lambda = 0.1 * i;
    worst = std::max(worst, std::abs(contraction_constants(lambda, 0.0, 1.0).lambda0 - lambda));
  }
  out.detail << "max |lambda0 - lambda| " << worst << " (<= 1e-12)";
  out.require(worst <= 1e-12, "identity");
}

void birkhoff(Outcome& out) {
  const Grid grid(1001);
  const double a = 0.5;
  const double gamma = 1.0;
  const auto rho = witness_family(grid, a, gamma, 7);
  double worst = -1e300;
  for (const auto& [name, sys] : reference_systems()) {
    const double lambda0 = contraction_constants(sys.lambda, a, gamma).lambda0;
    std::vector<GridFunction> urho;
    for (const GridFunction& r : rho) urho.push_back(apply_U(sys, r));
    int pairs = 0;
    for (std::size_t j = 0; j < rho.size() && pairs < 20; ++j) {
      for (std::size_t k = j + 1; k < rho.size() && pairs < 20; ++k, ++pairs) {
        const double before = theta_D(rho[j], rho[k], a, gamma);
        const double after = theta_D(urho[j], urho[k], a, gamma);
        const double excess = after - lambda0 * before;
        worst = std::max(worst, excess);
        if (excess > 1e-3) out.require(false, std::string(name) + " pair " + std::to_string(j) + "," + std::to_string(k));
      }
    }
  }
  out.detail << "max theta(U) - lambda0 theta " << worst << " (<= 1e-3), 20 pairs x 3 systems";
}

void holder(Outcome& out) {
  const Grid grid(1001);
  const double a = 0.5;
  double worst = -1e300;
  for (double gamma : {0.5, 1.0}) {
    const auto rho = witness_family(grid, a, gamma, 12);
    for (const auto& [name, sys] : reference_systems()) {
      const double limit = std::pow(sys.lambda, gamma) * a;
      for (const GridFunction& r : rho) {
        const double c = holder_log_constant(apply_U(sys, r), gamma).value;
        worst = std::max(worst, c - limit);
        if (c > limit + 1e-3) out.require(false, std::string(name) + " gamma " + std::to_string(gamma));
      }
    }
  }
  out.detail << "max H(U rho) - lambda^gamma a " << worst << " (<= 1e-3)";
}

void oracle(Outcome& out) {
  for (const auto& [name, sys] : reference_systems()) {
    const auto t0 = std::chrono::steady_clock::now();
    const DensityResult r = solve(sys);
    const double ks = ks_distance(empirical_cdf(sample_chain(sys, 1000000, 1000, 42)), density_cdf(r.phi));
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.detail << name << " KS " << ks << " (" << seconds << " s) ";
    out.require(ks <= 0.005, std::string(name) + " KS");
    out.require(seconds < 60.0, std::string(name) + " runtime");
  }
}

void theorem(Outcome& out) {
  const IfsSystem sys = s1();
  const double expected[] = {50.0, 6250.0, 1953125.0};
  for (int k = 0; k <= 2; ++k) {
    const double b = theorem_bound(sys, k);
    out.require(std::abs(b - expected[k]) <= 1e-9 * expected[k], "S1 bound k=" + std::to_string(k));
  }
  for (const auto& [name, s] : reference_systems()) {
    const BoundReport report = check_smoothness(s, solve(s).phi, 2);
    out.detail << name << ":";
    for (const SmoothnessRow& row : report.rows) {
      out.detail << " k" << row.k << " " << row.observed << "/" << row.bound;
      out.require(row.pass && row.pass_lebesgue, std::string(name) + " k=" + std::to_string(row.k));
    }
    out.detail << " ";
  }
}

void derivatives(Outcome& out) {
  const Grid grid(kN);
  const double pi = std::numbers::pi;
  const GridFunction psi = GridFunction::sample(grid, [&](double x) { return std::cos(pi * x); });
  const GridFunction dpsi = GridFunction::sample(grid, [&](double x) { return -pi * std::sin(pi * x); });
  double u_chain = 0.0;
  double u_formula = 0.0;
  for (const IfsSystem& sys : {rifs::ref::s1(), rifs::ref::s3()}) {
    const GridFunction fd = finite_diff(apply_U(sys, psi), 1);
    u_chain = std::max(u_chain, sup_abs_difference(fd, sys.lambda * apply_U(sys, dpsi)));
    u_formula = std::max(u_formula, sup_abs_difference(apply_U_derivative(sys, psi), fd));
  }
  const IfsSystem sys = s1();
  const GridFunction phi = GridFunction::sample(grid, [](double x) { return (1 - x * x) * (1 - x * x); });
  const GridFunction dphi = GridFunction::sample(grid, [](double x) { return -4 * x * (1 - x * x); });
  const double l_chain = sup_abs_difference(finite_diff(apply_L(sys, phi), 1), (1.0 / sys.lambda) * apply_L(sys, dphi));
  out.detail << "U chain " << u_chain << ", U formula " << u_formula << " (<= 1e-4); L chain " << l_chain
             << " (<= 1e-3)";
  out.require(u_chain <= 1e-4, "U chain rule");
  out.require(u_formula <= 1e-4, "U derivative formula");
  out.require(l_chain <= 1e-3, "L chain rule");
}

void scaling(Outcome& out) {
  const double eps[] = {0.2, 0.1, 0.05, 0.025};
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = epsilon_scaling_study(s1(), eps, Grid(kN), QuadratureSpec{}, kTol);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const ScalingRow& r : rows) {
    out.detail << "eps " << r.epsilon << ": " << r.eps_sup_phi << ", " << r.sqrt_eps_l2 << "; ";
    const std::string tag = "eps=" + std::to_string(r.epsilon);
    out.require(r.admissible && r.converged, tag + " solved");
    out.require(r.eps_sup_phi <= 5.0, tag + " sup");
    out.require(r.sqrt_eps_l2 <= std::sqrt(5.0), tag + " L2");
  }
  out.detail << "(" << seconds << " s)";
  out.require(seconds < 300.0, "runtime");
}

void invariance(Outcome& out) {
  std::mt19937_64 rng(7);
  const auto intervals = rifs::ref::random_intervals(50, rng);
  for (const auto& [name, sys] : reference_systems()) {
    const double r = invariance_residual(sys, solve(sys).phi, intervals);
    out.detail << name << " " << r << " ";
    out.require(r <= 1e-4, name);
  }
  out.detail << "(<= 1e-4)";
}

void weak_cauchy(Outcome& out) {
  const IfsSystem sys = s1();
  const Grid grid(kN);
  const GridFunction tilted = GridFunction::sample(grid, [](double x) { return 1.0 + 0.5 * x; });
  // From phi_0 = 1 the first moment vanishes identically on S1 (U x = 0.4 x),
  // so the weak integrals are followed from the tilted start.
  const DensityResult r = solve(sys, tilted, true);
  const double pi = std::numbers::pi;
  const std::pair<const char*, std::function<double(double)>> tests[] = {
      {"x", [](double x) { return x; }},
      {"x^2", [](double x) { return x * x; }},
      {"cos", [pi](double x) { return std::cos(pi * x); }}};
  for (const auto& [name, f] : tests) {
    const std::vector<double> mu = weak_integrals(r, GridFunction::sample(grid, f));
    // Differences below 1e-13 are rounding noise of the quadrature, not
    // iterates; the fit uses the last ten resolved ones.
    std::vector<double> diffs;
    for (std::size_t n = 0; n + 1 < mu.size(); ++n) {
      const double d = std::abs(mu[n + 1] - mu[n]);
      if (d < 1e-13) break;
      diffs.push_back(d);
    }
    const GeometricFit fit = fit_geometric(diffs, 10);
    out.detail << name << " rate " << fit.rate << " R2 " << fit.r_squared << " (" << diffs.size() << " resolved); ";
    out.require(fit.rate < 1.0 && fit.r_squared >= 0.95, std::string("mu ") + name);
  }

  const ConeParams cone{0.5, 1.0, 10.0 / 3.0};
  const WitnessSet witnesses(witness_family(grid, cone.a, cone.gamma, 8), cone.a, cone.gamma);
  GridFunction phi_a(grid, 1.0);
  GridFunction phi_b = tilted;
  double previous = std::numeric_limits<double>::infinity();
  bool monotone = true;
  int steps = 0;
  double theta = previous;
  for (; steps <= 60; ++steps) {
    theta = theta_E_lower_bound(phi_a, phi_b, witnesses, cone.b);
    if (!(theta < previous)) monotone = false;
    previous = theta;
    if (theta < 1e-6) break;
    phi_a = apply_L(sys, phi_a);
    phi_b = apply_L(sys, phi_b);
    phi_a *= 1.0 / integrate_dm(phi_a);
    phi_b *= 1.0 / integrate_dm(phi_b);
  }
  out.detail << "theta_E < 1e-6 after " << steps << " steps (" << theta << ")";
  out.require(monotone, "theta_E monotone");
  out.require(theta < 1e-6, "theta_E limit");
}

void uniqueness(Outcome& out) {
  const IfsSystem sys = s1();
  const Grid grid(kN);
  const DensityResult a = solve(sys);
  const DensityResult b = solve(sys, GridFunction::sample(grid, [](double x) { return 1.0 + 0.5 * x; }));
  const double d = sup_abs_difference(a.phi, b.phi);
  out.detail << "sup |phi_a - phi_b| " << d << " (<= " << 10 * kTol << ")";
  out.require(a.converged && b.converged, "converged");
  out.require(d <= 10 * kTol, "agreement");
}

}  // namespace

int main() {
  const std::pair<const char*, void (*)(Outcome&)> criteria[] = {
      {"duality", duality},         {"mass conservation", mass},   {"closed-form identity", identity},
      {"Birkhoff contraction", birkhoff}, {"Hoelder regularization", holder}, {"oracle agreement", oracle},
      {"derivative bounds", theorem}, {"derivative identities", derivatives}, {"noise scaling", scaling},
      {"invariance", invariance},    {"weak integrals", weak_cauchy}, {"uniqueness", uniqueness}};
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << " [exception: " << e.what() << "]";
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!out.pass) ++failures;
    std::printf("%s  %2d %-24s %6.1fs  %s\n", out.pass ? "PASS" : "FAIL", index, name, seconds, out.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
