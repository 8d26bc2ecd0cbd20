// Command-line front end: validate, solve, sample, verify, metrics, bounds, scaling.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rifs/bounds.hpp"
#include "rifs/cones.hpp"
#include "rifs/config.hpp"
#include "rifs/errors.hpp"
#include "rifs/operators.hpp"
#include "rifs/oracle.hpp"
#include "rifs/solver.hpp"
#include "rifs/system_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum ExitCode : int { kOk = 0, kInternal = 1, kInvalidConfig = 2, kVerificationFailed = 3 };

constexpr double kDualityThreshold = 1e-6;
constexpr double kInvarianceThreshold = 1e-4;
constexpr double kKsThreshold = 5e-3;

struct Flags {
  std::string config;
  std::string out = ".";
  std::string density;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> grid;
  std::optional<double> tol;
  std::size_t count = 1000000;
  std::size_t burn_in = 1000;
  std::string eps_list = "0.2,0.1,0.05,0.025";
};

void write_atomically(const fs::path& path, const std::string& contents) {
  fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string csv_of(const rifs::GridFunction& f, std::string_view column) {
  std::ostringstream out;
  rifs::write_csv(out, f, column);
  return out.str();
}

json null_if_nan(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

rifs::RunConfig load(const Flags& flags) {
  rifs::RunConfig cfg = rifs::load_run_config(flags.config);
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.grid) cfg.grid_points = *flags.grid;
  if (flags.tol) cfg.tol = *flags.tol;
  rifs::Grid check(cfg.grid_points);  // rejects even / tiny grids
  (void)check;
  rifs::require_admissible(cfg.system);
  return cfg;
}

rifs::QuadratureSpec quadrature(const rifs::RunConfig& cfg) { return {cfg.t_nodes, 1, cfg.cell_nodes}; }

rifs::DensityResult solve(const rifs::RunConfig& cfg) {
  rifs::SolveOptions options;
  options.tol = cfg.tol;
  options.max_iter = cfg.max_iter;
  return rifs::solve_density(cfg.system, rifs::Grid(cfg.grid_points), quadrature(cfg),
                             options);
}

rifs::GridFunction read_density(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rifs::ConfigurationError("cannot read density CSV '" + path + "'");
  return rifs::read_csv(in);
}

rifs::ConeParams cone_for(const rifs::RunConfig& cfg) {
  if (cfg.cone) return *cfg.cone;
  rifs::ConeParams cone;
  cone.b = 2.0 * rifs::contraction_constants(cfg.system.lambda, cone.a, cone.gamma).b_min;
  return cone;
}

int cmd_validate(const Flags& flags) {
  const rifs::RunConfig cfg = rifs::load_run_config(flags.config);
  const rifs::ValidationReport report = rifs::validate_system(cfg.system);
  json violations = json::array();
  for (const rifs::Violation& v : report.violations) {
    json entry{{"rule", v.rule}, {"message", v.message}};
    entry["branch"] = v.branch ? json(*v.branch) : json(nullptr);
    entry["endpoint"] = v.endpoint ? json(*v.endpoint) : json(nullptr);
    violations.push_back(entry);
  }
  std::cout << dump({{"admissible", report.admissible()}, {"violations", violations}});
  if (!report.admissible()) {
    std::cerr << "invalid system: " << report.summary() << "\n";
    return kInvalidConfig;
  }
  return kOk;
}

int cmd_solve(const Flags& flags) {
  const rifs::RunConfig cfg = load(flags);
  const rifs::DensityResult result = solve(cfg);
  const fs::path out(flags.out);
  write_atomically(out / "density.csv", csv_of(result.phi, "phi"));
  json diag{{"iterations", result.iterations},
            {"converged", result.converged},
            {"final_residual", result.residual_trace.empty() ? 0.0 : result.residual_trace.back()},
            {"fitted_rate", null_if_nan(result.fitted_rate)},
            {"masses", result.mass_trace},
            {"residuals", result.residual_trace}};
  write_atomically(out / "diagnostics.json", dump(diag));
  if (!result.converged) {
    std::cerr << "solver did not converge within " << cfg.max_iter << " iterations\n";
    return kVerificationFailed;
  }
  return kOk;
}

int cmd_sample(const Flags& flags) {
  const rifs::RunConfig cfg = load(flags);
  const rifs::SampleSet s = rifs::sample_chain(cfg.system, flags.count, flags.burn_in, cfg.seed);
  std::string text;
  text.reserve(s.samples.size() * 24);
  char buf[32];
  for (double x : s.samples) {
    std::snprintf(buf, sizeof buf, "%.17g\n", x);
    text += buf;
  }
  write_atomically(fs::path(flags.out) / "samples.csv", text);
  return kOk;
}

// Deterministic random polynomials of degree <= 5 with coefficients in [-1, 1].
rifs::GridFunction random_polynomial(const rifs::Grid& grid, std::mt19937_64& rng) {
  std::vector<double> c(6);
  for (double& v : c) v = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
  return rifs::GridFunction::sample(grid, [&](double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  });
}

int cmd_verify(const Flags& flags) {
  const rifs::RunConfig cfg = load(flags);
  const std::string density_path = flags.density.empty() ? (fs::path(flags.out) / "density.csv").string() : flags.density;
  const rifs::GridFunction phi = read_density(density_path);
  const rifs::QuadratureSpec quad = quadrature(cfg);

  std::mt19937_64 rng(cfg.seed);
  double duality = 0.0;
  for (int i = 0; i < 10; ++i) {
    const rifs::GridFunction f = random_polynomial(phi.grid(), rng);
    const rifs::GridFunction g = random_polynomial(phi.grid(), rng);
    duality = std::max(duality, rifs::duality_residual(cfg.system, f, g, quad));
  }

  std::vector<std::pair<double, double>> intervals;
  for (int i = 0; i < 50; ++i) {
    double c = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    double d = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    if (c > d) std::swap(c, d);
    intervals.emplace_back(c, d);
  }
  const double invariance = rifs::invariance_residual(cfg.system, phi, intervals, quad);

  const rifs::SampleSet samples = rifs::sample_chain(cfg.system, flags.count, flags.burn_in, cfg.seed);
  const double ks = rifs::ks_distance(rifs::empirical_cdf(samples), rifs::density_cdf(phi));

  const bool ok_duality = duality <= kDualityThreshold;
  const bool ok_invariance = invariance <= kInvarianceThreshold;
  const bool ok_ks = ks <= kKsThreshold;
  json report{{"duality_max_residual", duality},
              {"invariance_max_residual", invariance},
              {"ks", ks},
              {"sample_count", flags.count},
              {"burn_in", flags.burn_in},
              {"seed", cfg.seed},
              {"checks",
               {{"duality", {{"threshold", kDualityThreshold}, {"pass", ok_duality}}},
                {"invariance", {{"threshold", kInvarianceThreshold}, {"pass", ok_invariance}}},
                {"ks", {{"threshold", kKsThreshold}, {"pass", ok_ks}}}}},
              {"passed", ok_duality && ok_invariance && ok_ks}};
  write_atomically(fs::path(flags.out) / "verify.json", dump(report));
  return ok_duality && ok_invariance && ok_ks ? kOk : kVerificationFailed;
}

int cmd_metrics(const Flags& flags) {
  const rifs::RunConfig cfg = load(flags);
  const rifs::ConeParams cone = cone_for(cfg);
  const rifs::ConeConstants constants = rifs::contraction_constants(cfg.system.lambda, cone.a, cone.gamma);
  const rifs::EConeDiameter e = rifs::e_cone_diameter(cfg.system.lambda, cone.a, cone.gamma, cone.b);

  const rifs::Grid grid(cfg.grid_points);
  const rifs::QuadratureSpec quad = quadrature(cfg);
  const rifs::WitnessSet witnesses(rifs::witness_family(grid, cone.a, cone.gamma, 8), cone.a, cone.gamma);
  rifs::GridFunction phi_a(grid, 1.0);
  rifs::GridFunction phi_b = rifs::GridFunction::sample(grid, [](double x) { return 1.0 + 0.5 * x; });
  std::vector<double> thetas;
  for (int n = 0; n < 60; ++n) {
    const double theta = rifs::theta_E_lower_bound(phi_a, phi_b, witnesses, cone.b);
    thetas.push_back(theta);
    if (theta < 1e-12) break;
    phi_a = rifs::apply_L(cfg.system, phi_a, quad);
    phi_b = rifs::apply_L(cfg.system, phi_b, quad);
    phi_a *= 1.0 / rifs::integrate_dm(phi_a);
    phi_b *= 1.0 / rifs::integrate_dm(phi_b);
  }
  std::vector<double> ratios;
  for (std::size_t n = 1; n < thetas.size(); ++n) ratios.push_back(thetas[n] / thetas[n - 1]);

  json report{{"cone", {{"a", cone.a}, {"gamma", cone.gamma}, {"b", cone.b}}},
              {"lambda0", constants.lambda0},
              {"diameter_D", constants.diameter_D},
              {"b_min", constants.b_min},
              {"diameter_LE", e.diameter_LE},
              {"lambda1", e.lambda1},
              {"certified", "lambda0 and lambda1 are closed-form certificates"},
              {"empirical", "witness lower bounds on theta_E; measurements, not certificates"},
              {"theta_E_lower_bounds", thetas},
              {"empirical_ratios", ratios}};
  write_atomically(fs::path(flags.out) / "metrics.json", dump(report));
  return kOk;
}

int cmd_bounds(const Flags& flags) {
  const rifs::RunConfig cfg = load(flags);
  const rifs::GridFunction phi = flags.density.empty() ? solve(cfg).phi : read_density(flags.density);
  const rifs::BoundReport report = rifs::check_smoothness(cfg.system, phi, 3);
  json rows = json::array();
  for (const rifs::SmoothnessRow& r : report.rows) {
    rows.push_back({{"k", r.k},
                    {"bound", r.bound},
                    {"observed", r.observed},
                    {"observed_lebesgue", r.observed_lebesgue},
                    {"pass", r.pass},
                    {"pass_lebesgue", r.pass_lebesgue},
                    {"informational", r.informational}});
  }
  write_atomically(fs::path(flags.out) / "bounds.json", dump({{"rows", rows}, {"passed", report.passed()}}));
  return report.passed() ? kOk : kVerificationFailed;
}

std::vector<double> parse_eps_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw rifs::ConfigurationError("--eps-list entry '" + item + "' is not a number");
    }
  }
  if (out.empty()) throw rifs::ConfigurationError("--eps-list is empty");
  return out;
}

int cmd_scaling(const Flags& flags) {
  const rifs::RunConfig cfg = load(flags);
  const std::vector<double> eps = parse_eps_list(flags.eps_list);
  const auto rows = rifs::epsilon_scaling_study(cfg.system, eps, rifs::Grid(cfg.grid_points),
                                                quadrature(cfg), cfg.tol, cfg.max_iter);
  // Uniform noise: the k = 0 bound reads sup phi <= c / eps with this c.
  double weight = 0.0;
  for (const rifs::Branch& br : cfg.system.branches) weight += br.probability / std::abs(br.coupling);
  const double c = 2.0 * weight / cfg.system.lambda;

  bool ok = true;
  json out_rows = json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "epsilon,sup_phi,eps_sup_phi,l2_norm,sqrt_eps_l2,admissible,converged\n";
  for (const rifs::ScalingRow& r : rows) {
    const bool row_ok = !r.admissible || (r.converged && r.eps_sup_phi <= c && r.sqrt_eps_l2 <= std::sqrt(c));
    ok = ok && row_ok;
    out_rows.push_back({{"epsilon", r.epsilon},
                        {"admissible", r.admissible},
                        {"converged", r.converged},
                        {"iterations", r.iterations},
                        {"sup_phi", r.sup_phi},
                        {"eps_sup_phi", r.eps_sup_phi},
                        {"l2_norm", r.l2_norm},
                        {"sqrt_eps_l2", r.sqrt_eps_l2},
                        {"pass", row_ok}});
    csv << r.epsilon << ',' << r.sup_phi << ',' << r.eps_sup_phi << ',' << r.l2_norm << ',' << r.sqrt_eps_l2 << ','
        << (r.admissible ? 1 : 0) << ',' << (r.converged ? 1 : 0) << '\n';
  }
  const fs::path out(flags.out);
  write_atomically(out / "scaling.json",
                   dump({{"eps_sup_bound", c}, {"sqrt_eps_l2_bound", std::sqrt(c)}, {"rows", out_rows}, {"passed", ok}}));
  write_atomically(out / "scaling.csv", csv.str());
  return ok ? kOk : kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant densities of randomly perturbed affine iterated function systems"};
  app.require_subcommand(1);
  Flags flags;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config, "Run configuration (JSON)")->required();
    sub->add_option("--out", flags.out, "Output directory");
    sub->add_option("--seed", flags.seed, "Random seed (overrides config)");
    sub->add_option("--grid", flags.grid, "Grid points (odd)");
    sub->add_option("--tol", flags.tol, "Solver tolerance");
  };

  auto* validate = app.add_subcommand("validate", "Report whether the system is admissible");
  validate->add_option("--config", flags.config, "Run configuration (JSON)")->required();
  auto* solve_cmd = app.add_subcommand("solve", "Solve the invariant density");
  add_common(solve_cmd);
  auto* sample = app.add_subcommand("sample", "Sample the random IFS chain");
  add_common(sample);
  sample->add_option("--count", flags.count, "Number of samples kept");
  sample->add_option("--burn-in", flags.burn_in, "Discarded initial states");
  auto* verify = app.add_subcommand("verify", "Duality, invariance and KS checks of a solved density");
  add_common(verify);
  verify->add_option("--density", flags.density, "Density CSV (default OUT/density.csv)");
  verify->add_option("--count", flags.count, "Number of chain samples");
  verify->add_option("--burn-in", flags.burn_in, "Discarded initial states");
  auto* metrics = app.add_subcommand("metrics", "Cone contraction constants and empirical ratios");
  add_common(metrics);
  auto* bounds = app.add_subcommand("bounds", "Derivative bounds against finite differences");
  add_common(bounds);
  bounds->add_option("--density", flags.density, "Density CSV (solved when omitted)");
  auto* scaling = app.add_subcommand("scaling", "Noise-range scaling study with uniform noise");
  add_common(scaling);
  scaling->add_option("--eps-list", flags.eps_list, "Comma-separated noise ranges");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidConfig;
  }

  try {
    if (*validate) return cmd_validate(flags);
    if (*solve_cmd) return cmd_solve(flags);
    if (*sample) return cmd_sample(flags);
    if (*verify) return cmd_verify(flags);
    if (*metrics) return cmd_metrics(flags);
    if (*bounds) return cmd_bounds(flags);
    if (*scaling) return cmd_scaling(flags);
  } catch (const rifs::ConfigurationError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const rifs::PreconditionError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
