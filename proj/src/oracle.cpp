#include "rifs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rifs/errors.hpp"

namespace rifs {

namespace {

// 53 random bits -> [0, 1). Independent of the standard library's
// distribution implementations.
inline double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

SampleSet sample_chain(const IfsSystem& sys, std::size_t count, std::size_t burn_in, std::uint64_t seed) {
  require_admissible(sys);
  std::vector<double> cumulative;
  double acc = 0.0;
  for (const Branch& br : sys.branches) {
    acc += br.probability;
    cumulative.push_back(acc);
  }

  std::mt19937_64 rng(seed);
  SampleSet out{{}, seed, burn_in, count};
  out.samples.reserve(count);
  double x = 0.0;
  const std::size_t total = burn_in + count;
  for (std::size_t step = 0; step < total; ++step) {
    const double uk = unit_draw(rng) * acc;
    const std::size_t k =
        std::min<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), uk) - cumulative.begin(),
                              sys.branches.size() - 1);
    const double t = sys.noise.quantile(unit_draw(rng));
    const Branch& br = sys.branches[k];
    x = std::clamp(sys.lambda * x + br.shift + br.coupling * t, -1.0, 1.0);
    if (step >= burn_in) out.samples.push_back(x);
  }
  return out;
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.empty()) throw ConfigurationError("empirical CDF of an empty sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::left_limit(double x) const {
  const auto it = std::lower_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

EmpiricalCdf empirical_cdf(const SampleSet& s) { return EmpiricalCdf(s.samples); }

GridFunction density_cdf(const GridFunction& phi) {
  for (double v : phi.values()) {
    if (v < -1e-9) throw DomainError("density_cdf: density is negative");
  }
  const std::size_t n = phi.size();
  const double h = phi.grid().spacing();
  std::vector<double> f(n, 0.0);
  for (std::size_t j = 2; j < n; j += 2) {
    const double panel = h / 3.0 * (phi[j - 2] + 4.0 * phi[j - 1] + phi[j]);
    f[j] = f[j - 2] + 0.5 * panel;
    // First half of the same panel.
    f[j - 1] = f[j - 2] + 0.5 * h / 12.0 * (5.0 * phi[j - 2] + 8.0 * phi[j - 1] - phi[j]);
  }
  return GridFunction(phi.grid(), std::move(f));
}

double ks_distance(const EmpiricalCdf& f1, const GridFunction& f2) {
  double worst = 0.0;
  const auto& s = f1.sorted();
  const double n = static_cast<double>(s.size());
  // Runs of equal samples: the step jumps from i/n to (i + run)/n.
  for (std::size_t i = 0; i < s.size();) {
    std::size_t j = i + 1;
    while (j < s.size() && s[j] == s[i]) ++j;
    const double model = f2.evaluate(s[i]);
    worst = std::max({worst, std::abs(static_cast<double>(i) / n - model), std::abs(static_cast<double>(j) / n - model)});
    i = j;
  }
  const Grid& grid = f2.grid();
  for (std::size_t j = 0; j < grid.size(); ++j) {
    worst = std::max(worst, std::abs(f1(grid.node(j)) - f2[j]));
  }
  return worst;
}

double ks_distance(const GridFunction& f1, const EmpiricalCdf& f2) { return ks_distance(f2, f1); }

double ks_distance(const EmpiricalCdf& f1, const EmpiricalCdf& f2) {
  double worst = 0.0;
  for (const EmpiricalCdf* points : {&f1, &f2}) {
    for (double x : points->sorted()) {
      worst = std::max({worst, std::abs(f1(x) - f2(x)), std::abs(f1.left_limit(x) - f2.left_limit(x))});
    }
  }
  return worst;
}

double ks_distance(const GridFunction& f1, const GridFunction& f2) {
  // Piecewise-linear on both sides: the sup is attained at a node of either grid.
  double worst = 0.0;
  for (const GridFunction* g : {&f1, &f2}) {
    for (std::size_t j = 0; j < g->size(); ++j) {
      const double x = g->grid().node(j);
      worst = std::max(worst, std::abs(f1.evaluate(x) - f2.evaluate(x)));
    }
  }
  return worst;
}

}  // namespace rifs
