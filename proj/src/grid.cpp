#include "rifs/grid.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "rifs/errors.hpp"

namespace rifs {

namespace {

constexpr std::size_t kMaxScanNodes = 1024;
constexpr double kEvaluateSlack = 1e-12;

void require_same_grid(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid() == g.grid())) throw ConfigurationError("grid functions live on different grids");
}

// One first-difference pass.
std::vector<double> differentiate(std::span<const double> f, double dx) {
  const std::size_t n = f.size();
  std::vector<double> d(n);
  const double inv = 1.0 / (2.0 * dx);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv;
  for (std::size_t j = 1; j + 1 < n; ++j) d[j] = (f[j + 1] - f[j - 1]) * inv;
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv;
  return d;
}

}  // namespace

Grid::Grid(std::size_t n_points) : n_points_(n_points), spacing_(0.0) {
  if (n_points < 3 || n_points % 2 == 0) {
    throw ConfigurationError("grid needs an odd number of points >= 3");
  }
  spacing_ = 2.0 / static_cast<double>(n_points - 1);
}

double Grid::node(std::size_t j) const {
  const double m = static_cast<double>(n_points_ - 1);
  return (2.0 * static_cast<double>(j) - m) / m;
}

GridFunction::GridFunction(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw ConfigurationError("value count does not match grid size");
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("grid function values must be finite");
  }
}

GridFunction::GridFunction(Grid grid, double constant) : grid_(grid), values_(grid.size(), constant) {}

double GridFunction::evaluate(double x) const {
  if (!(x >= -1.0 - kEvaluateSlack && x <= 1.0 + kEvaluateSlack)) {
    throw DomainError("evaluate: x outside [-1, 1]");
  }
  const double u = std::clamp((x + 1.0) / grid_.spacing(), 0.0, static_cast<double>(size() - 1));
  const std::size_t j = std::min(static_cast<std::size_t>(u), size() - 2);
  const double w = u - static_cast<double>(j);
  return (1.0 - w) * values_[j] + w * values_[j + 1];
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  require_same_grid(*this, other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  require_same_grid(*this, other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
  return *this;
}

GridFunction& GridFunction::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

GridFunction operator+(GridFunction lhs, const GridFunction& rhs) { return lhs += rhs; }
GridFunction operator-(GridFunction lhs, const GridFunction& rhs) { return lhs -= rhs; }
GridFunction operator*(double c, GridFunction f) { return f *= c; }

GridFunction pointwise_product(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  std::vector<double> v(f.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = f[j] * g[j];
  return GridFunction(f.grid(), std::move(v));
}

double sup_abs(const GridFunction& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double sup_abs_difference(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  double m = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) m = std::max(m, std::abs(f[j] - g[j]));
  return m;
}

double integrate_dm(const GridFunction& f) {
  const auto v = f.values();
  const std::size_t n = v.size();
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t j = 1; j + 1 < n; j += 2) odd += v[j];
  for (std::size_t j = 2; j + 1 < n; j += 2) even += v[j];
  const double sum = v[0] + v[n - 1] + 4.0 * odd + 2.0 * even;
  return 0.5 * sum * f.grid().spacing() / 3.0;
}

GridFunction finite_diff(const GridFunction& f, int order) {
  if (order < 1 || order > 3) throw ConfigurationError("finite_diff supports orders 1..3");
  if (f.size() < static_cast<std::size_t>(2 * order + 1)) {
    throw ConfigurationError("grid too small for the requested difference order");
  }
  std::vector<double> d(f.values().begin(), f.values().end());
  for (int k = 0; k < order; ++k) d = differentiate(d, f.grid().spacing());
  return GridFunction(f.grid(), std::move(d));
}

std::size_t pair_stride(std::size_t n_points) {
  std::size_t stride = 1;
  while ((n_points - 1) / stride + 1 > kMaxScanNodes) ++stride;
  return stride;
}

HolderEstimate holder_log_constant(const GridFunction& f, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw DomainError("Hoelder exponent must lie in (0, 1]");
  std::vector<double> logs;
  logs.reserve(f.size());
  for (double v : f.values()) {
    if (!(v > 0.0)) throw DomainError("holder_log_constant needs a strictly positive function");
    logs.push_back(std::log(v));
  }

  const std::size_t stride = pair_stride(f.size());
  const std::size_t m = (f.size() - 1) / stride + 1;
  // |x_i - x_j|^gamma depends only on the index offset.
  std::vector<double> inv_dist(m);
  for (std::size_t k = 1; k < m; ++k) {
    inv_dist[k] = 1.0 / std::pow(static_cast<double>(k * stride) * f.grid().spacing(), gamma);
  }

  double best = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double li = logs[i * stride];
    for (std::size_t j = i + 1; j < m; ++j) {
      best = std::max(best, std::abs(li - logs[j * stride]) * inv_dist[j - i]);
    }
  }
  return HolderEstimate{best, stride};
}

void write_csv(std::ostream& out, const GridFunction& f, std::string_view value_column) {
  out << "x," << value_column << '\n';
  std::ostringstream row;
  row.precision(17);
  for (std::size_t j = 0; j < f.size(); ++j) {
    row.str({});
    row << f.grid().node(j) << ',' << f[j] << '\n';
    out << row.str();
  }
}

GridFunction read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigurationError("empty CSV");
  std::vector<double> xs;
  std::vector<double> vs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigurationError("malformed CSV row: " + line);
    try {
      xs.push_back(std::stod(line.substr(0, comma)));
      vs.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw ConfigurationError("malformed CSV row: " + line);
    }
  }
  Grid grid(vs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (std::abs(xs[j] - grid.node(j)) > 1e-12) throw ConfigurationError("CSV nodes are not a uniform grid on [-1, 1]");
  }
  return GridFunction(grid, std::move(vs));
}

}  // namespace rifs
