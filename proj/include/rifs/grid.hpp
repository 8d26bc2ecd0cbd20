#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace rifs {

/// Uniform grid on I = [-1, 1] with an odd number of nodes, so composite
/// Simpson needs no correction panel. Endpoints are exactly -1 and 1.
class Grid {
 public:
  explicit Grid(std::size_t n_points);

  std::size_t size() const { return n_points_; }
  double spacing() const { return spacing_; }
  double node(std::size_t j) const;

  bool operator==(const Grid& other) const { return n_points_ == other.n_points_; }

 private:
  std::size_t n_points_;
  double spacing_;
};

/// Node values of a function on I. Between nodes the function is the
/// piecewise-linear interpolant.
class GridFunction {
 public:
  GridFunction(Grid grid, std::vector<double> values);
  explicit GridFunction(Grid grid, double constant = 0.0);

  template <typename F>
  static GridFunction sample(const Grid& grid, F&& f) {
    std::vector<double> v(grid.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid.node(j));
    return GridFunction(grid, std::move(v));
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }
  double& operator[](std::size_t j) { return values_[j]; }

  // Piecewise-linear value at x; DomainError outside [-1, 1].
  double evaluate(double x) const;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double c);

 private:
  Grid grid_;
  std::vector<double> values_;
};

GridFunction operator+(GridFunction lhs, const GridFunction& rhs);
GridFunction operator-(GridFunction lhs, const GridFunction& rhs);
GridFunction operator*(double c, GridFunction f);
GridFunction pointwise_product(const GridFunction& f, const GridFunction& g);

double sup_abs(const GridFunction& f);
double sup_abs_difference(const GridFunction& f, const GridFunction& g);

/// Composite Simpson approximation of the integral against m = dx / 2.
double integrate_dm(const GridFunction& f);

/// k-fold first differences: central in the interior, one-sided second order
/// at the two ends. Orders 1..3 only.
GridFunction finite_diff(const GridFunction& f, int order);

/// Stride used by the pairwise scans: 1 up to 1024 nodes, otherwise the
/// smallest stride leaving at most 1024 nodes (2^20 ordered pairs).
std::size_t pair_stride(std::size_t n_points);

struct HolderEstimate {
  double value = 0.0;
  std::size_t stride = 1;

  // False when only a strided subset of pairs was scanned; value is then a
  // lower bound of the maximum over all node pairs.
  bool exhaustive() const { return stride == 1; }
};

/// max over node pairs of |log f(x) - log f(y)| / |x - y|^gamma.
HolderEstimate holder_log_constant(const GridFunction& f, double gamma);

// CSV with header "x,<value_column>", 17 significant digits.
void write_csv(std::ostream& out, const GridFunction& f, std::string_view value_column = "value");
GridFunction read_csv(std::istream& in);

}  // namespace rifs
