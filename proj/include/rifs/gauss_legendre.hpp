#pragma once

#include <cstddef>
#include <vector>

namespace rifs {

// n-point Gauss-Legendre rule on [-1, 1].
class GaussLegendre {
 public:
  explicit GaussLegendre(int n);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  // Integral of f over [lo, hi] with the rule mapped affinely.
  template <typename F>
  double integrate(double lo, double hi, F&& f) const {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double sum = 0.0;
    for (std::size_t q = 0; q < nodes_.size(); ++q) sum += weights_[q] * f(mid + half * nodes_[q]);
    return half * sum;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace rifs
