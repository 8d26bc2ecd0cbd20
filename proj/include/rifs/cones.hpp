#pragma once

#include <cstddef>
#include <vector>

#include "rifs/grid.hpp"

namespace rifs {

/// Cone D(a, gamma) of positive densities whose logarithm is
/// (a, gamma)-Hoelder, and the cone E(a, b, gamma) of bounded functions
/// tested against D(a, gamma).
struct ConeParams {
  double a = 0.5;
  double gamma = 1.0;
  double b = 0.0;
};

struct ConeConstants {
  double lambda0 = 0.0;     // Birkhoff factor of U on D(a, gamma)
  double diameter_D = 0.0;  // diameter of D(lambda a, gamma) inside D(a, gamma)
  double b_min = 0.0;       // E-cone modulus threshold 1 / (1 - lambda0)
};

struct EConeDiameter {
  double diameter_LE = 0.0;  // diameter of L(E(a, b, gamma)) inside E(a, b, gamma)
  double lambda1 = 0.0;      // tanh(diameter_LE / 4)
};

ConeConstants contraction_constants(double lambda, double a, double gamma);

/// Throws PreconditionError naming b_min when b <= b_min.
EConeDiameter e_cone_diameter(double lambda, double a, double gamma, double b);

/// Hilbert metric of D(a, gamma) on grid functions: log(beta / alpha), with
/// alpha / beta the inf / sup over node pairs of rho2(x) / rho1(x) and
///   (e^{a|x-y|^gamma} rho2(y) - rho2(x)) / (e^{a|x-y|^gamma} rho1(y) - rho1(x)).
/// Ordered pairs are scanned; pairs with a vanishing denominator are skipped.
/// Large grids use the strided scan of pair_stride.
double theta_D(const GridFunction& rho1, const GridFunction& rho2, double a, double gamma);

/// Explicit unit-mass members of D(a, gamma): the constant, exponential
/// tilts, and bumps e^{+-s (1 - |x - c|^gamma)}, all with amplitude at most
/// 0.9 a.
std::vector<GridFunction> witness_family(const Grid& grid, double a, double gamma, std::size_t count);

/// Witness functions together with their pairwise theta_D, checked to be
/// unit-mass members of D(a, gamma).
class WitnessSet {
 public:
  WitnessSet(std::vector<GridFunction> witnesses, double a, double gamma);

  std::size_t size() const { return witnesses_.size(); }
  const std::vector<GridFunction>& functions() const { return witnesses_; }
  double a() const { return a_; }
  double gamma() const { return gamma_; }
  double theta(std::size_t j, std::size_t k) const { return theta_[j * size() + k]; }

 private:
  std::vector<GridFunction> witnesses_;
  double a_;
  double gamma_;
  std::vector<double> theta_;
};

/// Lower bound on the E(a, b, gamma) Hilbert metric between phi1 and phi2,
/// obtained by restricting the inf/sup defining alpha_E and beta_E to the
/// witness set. Diagnostic only; never a certificate.
double theta_E_lower_bound(const GridFunction& phi1, const GridFunction& phi2, const WitnessSet& witnesses,
                           double b);

}  // namespace rifs
