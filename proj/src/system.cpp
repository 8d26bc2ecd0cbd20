#include "rifs/system.hpp"

#include <cmath>
#include <sstream>

#include "rifs/errors.hpp"

namespace rifs {

namespace {

constexpr double kProbabilitySumTolerance = 1e-12;
// Rounding slack when confirming that a point lies in [-1, 1] or an image.
constexpr double kRoundingSlack = 1e-12;

void check_branch_index(const IfsSystem& sys, std::size_t k) {
  if (k >= sys.branches.size()) throw DomainError("branch index out of range");
}

void check_noise_parameter(const IfsSystem& sys, double t) {
  if (!(t >= 0.0 && t <= sys.epsilon)) throw DomainError("noise parameter t outside [0, epsilon]");
}

}  // namespace

IfsSystem make_system(double lambda, std::vector<Branch> branches, const NoiseDensity& noise) {
  return IfsSystem{lambda, std::move(branches), noise.epsilon(), noise};
}

std::string ValidationReport::summary() const {
  if (violations.empty()) return "system is admissible";
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i > 0) out << "; ";
    out << violations[i].message;
  }
  return out.str();
}

ValidationReport validate_system(const IfsSystem& sys) {
  ValidationReport report;
  auto add = [&](std::string rule, std::optional<std::size_t> branch, std::optional<double> endpoint,
                 std::string message) {
    report.violations.push_back({std::move(rule), branch, endpoint, std::move(message)});
  };

  if (!(sys.lambda > 0.0 && sys.lambda < 1.0)) {
    add("lambda-range", std::nullopt, std::nullopt, "lambda must satisfy 0 < lambda < 1");
  }
  if (!std::isfinite(sys.epsilon) || sys.epsilon < 0.0) {
    add("epsilon-range", std::nullopt, std::nullopt, "epsilon must be finite and >= 0");
  }
  if (sys.noise.epsilon() != sys.epsilon) {
    add("noise-epsilon", std::nullopt, std::nullopt, "noise density range differs from system epsilon");
  }
  if (sys.branches.empty()) {
    add("branches", std::nullopt, std::nullopt, "at least one branch is required");
  }

  double total = 0.0;
  for (std::size_t k = 0; k < sys.branches.size(); ++k) {
    const Branch& br = sys.branches[k];
    const std::string tag = "branch " + std::to_string(k);
    if (!std::isfinite(br.shift) || !std::isfinite(br.coupling) || !std::isfinite(br.probability)) {
      add("finite", k, std::nullopt, tag + ": parameters must be finite");
      continue;
    }
    if (br.coupling == 0.0) add("coupling-nonzero", k, std::nullopt, tag + ": coupling b must be nonzero");
    if (!(br.probability > 0.0)) add("probability-positive", k, std::nullopt, tag + ": probability must be > 0");
    total += br.probability;

    // lambda + |a + b t| <= 1 is affine in t on each side, so the endpoints decide.
    for (double t : {0.0, sys.epsilon}) {
      if (!std::isfinite(t)) continue;
      const double reach = sys.lambda + std::abs(br.shift + br.coupling * t);
      if (reach > 1.0) {
        std::ostringstream msg;
        msg.precision(17);
        msg << tag << ": containment violated at t = " << t << " (lambda + |a + b t| = " << reach << " > 1)";
        add("containment", k, t, msg.str());
      }
      if (sys.epsilon == 0.0) break;
    }
  }
  if (!sys.branches.empty() && std::abs(total - 1.0) > kProbabilitySumTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "probabilities sum to " << total << ", expected 1";
    add("probability-sum", std::nullopt, std::nullopt, msg.str());
  }
  return report;
}

void require_admissible(const IfsSystem& sys) {
  const ValidationReport report = validate_system(sys);
  if (!report.admissible()) throw PreconditionError("inadmissible system: " + report.summary());
}

void require_smoothing(const IfsSystem& sys, const char* operation) {
  require_admissible(sys);
  if (sys.epsilon == 0.0) {
    throw UnsupportedConfiguration(std::string(operation) + " requires epsilon > 0");
  }
}

double map_apply(const IfsSystem& sys, std::size_t k, double t, double x) {
  check_branch_index(sys, k);
  check_noise_parameter(sys, t);
  if (!(x >= -1.0 && x <= 1.0)) throw DomainError("map_apply: x outside [-1, 1]");
  const Branch& br = sys.branches[k];
  return sys.lambda * x + br.shift + br.coupling * t;
}

double map_inverse(const IfsSystem& sys, std::size_t k, double t, double y) {
  check_branch_index(sys, k);
  check_noise_parameter(sys, t);
  const Branch& br = sys.branches[k];
  const double centre = br.shift + br.coupling * t;
  if (!(std::abs(y - centre) <= sys.lambda + kRoundingSlack)) {
    throw DomainError("map_inverse: y outside the image interval");
  }
  return (y - centre) / sys.lambda;
}

std::pair<double, double> image_interval(const IfsSystem& sys, std::size_t k, double t) {
  check_branch_index(sys, k);
  check_noise_parameter(sys, t);
  const Branch& br = sys.branches[k];
  const double centre = br.shift + br.coupling * t;
  return {centre - sys.lambda, centre + sys.lambda};
}

}  // namespace rifs
