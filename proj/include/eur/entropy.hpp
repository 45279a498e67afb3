// entropy.hpp
// Shannon, binary and von Neumann entropies (bits) and the entropy sum over a
// set of projective measurements.

#pragma once

#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eur/core.hpp"

namespace eur {

namespace detail {

// -x log2 x with 0 log 0 = 0.
inline double entropy_term(double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; }

}  // namespace detail

inline double shannon_entropy(const ProbabilityDistribution& p) {
  double h = 0.0;
  for (double x : p.values()) h += detail::entropy_term(x);
  return std::max(h, 0.0);
}

/// h(a) = -a log2 a - (1-a) log2 (1-a)
inline double binary_entropy(double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw ValidationError(detail::concat("binary_entropy: a = ", a, " outside [0,1]"));
  return detail::entropy_term(a) + detail::entropy_term(1.0 - a);
}

/// S(rho) = -Tr rho log2 rho over eigenvalues clamped at zero.
inline double von_neumann_entropy(const DensityOperator& rho) {
  const auto eig = hermitian_eigen(rho.matrix());
  double s = 0.0;
  for (double v : eig.values) {
    if (v < -kValidationTol) throw NotPsdError(detail::concat("von_neumann_entropy: eigenvalue ", v));
    s += detail::entropy_term(v);
  }
  return std::max(s, 0.0);
}

struct EntropyBreakdown {
  std::vector<std::pair<std::string, double>> per_measurement;
  double total = 0.0;
};

/// sum_m H(M_m) for the Born distributions of rho.
inline EntropyBreakdown entropy_sum(std::span<const ProjectiveMeasurement> measurements, const DensityOperator& rho) {
  if (measurements.empty()) throw ValidationError("entropy_sum: empty measurement list");
  EntropyBreakdown out;
  out.per_measurement.reserve(measurements.size());
  for (const auto& m : measurements) {
    const double h = shannon_entropy(born_probabilities(m, rho));
    out.per_measurement.emplace_back(m.label(), h);
    out.total += h;
  }
  return out;
}

}  // namespace eur
