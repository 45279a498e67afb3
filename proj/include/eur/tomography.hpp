// tomography.hpp
// Qutrit state tomography from three sets of four projection values.
//
//   set 1: |0>, |-1>, (|0> - |-1>)/sqrt2, (|0> - i|-1>)/sqrt2          Rabi on MW0/MW1
//   set 2: |0>, |+1>, (|0> - |+1>)/sqrt2, (|0> - i|+1>)/sqrt2          Rabi on MW2/MW3
//   set 3: after the |0> <-> |+1> population reversal, the set-1 readout,
//          i.e. |+1>, |-1>, (|+1> - |-1>)/sqrt2, (|+1> - i|-1>)/sqrt2 in the
//          original frame
//
// Projection values are normalised Born probabilities <v|rho|v>.

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eur/core.hpp"
#include "eur/entropy.hpp"
#include "eur/family.hpp"
#include "eur/pulse.hpp"

namespace eur {

/// Record slack for projection values outside [0, 1].
inline constexpr double kRecordValueTol = 1e-9;
/// Record slack for the population-sum consistency check.
inline constexpr double kRecordPopulationTol = 5e-2;
/// Raw trace may deviate from 1 by this much before renormalisation.
inline constexpr double kRawTraceTol = 0.1;
/// Eigenvalues below -kMaxNegativity mark the data as broken.
inline constexpr double kMaxNegativity = 0.05;

struct TomographyRecord {
  std::array<double, 4> set1{};
  std::array<double, 4> set2{};
  std::array<double, 4> set3{};

  /// Checks value ranges and per-set population consistency.
  void validate() const {
    const std::array<const std::array<double, 4>*, 3> sets{&set1, &set2, &set3};
    bool all_zero = true;
    for (std::size_t s = 0; s < 3; ++s)
      for (std::size_t k = 0; k < 4; ++k) {
        const double v = (*sets[s])[k];
        if (!std::isfinite(v) || v < -kRecordValueTol || v > 1.0 + kRecordValueTol)
          throw DataQualityError(detail::concat("TomographyRecord: set", s + 1, "[", k, "] = ", v, " outside [0,1]"));
        if (v != 0.0) all_zero = false;
      }
    if (all_zero) throw DataQualityError("TomographyRecord: all projection values are zero");

    // Third population of each set, taken from the other two sets.
    const double pop_zero = 0.5 * (set1[0] + set2[0]);
    const double pop_minus = 0.5 * (set1[1] + set3[1]);
    const double pop_plus = 0.5 * (set2[1] + set3[0]);
    const std::array<double, 3> sums{set1[0] + set1[1] + pop_plus, set2[0] + set2[1] + pop_minus,
                                     set3[0] + set3[1] + pop_zero};
    for (std::size_t s = 0; s < 3; ++s)
      if (std::abs(sums[s] - 1.0) > kRecordPopulationTol)
        throw DataQualityError(detail::concat("TomographyRecord: set", s + 1, " populations sum to ", sums[s]));
  }
};

struct TomographyEigenvector {
  int set = 0;
  std::string label;
  StateVector vector;                  // readout vector, in the frame after any reversal
  std::optional<Channel> reversal;     // pi pulse applied first
  Channel rabi = Channel::MW0;
};

/// The twelve readout vectors with their reversal and Rabi channels.
inline std::vector<TomographyEigenvector> tomography_eigenvectors() {
  const double h = std::sqrt(0.5);
  const Complex i{0.0, 1.0};
  constexpr auto none = std::nullopt;
  return {
      {1, "|0>", qutrit(1, 0, 0), none, Channel::MW0},
      {1, "|-1>", qutrit(0, 1, 0), none, Channel::MW0},
      {1, "(|0>-|-1>)/sqrt2", qutrit(h, -h, 0), none, Channel::MW0},
      {1, "(|0>-i|-1>)/sqrt2", qutrit(h, -i * h, 0), none, Channel::MW1},
      {2, "|0>", qutrit(1, 0, 0), none, Channel::MW2},
      {2, "|+1>", qutrit(0, 0, 1), none, Channel::MW2},
      {2, "(|0>-|+1>)/sqrt2", qutrit(h, 0, -h), none, Channel::MW2},
      {2, "(|0>-i|+1>)/sqrt2", qutrit(h, 0, -i * h), none, Channel::MW3},
      {3, "|+1>", qutrit(1, 0, 0), Channel::MW2, Channel::MW0},
      {3, "|-1>", qutrit(0, 1, 0), Channel::MW2, Channel::MW0},
      {3, "(|+1>-|-1>)/sqrt2", qutrit(h, -h, 0), Channel::MW2, Channel::MW0},
      {3, "(|+1>-i|-1>)/sqrt2", qutrit(h, -i * h, 0), Channel::MW2, Channel::MW1},
  };
}

/// Ideal reversal X = |0><+1| + |+1><0| + |-1><-1|.
inline ComplexMatrix population_reversal() {
  ComplexMatrix x(kQutritDim, kQutritDim);
  x(kZero, kPlus) = 1.0;
  x(kPlus, kZero) = 1.0;
  x(kMinus, kMinus) = 1.0;
  return x;
}

/// Forward model for any Hermitian 3x3 operator (the model is linear, so
/// slightly unphysical estimates are accepted).
inline TomographyRecord simulate_projections(const ComplexMatrix& rho) {
  if (rho.rows() != kQutritDim || rho.cols() != kQutritDim)
    throw ValidationError("simulate_projections: operator must be 3x3");
  detail::require_hermitian(rho, "simulate_projections");
  const ComplexMatrix x = population_reversal();
  const ComplexMatrix reversed = x * rho * x.adjoint();
  TomographyRecord rec;
  const auto eigvecs = tomography_eigenvectors();
  for (std::size_t k = 0; k < eigvecs.size(); ++k) {
    const auto& e = eigvecs[k];
    const ComplexMatrix& op = e.reversal ? reversed : rho;
    const double v = op.sandwich(e.vector, e.vector).real();
    auto& set = e.set == 1 ? rec.set1 : e.set == 2 ? rec.set2 : rec.set3;
    set[k % 4] = v;
  }
  return rec;
}

inline TomographyRecord simulate_projections(const DensityOperator& rho) { return simulate_projections(rho.matrix()); }

/// (m + m^dag) / 2
inline ComplexMatrix hermitize(const ComplexMatrix& m) { return Complex{0.5, 0.0} * (m + m.adjoint()); }

/// Nearest physical operator: Hermitize, renormalise the trace, clamp
/// eigenvalues in [-0.05, 0) to zero and renormalise again.
inline DensityOperator project_to_physical(const ComplexMatrix& m) {
  ComplexMatrix h = hermitize(m);
  const double tr = h.trace().real();
  if (!(tr > 0.0)) throw DataQualityError(detail::concat("project_to_physical: non-positive trace ", tr));
  h = Complex{1.0 / tr, 0.0} * h;
  const auto eig = hermitian_eigen(h);
  if (eig.values.back() < -kMaxNegativity)
    throw DataQualityError(detail::concat("project_to_physical: eigenvalue ", eig.values.back(), " below -", kMaxNegativity));
  double kept = 0.0;
  for (double v : eig.values) kept += std::max(v, 0.0);
  ComplexMatrix out = spectral_map(eig, [kept](double v) { return std::max(v, 0.0) / kept; });
  return DensityOperator(hermitize(out));
}

/// Tr sqrt(sqrt(sigma) rho sqrt(sigma)).
inline double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) throw ValidationError("fidelity: dimension mismatch");
  const ComplexMatrix root = matrix_sqrt_psd(sigma.matrix());
  const ComplexMatrix inner_op = hermitize(root * rho.matrix() * root);
  double f = 0.0;
  for (double v : hermitian_eigen(inner_op).values) f += std::sqrt(std::max(v, 0.0));
  return f;
}

/// sqrt(<psi|rho|psi>) for a pure target. Only Hermiticity of rho is required.
inline double fidelity_to_pure(const ComplexMatrix& rho, const StateVector& psi) {
  detail::require_hermitian(rho, "fidelity_to_pure");
  if (!psi.is_normalized()) throw ValidationError("fidelity_to_pure: target is not normalized");
  const double overlap = rho.sandwich(psi, psi).real();
  if (overlap < -kValidationTol) throw ValidationError(detail::concat("fidelity_to_pure: <psi|rho|psi> = ", overlap));
  return std::sqrt(std::max(overlap, 0.0));
}

struct ReconstructionResult {
  DensityOperator rho;             // physical estimate
  ComplexMatrix raw_rho;           // linear inversion, Hermitian and trace-normalised
  std::optional<double> fidelity_vs_target;      // from rho
  std::optional<double> raw_fidelity_vs_target;  // from raw_rho
  double vn_entropy = 0.0;
};

/// Linear inversion of the record followed by projection to a physical state.
inline ReconstructionResult reconstruct(const TomographyRecord& rec, const std::optional<StateVector>& target = std::nullopt) {
  rec.validate();

  // Populations; each level is seen by two sets.
  const double p0 = 0.5 * (rec.set1[0] + rec.set2[0]);
  const double pm = 0.5 * (rec.set1[1] + rec.set3[1]);
  const double pp = 0.5 * (rec.set2[1] + rec.set3[0]);

  // <x|rho|y> from p_minus = <v-|rho|v->, p_i = <vi|rho|vi> and the set's own populations.
  const auto coherence = [](const std::array<double, 4>& s) {
    const double mean = 0.5 * (s[0] + s[1]);
    return Complex{mean - s[2], s[3] - mean};
  };

  ComplexMatrix raw(kQutritDim, kQutritDim);
  raw(kZero, kZero) = p0;
  raw(kMinus, kMinus) = pm;
  raw(kPlus, kPlus) = pp;
  const Complex c0m = coherence(rec.set1);
  const Complex c0p = coherence(rec.set2);
  const Complex cpm = coherence(rec.set3);  // reversed frame <0|X rho X|-1> = <+1|rho|-1>
  raw(kZero, kMinus) = c0m;
  raw(kMinus, kZero) = std::conj(c0m);
  raw(kZero, kPlus) = c0p;
  raw(kPlus, kZero) = std::conj(c0p);
  raw(kPlus, kMinus) = cpm;
  raw(kMinus, kPlus) = std::conj(cpm);

  const double tr = raw.trace().real();
  if (std::abs(tr - 1.0) > kRawTraceTol)
    throw DataQualityError(detail::concat("reconstruct: raw trace ", tr, " deviates from 1 by more than ", kRawTraceTol));
  raw = Complex{1.0 / tr, 0.0} * hermitize(raw);

  ReconstructionResult res{project_to_physical(raw), raw, std::nullopt, std::nullopt, 0.0};
  res.vn_entropy = von_neumann_entropy(res.rho);
  if (target) {
    if (target->dim() != kQutritDim) throw ValidationError("reconstruct: target must be a qutrit");
    res.fidelity_vs_target = fidelity(res.rho, DensityOperator::pure(*target));
    res.raw_fidelity_vs_target = fidelity_to_pure(res.raw_rho, *target);
  }
  return res;
}

}  // namespace eur
