// family.hpp
// The three-measurement qutrit family M1, M2, M3(a) and the sweep over a.
//
// Level order everywhere: index 0 = |0>, 1 = |-1>, 2 = |+1>.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eur/bounds.hpp"
#include "eur/core.hpp"
#include "eur/entropy.hpp"

namespace eur {

enum Level : std::size_t { kZero = 0, kMinus = 1, kPlus = 2 };
inline constexpr std::size_t kQutritDim = 3;

/// The family parameter a in [0,1]; b = 1 - a is always derived.
class FamilyParameter {
 public:
  explicit FamilyParameter(double a) : a_(a) {
    if (!(a >= 0.0 && a <= 1.0)) throw ValidationError(detail::concat("FamilyParameter: a = ", a, " outside [0,1]"));
  }
  double a() const { return a_; }
  double b() const { return 1.0 - a_; }

 private:
  double a_;
};

inline StateVector qutrit(Complex zero, Complex minus, Complex plus) { return StateVector{zero, minus, plus}; }

/// M1 = {|0>, |-1>, |+1>}
/// M2 = {(|0> - |+1>)/sqrt2, |-1>, (|0> + |+1>)/sqrt2}
/// M3 = {sqrt(a)|0> + sqrt(b)|-1>, sqrt(b)|0> - sqrt(a)|-1>, |+1>}
inline std::vector<ProjectiveMeasurement> build_family(const FamilyParameter& p) {
  const double h = std::sqrt(0.5);
  const double ra = std::sqrt(p.a());
  const double rb = std::sqrt(p.b());
  std::vector<ProjectiveMeasurement> out;
  out.emplace_back(std::vector<StateVector>{qutrit(1, 0, 0), qutrit(0, 1, 0), qutrit(0, 0, 1)}, "M1");
  out.emplace_back(std::vector<StateVector>{qutrit(h, 0, -h), qutrit(0, 1, 0), qutrit(h, 0, h)}, "M2");
  out.emplace_back(std::vector<StateVector>{qutrit(ra, rb, 0), qutrit(rb, -ra, 0), qutrit(0, 0, 1)}, "M3");
  return out;
}

struct LabeledState {
  std::string label;
  DensityOperator rho;
};

/// Pure |0><0| ("zero") and |-1><-1| ("minus1").
inline std::vector<LabeledState> reference_states() {
  return {{"zero", DensityOperator::pure(StateVector::basis(kQutritDim, kZero))},
          {"minus1", DensityOperator::pure(StateVector::basis(kQutritDim, kMinus))}};
}

struct SweepRow {
  double a = 0.0;
  std::string state_label;
  double entropy_total = 0.0;
  double scb = 0.0;
  double lmf = 0.0;
  double rpz = 0.0;
};

/// steps points from..to inclusive; endpoints exact.
inline std::vector<double> uniform_grid(double from, double to, std::size_t steps) {
  if (steps < 2) throw ValidationError("uniform_grid: steps must be >= 2");
  if (!(from < to)) throw ValidationError("uniform_grid: from must be < to");
  std::vector<double> g(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(steps - 1);
    g[i] = std::clamp(from + (to - from) * t, from, to);
  }
  g.back() = to;
  return g;
}

inline std::vector<double> default_grid() { return uniform_grid(0.0, 1.0, 101); }

/// One row per (a, state), ordered by grid index then state label.
inline std::vector<SweepRow> sweep(std::span<const double> grid, std::span<const LabeledState> states) {
  std::vector<const LabeledState*> ordered;
  for (const auto& s : states) ordered.push_back(&s);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const LabeledState* x, const LabeledState* y) { return x->label < y->label; });

  std::vector<SweepRow> rows;
  rows.reserve(grid.size() * states.size());
  for (double a : grid) {
    const auto family = build_family(FamilyParameter(a));
    const double rpz = rpz_bound(family);  // state-independent
    for (const auto* s : ordered) {
      SweepRow r;
      r.a = a;
      r.state_label = s->label;
      r.entropy_total = entropy_sum(family, s->rho).total;
      r.scb = scb_bound(family, s->rho);
      r.lmf = lmf_bound(family, s->rho);
      r.rpz = rpz;
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

}  // namespace eur
