// pulse.hpp
// Resonant rotations on the two-level subspaces of a spin-1 and the
// pulse-to-projector table used for basis selection before readout.
//
// MW0/MW1 drive |0> <-> |-1>, MW2/MW3 drive |0> <-> |+1>. MW1 and MW3 carry a
// pi/2 phase relative to MW0 and MW2. A pulse of angle theta on a channel with
// phase phi is exp(-i theta G / 2), G = cos(phi) sx + sin(phi) sy, acting on
// (|0>, |m>) with |0> first and as identity on the spectator level.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eur/core.hpp"
#include "eur/family.hpp"

namespace eur {

enum class Channel { MW0, MW1, MW2, MW3 };

/// Conjugate flips the rotation sense, exp(+i theta G / 2).
enum class RotationSense { Standard, Conjugate };

inline std::string_view channel_name(Channel c) {
  switch (c) {
    case Channel::MW0: return "MW0";
    case Channel::MW1: return "MW1";
    case Channel::MW2: return "MW2";
    case Channel::MW3: return "MW3";
  }
  return "?";
}

inline std::optional<Channel> parse_channel(std::string_view s) {
  for (Channel c : {Channel::MW0, Channel::MW1, Channel::MW2, Channel::MW3})
    if (channel_name(c) == s) return c;
  return std::nullopt;
}

/// Partner level of |0> in the channel's subspace.
inline std::size_t channel_partner(Channel c) {
  return (c == Channel::MW0 || c == Channel::MW1) ? kMinus : kPlus;
}

inline double channel_phase(Channel c) {
  return (c == Channel::MW1 || c == Channel::MW3) ? std::numbers::pi / 2.0 : 0.0;
}

struct Pulse {
  Channel channel = Channel::MW0;
  double angle = 0.0;  // radians

  Pulse() = default;
  Pulse(Channel ch, double theta) : channel(ch), angle(theta) {
    if (!std::isfinite(theta) || theta < 0.0) throw ValidationError(detail::concat("Pulse: angle ", theta, " must be finite and >= 0"));
  }

  /// Angle given in multiples of pi, as tabulated.
  static Pulse in_pi(Channel ch, double multiple) { return Pulse(ch, multiple * std::numbers::pi); }
};

inline ComplexMatrix pulse_unitary(const Pulse& p, RotationSense sense = RotationSense::Standard) {
  const double half = 0.5 * p.angle * (sense == RotationSense::Standard ? 1.0 : -1.0);
  const double phi = channel_phase(p.channel);
  const double c = std::cos(half);
  const double s = std::sin(half);
  // cos(h) I - i sin(h) G with G = [[0, e^{-i phi}], [e^{i phi}, 0]]
  const Complex off_upper = Complex{0.0, -s} * std::polar(1.0, -phi);
  const Complex off_lower = Complex{0.0, -s} * std::polar(1.0, phi);
  const std::size_t m = channel_partner(p.channel);

  ComplexMatrix u = ComplexMatrix::identity(kQutritDim);
  u(kZero, kZero) = c;
  u(m, m) = c;
  u(kZero, m) = off_upper;
  u(m, kZero) = off_lower;
  return u;
}

/// Pulses applied left to right: U = U_n ... U_1.
inline ComplexMatrix sequence_unitary(std::span<const Pulse> pulses, RotationSense sense = RotationSense::Standard) {
  ComplexMatrix u = ComplexMatrix::identity(kQutritDim);
  for (const auto& p : pulses) u = pulse_unitary(p, sense) * u;
  return u;
}

/// Population of |0> after a single pulse of each angle on the channel.
inline std::vector<double> rabi_populations(Channel channel, const StateVector& initial, std::span<const double> angles) {
  if (initial.dim() != kQutritDim) throw ValidationError("rabi_populations: initial state must be a qutrit");
  if (!initial.is_normalized()) throw ValidationError("rabi_populations: initial state is not normalized");
  std::vector<double> out;
  out.reserve(angles.size());
  for (double theta : angles) out.push_back(std::norm(pulse_unitary(Pulse(channel, theta)).apply(initial)[kZero]));
  return out;
}

/// |<target| U |0>|^2 for the pulse sequence U.
inline double verify_projection_sequence(const StateVector& target, std::span<const Pulse> pulses,
                                         RotationSense sense = RotationSense::Standard) {
  if (target.dim() != kQutritDim) throw ValidationError("verify_projection_sequence: target must be a qutrit");
  if (!target.is_normalized()) throw ValidationError("verify_projection_sequence: target is not normalized");
  const StateVector out = sequence_unitary(pulses, sense).apply(StateVector::basis(kQutritDim, kZero));
  return std::norm(inner(target, out));
}

// ── Projection table ────────────────────────────────────────────────────────

struct ProjectionRow {
  std::string label;  // amplitudes as printed, order (|0>, |-1>, |+1>)
  StateVector target;
  std::vector<Pulse> pulses;
};

/// The 17 eigenvector rows with their MW channel(s) and lengths.
inline std::vector<ProjectionRow> projection_table() {
  const Complex i{0.0, 1.0};
  const auto r = [](double x) { return std::sqrt(x); };
  std::vector<ProjectionRow> rows;
  rows.push_back({"(1 0 0)", qutrit(1, 0, 0), {Pulse::in_pi(Channel::MW0, 0.0)}});
  rows.push_back({"(0 1 0)", qutrit(0, 1, 0), {Pulse::in_pi(Channel::MW0, 1.0)}});
  rows.push_back({"(0 0 1)", qutrit(0, 0, 1), {Pulse::in_pi(Channel::MW2, 1.0)}});
  rows.push_back({"(0 sqrt0.5 sqrt0.5)", qutrit(0, r(0.5), r(0.5)),
                  {Pulse::in_pi(Channel::MW2, 1.0), Pulse::in_pi(Channel::MW0, 1.5)}});
  rows.push_back({"(0 sqrt0.5 -sqrt0.5)", qutrit(0, r(0.5), -r(0.5)),
                  {Pulse::in_pi(Channel::MW2, 1.0), Pulse::in_pi(Channel::MW0, 0.5)}});
  for (int k = 1; k <= 5; ++k) {
    const double x = 0.1 * k;
    const std::string sx = detail::concat(x);
    const std::string sy = detail::concat(1.0 - x);
    rows.push_back({"(sqrt" + sx + " i*sqrt" + sy + " 0)", qutrit(r(x), i * r(1.0 - x), 0),
                    {Pulse::in_pi(Channel::MW1, 2.0 - x)}});
    rows.push_back({"(sqrt" + sy + " -i*sqrt" + sx + " 0)", qutrit(r(1.0 - x), -i * r(x), 0),
                    {Pulse::in_pi(Channel::MW1, x)}});
  }
  rows.push_back({"(sqrt0.5 0 i*sqrt0.5)", qutrit(r(0.5), 0, i * r(0.5)), {Pulse::in_pi(Channel::MW2, 1.5)}});
  rows.push_back({"(sqrt0.5 0 -i*sqrt0.5)", qutrit(r(0.5), 0, -i * r(0.5)), {Pulse::in_pi(Channel::MW2, 0.5)}});
  return rows;
}

struct RowVerification {
  std::string label;
  double fidelity = 0.0;            // standard rotation sense
  double conjugate_fidelity = 0.0;  // reported, never used for pass/fail
  bool passed = false;
};

inline std::vector<RowVerification> verify_table(std::span<const ProjectionRow> rows, double tol = kValidationTol) {
  if (rows.empty()) throw ValidationError("verify_table: empty table");
  std::vector<RowVerification> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    RowVerification v;
    v.label = row.label;
    v.fidelity = verify_projection_sequence(row.target, row.pulses);
    v.conjugate_fidelity = verify_projection_sequence(row.target, row.pulses, RotationSense::Conjugate);
    v.passed = v.fidelity >= 1.0 - tol;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace eur
