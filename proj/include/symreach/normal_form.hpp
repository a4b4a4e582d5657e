#pragma once

// Reduction of an unstable single-mode control system to the normal form
//   dS/dtau = (-K_x + b K_z + w(tau) K_y) S,  |b| < 1.
//
// Bookkeeping: with P the recorded conjugation,
//   P A P^{-1} = time_scale (-K_x + b K_z) + u_offset K_y
//   P B P^{-1} = u_scale K_y
// so an original trajectory S(t) under u(t) maps to the normal-form trajectory
// P S(t) P^{-1} at tau = time_scale t under w = (u_scale u + u_offset) / time_scale.

#include <utility>

#include "symreach/system.hpp"

namespace symreach {

struct NormalForm {
  double b = 0.0;
  SymplecticMatrix P;
  double time_scale = 1.0;
  double u_offset = 0.0;
  double u_scale = 1.0;
  /// The K_x coefficient came out positive and P includes a conjugation by
  /// Omega, which negates K_x and K_y (and with them the control sign).
  bool time_reversed = false;

  /// Normal-form control value for an original control value.
  double to_normal_control(double u) const { return (u_scale * u + u_offset) / time_scale; }
  double from_normal_control(double w) const { return (w * time_scale - u_offset) / u_scale; }

  /// Pulse of the normal-form system equivalent to `pulse` on the original.
  Pulse to_normal(const Pulse& pulse) const;

  /// The original (A, B) recovered from the recorded transformation.
  ControlSystem reconstruct() const;
};

/// Tr[(A + vB)^2] > 0 for every real v.
bool is_unstable(const ControlSystem& sys);

/// Conjugation P = e^{beta K_x} e^{alpha K_z} with P M P^{-1} = scale K_y,
/// scale = sqrt(2 Tr[M^2]). Throws NotHyperbolic.
std::pair<SymplecticMatrix, double> hyperbolic_to_ky(const AlgebraElement& m);

/// Throws RankCriterionViolation, then NotUnstable, when the reduction does not apply.
NormalForm normalize(const ControlSystem& sys);

}  // namespace symreach
