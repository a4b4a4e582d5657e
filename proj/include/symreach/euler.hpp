#pragma once

// Unique singular value (Euler / Bloch-Messiah) decomposition of Sp(2,R):
//   S = R_theta * diag(1/z, z) * R_phi,  z >= 1,
// with theta in [theta0 - pi, theta0 + pi) and phi in [phi0 - pi/2, phi0 + pi/2).
// When z == 1 only the sum theta + phi is determined and phi is pinned to phi0.

#include <numbers>

#include "symreach/sp2.hpp"

namespace symreach {

struct RangeOffsets {
  double theta0 = 0.0;
  double phi0 = std::numbers::pi / 2.0;
};

struct EulerTriple {
  double theta = 0.0;
  double z = 1.0;
  double phi = 0.0;
};

/// z - 1 at or below this is treated as the degenerate (rotation) case.
inline constexpr double kDegenerateZ = 1e-9;

/// Maps `angle` into [lo, lo + period).
double wrap_angle(double angle, double lo, double period);

bool in_range(const EulerTriple& e, const RangeOffsets& offsets);

EulerTriple decompose(const SymplecticMatrix& s, const RangeOffsets& offsets = {});

/// Checked overload: throws NotSymplectic when det(m) is not one.
EulerTriple decompose(const Mat2& m, const RangeOffsets& offsets = {});

SymplecticMatrix compose(const EulerTriple& e);

/// Limit of the decomposition along e^{A t} (A = [[0,-1],[-1,0]]) as t -> 0:
/// (-3pi/4, 1, 3pi/4). Differs from decompose(I), which follows the phi = phi0
/// convention and gives (-pi/2, 1, pi/2) for the default offsets.
EulerTriple identity_limit_triple();

}  // namespace symreach
