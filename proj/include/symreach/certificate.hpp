#pragma once

// Reachability certificate for the normal form -K_x + b K_z + u K_y, |b| < 1.
//
// Writing X = [[x1 + x3, x2 + x4], [x4 - x2, x1 - x3]], the quantity
//   f = (x1 - x4)^2 - (x2 - x3)^2
// starts at 1, never decreases along trajectories, and so any element with
// f < 1 cannot be reached.

#include <cstddef>
#include <vector>

#include "symreach/euler.hpp"
#include "symreach/system.hpp"

namespace symreach {

struct XCoords {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
  double x4 = 0.0;
};

XCoords to_xcoords(const Mat2& m);
Mat2 from_xcoords(const XCoords& x);

double f_of_matrix(const Mat2& m);

/// g(z, phi) = 1/2 (z^2 + z^-2) sin 2phi - 1/2 (z^2 - z^-2). Requires z >= 1.
double g_factor(double z, double phi);

/// delta = g(z, phi) - sin 2phi; zero at z = 1, never positive.
double g_excess(double z, double phi);

/// f in singular-value coordinates: cos 2theta cos 2phi - g(z, phi) sin 2theta.
double fz_of_triple(const EulerTriple& e);

/// Same value through the rotated form cos 2(theta + phi) - delta sin 2theta.
double fz_compact(const EulerTriple& e);

/// Strict lower bound on z for any element with f_z > d: sqrt((d + 1) / 2).
double min_z_for_f(double d);

/// Predicate: if f_z exceeds its z = 1 value then z > 1 and sin 2theta > 0.
bool sin2theta_sign_check(const EulerTriple& e);

/// df/dt of the normal form at X: 2b(x1-x4)(x2-x3) + (x1-x4)^2 + (x2-x3)^2.
/// The control drops out.
double f_rate(const Mat2& x, double b);

/// Samples f along the normal-form trajectory driven by `pulse`, `per_slice`
/// points per slice, starting with f(I) = 1.
std::vector<double> f_along_trajectory(double b, const Pulse& pulse,
                                       std::size_t per_slice = 50);

}  // namespace symreach
