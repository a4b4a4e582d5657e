#pragma once

#include <cstddef>
#include <vector>

#include "symreach/sp2.hpp"

namespace symreach {

/// Bilinear control system dS/dt = (A + u(t) B) S, S(0) = I.
struct ControlSystem {
  AlgebraElement drift;    // A
  AlgebraElement control;  // B

  AlgebraElement generator(double u) const { return drift + u * control; }
};

/// Squeezing example with drift [[0, -(1+c)], [-(1-c), 0]] = -2 K_x + 2c K_z
/// and control [[-1, 0], [0, 1]] = 2 K_y. The drift is hyperbolic for |c| < 1,
/// parabolic for |c| = 1 and elliptic for |c| > 1.
ControlSystem example_system(double c);

/// Normal form -K_x + b K_z + u K_y.
ControlSystem normal_form_system(double b);

/// Piecewise-constant control: values[k] holds on [k dt, (k+1) dt), dt = T/Q.
struct Pulse {
  std::vector<double> values;
  double T = 1.0;

  std::size_t slices() const { return values.size(); }
  double dt() const { return T / static_cast<double>(values.size()); }
};

/// Throws DomainError unless Q >= 1, T > 0 and all values are finite.
void validate(const Pulse& pulse);

}  // namespace symreach
