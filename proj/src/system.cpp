#include "symreach/system.hpp"

#include <cmath>

#include "symreach/errors.hpp"

namespace symreach {

ControlSystem example_system(double c) {
  return {AlgebraElement(Mat2{0.0, -(1.0 + c), -(1.0 - c), 0.0}),
          AlgebraElement(Mat2{-1.0, 0.0, 0.0, 1.0})};
}

ControlSystem normal_form_system(double b) {
  return {AlgebraElement::from_coords(-1.0, 0.0, b), Ky()};
}

void validate(const Pulse& pulse) {
  if (pulse.values.empty()) throw DomainError("pulse needs at least one slice");
  if (!(pulse.T > 0.0) || !std::isfinite(pulse.T)) {
    throw DomainError("pulse duration must be positive and finite");
  }
  for (double v : pulse.values) {
    if (!std::isfinite(v)) throw DomainError("pulse contains a non-finite value");
  }
}

}  // namespace symreach
