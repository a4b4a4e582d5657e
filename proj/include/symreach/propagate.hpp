#pragma once

#include <cstddef>
#include <vector>

#include "symreach/system.hpp"

namespace symreach {

/// Per-slice propagators S_k = exp((A + u_k B) dt), k = 0..Q-1.
std::vector<SymplecticMatrix> slice_propagators(const ControlSystem& sys,
                                                const Pulse& pulse);

/// S(T) = S_{Q-1} ... S_1 S_0.
SymplecticMatrix propagate(const ControlSystem& sys, const Pulse& pulse);

/// S(t) sampled `per_slice` times inside every slice, starting with S(0) = I.
/// Returns 1 + Q * per_slice matrices; the last one is S(T).
std::vector<Mat2> sample_trajectory(const ControlSystem& sys, const Pulse& pulse,
                                    std::size_t per_slice);

}  // namespace symreach
