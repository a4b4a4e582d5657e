#include "symreach/propagate.hpp"

#include "symreach/errors.hpp"

namespace symreach {

std::vector<SymplecticMatrix> slice_propagators(const ControlSystem& sys,
                                                const Pulse& pulse) {
  validate(pulse);
  const double dt = pulse.dt();
  std::vector<SymplecticMatrix> out;
  out.reserve(pulse.slices());
  for (double u : pulse.values) out.push_back(expm(sys.generator(u), dt));
  return out;
}

SymplecticMatrix propagate(const ControlSystem& sys, const Pulse& pulse) {
  validate(pulse);
  const double dt = pulse.dt();
  Mat2 s = Mat2::identity();
  for (double u : pulse.values) s = expm(sys.generator(u), dt).mat() * s;
  return SymplecticMatrix::trusted(s);
}

std::vector<Mat2> sample_trajectory(const ControlSystem& sys, const Pulse& pulse,
                                    std::size_t per_slice) {
  validate(pulse);
  if (per_slice == 0) throw DomainError("sample_trajectory: per_slice must be >= 1");
  const double dt = pulse.dt();
  const double h = dt / static_cast<double>(per_slice);
  std::vector<Mat2> out;
  out.reserve(1 + pulse.slices() * per_slice);
  Mat2 start = Mat2::identity();
  out.push_back(start);
  for (double u : pulse.values) {
    const AlgebraElement g = sys.generator(u);
    // Each sample is taken from the slice start so errors do not compound
    // within a slice.
    for (std::size_t j = 1; j <= per_slice; ++j) {
      const double tau = (j == per_slice) ? dt : h * static_cast<double>(j);
      out.push_back(expm(g, tau).mat() * start);
    }
    start = out.back();
  }
  return out;
}

}  // namespace symreach
