#include "symreach/euler.hpp"

#include <cmath>

#include "symreach/errors.hpp"

namespace symreach {

namespace {
constexpr double kPi = std::numbers::pi;
}

double wrap_angle(double angle, double lo, double period) {
  double r = angle - period * std::floor((angle - lo) / period);
  // floor() can leave r on the excluded upper end after rounding.
  if (r >= lo + period) r -= period;
  if (r < lo) r = lo;
  return r;
}

bool in_range(const EulerTriple& e, const RangeOffsets& o) {
  return e.z >= 1.0 && e.theta >= o.theta0 - kPi && e.theta < o.theta0 + kPi &&
         e.phi >= o.phi0 - kPi / 2.0 && e.phi < o.phi0 + kPi / 2.0;
}

EulerTriple decompose(const SymplecticMatrix& sm, const RangeOffsets& o) {
  const Mat2& s = sm.mat();
  // Split S into a rotation-like part m R_sum and a reflection-like part
  // n J R_diff (J = diag(1,-1)). With Z = diag(1/z, z):
  //   m = (z + 1/z)/2,  |n| = (z - 1/z)/2,
  //   theta + phi = atan2(q, p),  phi - theta = atan2(t, -r).
  const double p = 0.5 * (s.m11 + s.m22);
  const double q = 0.5 * (s.m21 - s.m12);
  const double r = 0.5 * (s.m11 - s.m22);
  const double t = 0.5 * (s.m12 + s.m21);
  const double m = std::hypot(p, q);
  const double n = std::hypot(r, t);
  const double z = m + n;
  const double sum = std::atan2(q, p);

  EulerTriple e;
  if (z - 1.0 <= kDegenerateZ) {
    e.z = 1.0;
    e.phi = o.phi0;
    e.theta = wrap_angle(sum - o.phi0, o.theta0 - kPi, 2.0 * kPi);
    return e;
  }
  const double diff = std::atan2(t, -r);
  double theta = 0.5 * (sum - diff);
  double phi = 0.5 * (sum + diff);
  // (theta + k pi, phi + k pi) describes the same matrix; pick the k that
  // lands phi in its half-open window, then wrap theta by whole turns.
  const double lo = o.phi0 - kPi / 2.0;
  const double k = std::floor((phi - lo) / kPi);
  phi -= k * kPi;
  theta -= k * kPi;
  if (phi >= lo + kPi) {
    phi -= kPi;
    theta -= kPi;
  } else if (phi < lo) {
    phi += kPi;
    theta += kPi;
  }
  e.z = z;
  e.phi = phi;
  e.theta = wrap_angle(theta, o.theta0 - kPi, 2.0 * kPi);
  return e;
}

EulerTriple decompose(const Mat2& m, const RangeOffsets& offsets) {
  return decompose(SymplecticMatrix(m), offsets);
}

SymplecticMatrix compose(const EulerTriple& e) {
  if (!(e.z > 0.0)) throw DomainError("compose: z must be positive");
  return SymplecticMatrix::trusted(Mat2::rotation(e.theta) *
                                   Mat2::diag(1.0 / e.z, e.z) *
                                   Mat2::rotation(e.phi));
}

EulerTriple identity_limit_triple() { return {-3.0 * kPi / 4.0, 1.0, 3.0 * kPi / 4.0}; }

}  // namespace symreach
