#include "symreach/certificate.hpp"

#include <cmath>
#include <sstream>

#include "symreach/errors.hpp"
#include "symreach/propagate.hpp"

namespace symreach {

XCoords to_xcoords(const Mat2& m) {
  return {0.5 * (m.m11 + m.m22), 0.5 * (m.m12 - m.m21), 0.5 * (m.m11 - m.m22),
          0.5 * (m.m12 + m.m21)};
}

Mat2 from_xcoords(const XCoords& x) {
  return {x.x1 + x.x3, x.x2 + x.x4, x.x4 - x.x2, x.x1 - x.x3};
}

double f_of_matrix(const Mat2& m) {
  const XCoords x = to_xcoords(m);
  const double a = x.x1 - x.x4;
  const double b = x.x2 - x.x3;
  return a * a - b * b;
}

double g_factor(double z, double phi) {
  if (!(z >= 1.0)) {
    std::ostringstream msg;
    msg << "g_factor: z must be >= 1, got " << z;
    throw DomainError(msg.str());
  }
  const double z2 = z * z;
  const double iz2 = 1.0 / z2;
  return 0.5 * (z2 + iz2) * std::sin(2.0 * phi) - 0.5 * (z2 - iz2);
}

double g_excess(double z, double phi) {
  if (!(z >= 1.0)) throw DomainError("g_excess: z must be >= 1");
  // Written so that the z = 1 cancellation is exact.
  const double z2 = z * z;
  const double iz2 = 1.0 / z2;
  const double w = z - 1.0 / z;  // z^2 + z^-2 - 2 = w^2
  return 0.5 * w * w * std::sin(2.0 * phi) - 0.5 * (z2 - iz2);
}

double fz_of_triple(const EulerTriple& e) {
  return std::cos(2.0 * e.theta) * std::cos(2.0 * e.phi) -
         g_factor(e.z, e.phi) * std::sin(2.0 * e.theta);
}

double fz_compact(const EulerTriple& e) {
  return std::cos(2.0 * (e.theta + e.phi)) - g_excess(e.z, e.phi) * std::sin(2.0 * e.theta);
}

double min_z_for_f(double d) {
  if (!(d >= 1.0)) {
    std::ostringstream msg;
    msg << "min_z_for_f: d must be >= 1, got " << d;
    throw DomainError(msg.str());
  }
  return std::sqrt(0.5 * (d + 1.0));
}

bool sin2theta_sign_check(const EulerTriple& e) {
  const EulerTriple flat{e.theta, 1.0, e.phi};
  const double fz = fz_of_triple(e);
  const double f1 = fz_of_triple(flat);
  // Differences at rounding level are not an increase.
  const bool increased = fz > f1 + 1e-12 * (1.0 + std::abs(f1));
  if (!increased) return true;
  return e.z > 1.0 && std::sin(2.0 * e.theta) > 0.0;
}

double f_rate(const Mat2& m, double b) {
  const XCoords x = to_xcoords(m);
  const double p = x.x1 - x.x4;
  const double q = x.x2 - x.x3;
  return 2.0 * b * p * q + p * p + q * q;
}

std::vector<double> f_along_trajectory(double b, const Pulse& pulse,
                                       std::size_t per_slice) {
  if (!(std::abs(b) < 1.0)) throw DomainError("f_along_trajectory: need |b| < 1");
  const auto samples = sample_trajectory(normal_form_system(b), pulse, per_slice);
  std::vector<double> out;
  out.reserve(samples.size());
  for (const Mat2& s : samples) out.push_back(f_of_matrix(s));
  return out;
}

}  // namespace symreach
