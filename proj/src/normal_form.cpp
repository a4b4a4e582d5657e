#include "symreach/normal_form.hpp"

#include <cmath>
#include <sstream>

#include "symreach/errors.hpp"

namespace symreach {

Pulse NormalForm::to_normal(const Pulse& pulse) const {
  Pulse out{pulse.values, pulse.T * time_scale};
  for (double& v : out.values) v = to_normal_control(v);
  return out;
}

ControlSystem NormalForm::reconstruct() const {
  const SymplecticMatrix inv = P.inverse();
  const AlgebraElement drift = time_scale * AlgebraElement::from_coords(-1.0, 0.0, b) +
                               u_offset * Ky();
  return {conjugate(inv, drift), conjugate(inv, u_scale * Ky())};
}

bool is_unstable(const ControlSystem& sys) {
  const double aa = trace_sq(sys.drift);
  const double bb = trace_sq(sys.control);
  const double ab = trace_product(sys.drift, sys.control);
  return bb > 0.0 && aa > 0.0 && ab * ab - aa * bb < 0.0;
}

std::pair<SymplecticMatrix, double> hyperbolic_to_ky(const AlgebraElement& m) {
  if (classify(m) != StabilityClass::Hyperbolic) {
    std::ostringstream msg;
    msg << "hyperbolic_to_ky: " << m.mat() << " is " << to_string(classify(m));
    throw NotHyperbolic(msg.str());
  }
  const BasisCoords c = m.coords();
  const double rho = std::hypot(c.x, c.y);
  const double sigma = std::sqrt((rho - c.z) * (rho + c.z));
  if (!(sigma >= 1e-9 * m.mat().frobenius())) {
    throw NotHyperbolic("hyperbolic_to_ky: element too close to the parabolic boundary");
  }
  const double alpha = std::atan2(c.x, c.y);
  const double beta = std::asinh(c.z / sigma);
  const SymplecticMatrix p = expm(Kx(), beta) * expm(Kz(), alpha);
  return {p, sigma};
}

NormalForm normalize(const ControlSystem& sys) {
  if (!rank_criterion(sys.drift, sys.control)) {
    throw RankCriterionViolation("normalize: A, B and [A,B] are linearly dependent");
  }
  if (!is_unstable(sys)) {
    throw NotUnstable("normalize: the system has a non-hyperbolic accessible generator");
  }
  const auto [pb, sb] = hyperbolic_to_ky(sys.control);
  const BasisCoords a = conjugate(pb, sys.drift).coords();
  // |a.x| > |a.z| because the drift with the K_y part removed is still an
  // accessible, hence hyperbolic, generator.
  NormalForm nf;
  nf.time_scale = std::abs(a.x);
  nf.b = a.z / nf.time_scale;
  nf.u_scale = sb;
  nf.u_offset = a.y;
  nf.P = pb;
  if (a.x > 0.0) {
    nf.time_reversed = true;
    nf.P = omega() * pb;
    nf.u_scale = -sb;
    nf.u_offset = -a.y;
  }
  return nf;
}

}  // namespace symreach
