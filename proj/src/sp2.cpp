#include "symreach/sp2.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "symreach/errors.hpp"

namespace symreach {

namespace {

// Removes rounding-level trace so results of exact algebra operations stay in
// sp(2,R) without tripping the checked constructor.
Mat2 project_traceless(Mat2 m) {
  const double half = 0.5 * m.trace();
  m.m11 -= half;
  m.m22 -= half;
  return m;
}

// Below this value of |det M| t^2 the exponential uses truncated series for
// the cos/cosh and sin/sinh ratio functions.
constexpr double kSeriesThreshold = 1e-8;

}  // namespace

std::string_view to_string(StabilityClass c) {
  switch (c) {
    case StabilityClass::Parabolic:
      return "parabolic";
    case StabilityClass::Hyperbolic:
      return "hyperbolic";
    case StabilityClass::Elliptic:
      return "elliptic";
  }
  return "unknown";
}

AlgebraElement::AlgebraElement(const Mat2& m) : mat_(m) {
  if (!m.is_finite()) {
    throw DomainError("algebra element has non-finite entries");
  }
  if (std::abs(m.trace()) > kTraceTolerance) {
    std::ostringstream msg;
    msg << "matrix " << m << " is not traceless (trace " << m.trace() << ")";
    throw NonTraceless(msg.str());
  }
}

AlgebraElement AlgebraElement::projected(const Mat2& m) {
  if (!m.is_finite()) {
    throw DomainError("algebra element has non-finite entries");
  }
  return AlgebraElement(project_traceless(m), Trusted{});
}

AlgebraElement AlgebraElement::from_coords(double x, double y, double z) {
  return AlgebraElement({-0.5 * y, 0.5 * (x - z), 0.5 * (x + z), 0.5 * y}, Trusted{});
}

BasisCoords AlgebraElement::coords() const {
  return {mat_.m21 + mat_.m12, mat_.m22 - mat_.m11, mat_.m21 - mat_.m12};
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  return AlgebraElement(project_traceless(a.mat_ + b.mat_), AlgebraElement::Trusted{});
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  return AlgebraElement(project_traceless(a.mat_ - b.mat_), AlgebraElement::Trusted{});
}

AlgebraElement operator*(double s, const AlgebraElement& a) {
  return AlgebraElement(project_traceless(s * a.mat_), AlgebraElement::Trusted{});
}

AlgebraElement Kx() { return AlgebraElement::from_coords(1.0, 0.0, 0.0); }
AlgebraElement Ky() { return AlgebraElement::from_coords(0.0, 1.0, 0.0); }
AlgebraElement Kz() { return AlgebraElement::from_coords(0.0, 0.0, 1.0); }

double symplectic_defect(const Mat2& m) {
  const double scale =
      std::max(1.0, std::abs(m.m11 * m.m22) + std::abs(m.m12 * m.m21));
  return std::abs(m.det() - 1.0) / scale;
}

SymplecticMatrix::SymplecticMatrix(const Mat2& m) : mat_(m) {
  if (!m.is_finite() || symplectic_defect(m) > kDetTolerance) {
    std::ostringstream msg;
    msg << "matrix " << m << " is not symplectic (det " << m.det() << ")";
    throw NotSymplectic(msg.str());
  }
}

SymplecticMatrix omega() { return SymplecticMatrix::trusted({0.0, 1.0, -1.0, 0.0}); }

BasisCoords to_basis_coords(const Mat2& m) { return AlgebraElement(m).coords(); }
BasisCoords to_basis_coords(const AlgebraElement& m) { return m.coords(); }

double trace_sq(const AlgebraElement& m) {
  const Mat2& a = m.mat();
  return a.m11 * a.m11 + 2.0 * a.m12 * a.m21 + a.m22 * a.m22;
}

double trace_product(const AlgebraElement& m, const AlgebraElement& n) {
  return (m.mat() * n.mat()).trace();
}

StabilityClass classify(const AlgebraElement& m) {
  const double tr = trace_sq(m);
  const double band = 1e-12 * (1.0 + m.mat().frobenius_sq());
  if (std::abs(tr) <= band) return StabilityClass::Parabolic;
  return tr > 0.0 ? StabilityClass::Hyperbolic : StabilityClass::Elliptic;
}

SymplecticMatrix expm(const AlgebraElement& m, double t) {
  if (!std::isfinite(t)) throw DomainError("expm: non-finite time");
  // M^2 = -det(M) I, so e^{Mt} = C I + S M with scalar C, S depending on
  // det(M) t^2 only.
  const double d = m.mat().det();
  const double x = d * t * t;
  double c = 0.0;
  double s = 0.0;
  if (std::abs(x) < kSeriesThreshold) {
    c = 1.0 - x / 2.0 + x * x / 24.0 - x * x * x / 720.0;
    s = t * (1.0 - x / 6.0 + x * x / 120.0 - x * x * x / 5040.0);
  } else if (d > 0.0) {
    const double w = std::sqrt(d);
    c = std::cos(w * t);
    s = std::sin(w * t) / w;
  } else {
    const double k = std::sqrt(-d);
    c = std::cosh(k * t);
    s = std::sinh(k * t) / k;
  }
  const Mat2& a = m.mat();
  return SymplecticMatrix::trusted(
      {c + s * a.m11, s * a.m12, s * a.m21, c + s * a.m22});
}

AlgebraElement commutator(const AlgebraElement& m, const AlgebraElement& n) {
  return AlgebraElement::projected(m.mat() * n.mat() - n.mat() * m.mat());
}

double trace_identity_residual(const AlgebraElement& m, const AlgebraElement& n) {
  const double lhs = trace_sq(commutator(m, n));
  const double mn = trace_product(m, n);
  const double rhs = 2.0 * mn * mn - 2.0 * trace_sq(n) * trace_sq(m);
  return lhs - rhs;
}

bool rank_criterion(const AlgebraElement& a, const AlgebraElement& b) {
  const BasisCoords p = a.coords();
  const BasisCoords q = b.coords();
  const BasisCoords r = commutator(a, b).coords();
  const double det = p.x * (q.y * r.z - q.z * r.y) - p.y * (q.x * r.z - q.z * r.x) +
                     p.z * (q.x * r.y - q.y * r.x);
  const auto norm = [](const BasisCoords& v) {
    return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
  };
  const double scale = norm(p) * norm(q) * norm(r);
  return scale > 0.0 && std::abs(det) > 1e-10 * scale;
}

AlgebraElement conjugate(const SymplecticMatrix& p, const AlgebraElement& m) {
  return AlgebraElement::projected(p.mat() * m.mat() * unimodular_inverse(p.mat()));
}

}  // namespace symreach
