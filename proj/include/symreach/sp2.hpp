#pragma once

// Exact arithmetic on the single-mode symplectic algebra sp(2,R) (traceless
// real 2x2 matrices) and group Sp(2,R) (unit-determinant real 2x2 matrices).
//
// Basis used throughout:
//   K_x = 1/2 [[0, 1], [1, 0]]
//   K_y = 1/2 [[-1, 0], [0, 1]]
//   K_z = 1/2 [[0, -1], [1, 0]]
// with [K_x, K_y] = -K_z, [K_y, K_z] = K_x, [K_z, K_x] = K_y.

#include <string_view>

#include "symreach/mat2.hpp"

namespace symreach {

/// Coefficients of K_x, K_y, K_z.
struct BasisCoords {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr bool operator==(const BasisCoords&, const BasisCoords&) = default;
};

enum class StabilityClass { Parabolic, Hyperbolic, Elliptic };

std::string_view to_string(StabilityClass c);

/// Element of sp(2,R). Construction rejects matrices whose trace exceeds
/// `kTraceTolerance` in absolute value.
class AlgebraElement {
 public:
  static constexpr double kTraceTolerance = 1e-12;

  AlgebraElement() = default;
  explicit AlgebraElement(const Mat2& m);

  /// Removes the trace of `m` (m - tr(m)/2 I) instead of rejecting it. Used
  /// for results of exact algebra operations, whose trace is rounding noise.
  static AlgebraElement projected(const Mat2& m);

  static AlgebraElement from_coords(double x, double y, double z);
  static AlgebraElement from_coords(const BasisCoords& c) {
    return from_coords(c.x, c.y, c.z);
  }

  const Mat2& mat() const { return mat_; }
  BasisCoords coords() const;

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(double s, const AlgebraElement& a);

 private:
  struct Trusted {};
  AlgebraElement(const Mat2& m, Trusted) : mat_(m) {}

  Mat2 mat_{};
};

AlgebraElement Kx();
AlgebraElement Ky();
AlgebraElement Kz();

/// Element of Sp(2,R). The checked constructor requires
/// |det - 1| <= kDetTolerance * max(1, |m11 m22| + |m12 m21|).
class SymplecticMatrix {
 public:
  static constexpr double kDetTolerance = 1e-10;

  SymplecticMatrix() = default;
  explicit SymplecticMatrix(const Mat2& m);

  /// Wraps a product of group elements without re-checking the determinant.
  static SymplecticMatrix trusted(const Mat2& m) { return SymplecticMatrix(m, Trusted{}); }

  const Mat2& mat() const { return mat_; }
  SymplecticMatrix inverse() const { return trusted(unimodular_inverse(mat_)); }

  friend SymplecticMatrix operator*(const SymplecticMatrix& a, const SymplecticMatrix& b) {
    return trusted(a.mat_ * b.mat_);
  }

 private:
  struct Trusted {};
  SymplecticMatrix(const Mat2& m, Trusted) : mat_(m) {}

  Mat2 mat_ = Mat2::identity();
};

/// The symplectic form [[0, 1], [-1, 0]].
SymplecticMatrix omega();

/// Deviation of det from one, scaled as in the SymplecticMatrix check.
double symplectic_defect(const Mat2& m);

/// Throws NonTraceless unless |trace| <= AlgebraElement::kTraceTolerance.
BasisCoords to_basis_coords(const Mat2& m);
BasisCoords to_basis_coords(const AlgebraElement& m);

/// Tr[M^2] = 1/2 (x^2 + y^2 - z^2).
double trace_sq(const AlgebraElement& m);
double trace_product(const AlgebraElement& m, const AlgebraElement& n);

/// Sign of Tr[M^2]; zero band is |Tr[M^2]| <= 1e-12 (1 + |M|_F^2).
StabilityClass classify(const AlgebraElement& m);

/// e^{Mt}, closed form via Cayley-Hamilton (M^2 = -det(M) I).
SymplecticMatrix expm(const AlgebraElement& m, double t);

AlgebraElement commutator(const AlgebraElement& m, const AlgebraElement& n);

/// Tr[[M,N]^2] - 2 (Tr[MN]^2 - Tr[M^2] Tr[N^2]); identically zero.
double trace_identity_residual(const AlgebraElement& m, const AlgebraElement& n);

/// True iff A, B and [A,B] are linearly independent.
bool rank_criterion(const AlgebraElement& a, const AlgebraElement& b);

/// P M P^{-1} for symplectic P.
AlgebraElement conjugate(const SymplecticMatrix& p, const AlgebraElement& m);

}  // namespace symreach
