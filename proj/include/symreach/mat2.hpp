#pragma once

#include <cmath>
#include <ostream>

namespace symreach {

/// Real 2x2 matrix stored row-major.
struct Mat2 {
  double m11 = 0.0;
  double m12 = 0.0;
  double m21 = 0.0;
  double m22 = 0.0;

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 zero() { return {}; }
  static constexpr Mat2 diag(double a, double d) { return {a, 0.0, 0.0, d}; }

  /// Rotation by `theta`: [[cos, -sin], [sin, cos]].
  static Mat2 rotation(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c, -s, s, c};
  }

  constexpr double trace() const { return m11 + m22; }
  constexpr double det() const { return m11 * m22 - m12 * m21; }
  constexpr Mat2 transpose() const { return {m11, m21, m12, m22}; }

  /// Sum of squared entries.
  constexpr double frobenius_sq() const {
    return m11 * m11 + m12 * m12 + m21 * m21 + m22 * m22;
  }
  double frobenius() const { return std::sqrt(frobenius_sq()); }

  bool is_finite() const {
    return std::isfinite(m11) && std::isfinite(m12) && std::isfinite(m21) &&
           std::isfinite(m22);
  }

  constexpr Mat2& operator+=(const Mat2& o) {
    m11 += o.m11;
    m12 += o.m12;
    m21 += o.m21;
    m22 += o.m22;
    return *this;
  }
  constexpr Mat2& operator-=(const Mat2& o) {
    m11 -= o.m11;
    m12 -= o.m12;
    m21 -= o.m21;
    m22 -= o.m22;
    return *this;
  }
  constexpr Mat2& operator*=(double s) {
    m11 *= s;
    m12 *= s;
    m21 *= s;
    m22 *= s;
    return *this;
  }

  friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

constexpr Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
constexpr Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
constexpr Mat2 operator-(const Mat2& a) { return {-a.m11, -a.m12, -a.m21, -a.m22}; }
constexpr Mat2 operator*(Mat2 a, double s) { return a *= s; }
constexpr Mat2 operator*(double s, Mat2 a) { return a *= s; }

constexpr Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
          a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

/// Frobenius inner product Tr[a^T b].
constexpr double frobenius_dot(const Mat2& a, const Mat2& b) {
  return a.m11 * b.m11 + a.m12 * b.m12 + a.m21 * b.m21 + a.m22 * b.m22;
}

/// Inverse of a unit-determinant matrix (the adjugate).
constexpr Mat2 unimodular_inverse(const Mat2& a) {
  return {a.m22, -a.m12, -a.m21, a.m11};
}

inline std::ostream& operator<<(std::ostream& os, const Mat2& m) {
  return os << "[[" << m.m11 << ", " << m.m12 << "], [" << m.m21 << ", "
            << m.m22 << "]]";
}

}  // namespace symreach
