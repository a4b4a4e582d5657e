#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "symreach/errors.hpp"
#include "symreach/euler.hpp"

using namespace symreach;
using oracle::kPi;
using oracle::max_abs_diff;

namespace {

const Mat2 kDriftOne{std::cosh(1.0), -std::sinh(1.0), -std::sinh(1.0), std::cosh(1.0)};

EulerTriple random_triple(std::mt19937_64& rng, const RangeOffsets& o, double zmin = 1.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double lz = std::log(zmin) + u(rng) * (std::log(100.0) - std::log(zmin));
  return {o.theta0 - kPi + 2.0 * kPi * u(rng), std::exp(lz), o.phi0 - kPi / 2.0 + kPi * u(rng)};
}

}  // namespace

TEST(Decompose, DriftAtUnitTime) {
  const EulerTriple e = decompose(kDriftOne);
  EXPECT_NEAR(e.theta, -3.0 * kPi / 4.0, 1e-12);
  EXPECT_NEAR(e.z, std::exp(1.0), 1e-12);
  EXPECT_NEAR(e.phi, 3.0 * kPi / 4.0, 1e-12);
}

TEST(Decompose, IdentityUsesPhiOffset) {
  const EulerTriple e = decompose(Mat2::identity());
  EXPECT_DOUBLE_EQ(e.z, 1.0);
  EXPECT_DOUBLE_EQ(e.phi, kPi / 2.0);
  EXPECT_NEAR(e.theta, -kPi / 2.0, 1e-15);
  EXPECT_LT(max_abs_diff(compose(e).mat(), Mat2::identity()), 1e-15);
}

TEST(Decompose, DiagonalIsCanonical) {
  const EulerTriple e = decompose(Mat2::diag(1.0 / 3.0, 3.0), RangeOffsets{0.0, 0.0});
  EXPECT_NEAR(e.theta, 0.0, 1e-15);
  EXPECT_NEAR(e.z, 3.0, 1e-15);
  EXPECT_NEAR(e.phi, 0.0, 1e-15);
}

TEST(Decompose, RejectsNonSymplectic) {
  EXPECT_THROW(decompose(Mat2{1, 1, 0, 2}), NotSymplectic);
}

TEST(Decompose, RotationsHaveUnitZ) {
  for (double a : {-3.0, -1.0, 0.0, 0.5, 2.0, 3.1}) {
    const EulerTriple e = decompose(Mat2::rotation(a));
    EXPECT_DOUBLE_EQ(e.z, 1.0);
    EXPECT_DOUBLE_EQ(e.phi, kPi / 2.0);
    EXPECT_LT(max_abs_diff(compose(e).mat(), Mat2::rotation(a)), 1e-14);
  }
}

TEST(Compose, Examples) {
  EXPECT_LT(max_abs_diff(compose({0.0, 1.0, kPi / 2.0}).mat(), Mat2{0, -1, 1, 0}), 1e-15);
  EXPECT_LT(max_abs_diff(compose({-3.0 * kPi / 4.0, std::exp(1.0), 3.0 * kPi / 4.0}).mat(),
                         kDriftOne),
            1e-14);
  const Mat2 want = Mat2::rotation(kPi / 4.0) * Mat2::diag(0.5, 2.0);
  EXPECT_LT(max_abs_diff(compose({kPi / 4.0, 2.0, 0.0}).mat(), want), 1e-15);
}

TEST(Compose, MatchesEntrywiseOracle) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const EulerTriple e = random_triple(rng, {});
    const Mat2 want = oracle::rzr(e.theta, e.z, e.phi);
    EXPECT_LT(max_abs_diff(compose(e).mat(), want), 1e-13 * e.z);
    EXPECT_NEAR(compose(e).mat().det(), 1.0, 1e-10);
  }
}

TEST(IdentityLimit, ComposesToIdentity) {
  const EulerTriple e = identity_limit_triple();
  EXPECT_DOUBLE_EQ(e.theta, -3.0 * kPi / 4.0);
  EXPECT_DOUBLE_EQ(e.z, 1.0);
  EXPECT_DOUBLE_EQ(e.phi, 3.0 * kPi / 4.0);
  EXPECT_LT(max_abs_diff(compose(e).mat(), Mat2::identity()), 1e-15);
}

TEST(IdentityLimit, ThetaAlongShortTrajectories) {
  for (double n : {10.0, 100.0, 1000.0}) {
    const double t = 1.0 / n;
    const Mat2 s{std::cosh(t), -std::sinh(t), -std::sinh(t), std::cosh(t)};
    const EulerTriple e = decompose(s);
    EXPECT_NEAR(e.theta, -3.0 * kPi / 4.0, 1e-12);
    EXPECT_NEAR(e.phi, 3.0 * kPi / 4.0, 1e-12);
    EXPECT_NEAR(e.z, std::exp(t), 1e-12);
  }
}

TEST(Decompose, RoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    const EulerTriple e = random_triple(rng, {}, 1.0 + 1e-6);
    const EulerTriple back = decompose(compose(e));
    ASSERT_NEAR(back.theta, e.theta, 1e-9);
    ASSERT_NEAR(back.z, e.z, 1e-9 * e.z);
    ASSERT_NEAR(back.phi, e.phi, 1e-9);
  }
}

TEST(Decompose, ReconstructionAndSingularValues) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 10000; ++i) {
    const Mat2 s = oracle::random_symplectic(rng);
    const EulerTriple e = decompose(SymplecticMatrix::trusted(s));
    ASSERT_LT((compose(e).mat() - s).frobenius(), 1e-10 * s.frobenius());
    const auto [lo, hi] = oracle::singular_values(s);
    ASSERT_NEAR(e.z, std::max(1.0, hi), 1e-9 * hi);
    ASSERT_NEAR(lo * hi, 1.0, 1e-9);
  }
}

TEST(Decompose, RangeContainmentUnderOffsets) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> off(-4.0, 4.0);
  for (int k = 0; k < 8; ++k) {
    const RangeOffsets o{off(rng), off(rng)};
    for (int i = 0; i < 10000; ++i) {
      const Mat2 s = oracle::random_symplectic(rng);
      const EulerTriple e = decompose(SymplecticMatrix::trusted(s), o);
      ASSERT_TRUE(in_range(e, o)) << e.theta << ' ' << e.phi;
      ASSERT_LT((compose(e).mat() - s).frobenius(), 1e-10 * s.frobenius());
    }
  }
}

TEST(Decompose, AlternativeSolutionsFallOutsideRanges) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 2000; ++i) {
    const EulerTriple e = random_triple(rng, {}, 1.01);
    const Mat2 s = compose(e).mat();
    for (int n = -3; n <= 3; ++n) {
      for (int m = -3; m <= 3; ++m) {
        if (n == 0 && m == 0) continue;
        const EulerTriple alt{e.theta + n * kPi, e.z, e.phi + m * kPi};
        if (max_abs_diff(compose(alt).mat(), s) > 1e-9 * e.z) continue;
        ASSERT_FALSE(in_range(alt, {})) << n << ' ' << m;
      }
    }
    // Swapping the roles of the two singular values needs z -> 1/z < 1.
    const EulerTriple swapped{e.theta + kPi / 2.0, 1.0 / e.z, e.phi - kPi / 2.0};
    ASSERT_LT(max_abs_diff(compose(swapped).mat(), s), 1e-9 * e.z);
    ASSERT_FALSE(in_range(swapped, {}));
  }
}

TEST(WrapAngle, HalfOpen) {
  EXPECT_DOUBLE_EQ(wrap_angle(kPi, -kPi, 2.0 * kPi), -kPi);
  EXPECT_DOUBLE_EQ(wrap_angle(-kPi, -kPi, 2.0 * kPi), -kPi);
  EXPECT_NEAR(wrap_angle(7.0, -kPi, 2.0 * kPi), 7.0 - 2.0 * kPi, 1e-15);
  EXPECT_NEAR(wrap_angle(-7.0, 0.0, kPi), -7.0 + 3.0 * kPi, 1e-15);
  const double w = wrap_angle(std::nextafter(kPi, 0.0), -kPi, 2.0 * kPi);
  EXPECT_LT(w, kPi);
}
