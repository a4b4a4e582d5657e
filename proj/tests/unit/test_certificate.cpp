#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "symreach/certificate.hpp"
#include "symreach/errors.hpp"
#include "symreach/propagate.hpp"

using namespace symreach;
using oracle::kPi;

namespace {

EulerTriple random_triple(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {-kPi + 2.0 * kPi * u(rng), std::pow(100.0, u(rng)), kPi * u(rng)};
}

Pulse random_pulse(std::mt19937_64& rng, std::size_t q, double umax, double T) {
  std::uniform_real_distribution<double> u(-umax, umax);
  Pulse p{std::vector<double>(q), T};
  for (double& v : p.values) v = u(rng);
  return p;
}

}  // namespace

TEST(XCoords, RoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    const Mat2 m{u(rng), u(rng), u(rng), u(rng)};
    EXPECT_LT(oracle::max_abs_diff(from_xcoords(to_xcoords(m)), m), 1e-14);
  }
  const XCoords x = to_xcoords(Mat2{0, -1, 1, 0});
  EXPECT_DOUBLE_EQ(x.x1, 0.0);
  EXPECT_DOUBLE_EQ(x.x2, -1.0);
  EXPECT_DOUBLE_EQ(x.x3, 0.0);
  EXPECT_DOUBLE_EQ(x.x4, 0.0);
}

TEST(FOfMatrix, Examples) {
  EXPECT_DOUBLE_EQ(f_of_matrix(Mat2::identity()), 1.0);
  EXPECT_DOUBLE_EQ(f_of_matrix(Mat2{0, -1, 1, 0}), -1.0);
}

TEST(FOfMatrix, DriftAloneNeverBelowOne) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ut(0.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const Mat2 s = oracle::series_expm((-1.0 * Kx()).mat(), ut(rng));
    EXPECT_GE(f_of_matrix(s), 1.0 - 1e-12);
  }
}

TEST(FOfMatrix, RotationsAreCertifiedUnreachable) {
  for (int k = 0; k <= 720; ++k) {
    const double a = -kPi + k * kPi / 360.0;
    const double f = f_of_matrix(Mat2::rotation(a));
    EXPECT_NEAR(f, std::cos(2.0 * a), 1e-15);
    EXPECT_LE(f, 1.0 + 1e-15);
    if (std::abs(std::sin(a)) > 1e-6) EXPECT_LT(f, 1.0);
  }
}

TEST(GFactor, Examples) {
  for (double phi : {-1.0, 0.0, 0.3, 2.0}) {
    EXPECT_NEAR(g_factor(1.0, phi), std::sin(2.0 * phi), 1e-15);
    EXPECT_NEAR(g_excess(1.0, phi), 0.0, 1e-15);
  }
  EXPECT_NEAR(g_factor(2.0, kPi / 4.0), 0.25, 1e-15);
}

TEST(GFactor, ExcessIsNeverPositive) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    const EulerTriple e = random_triple(rng);
    EXPECT_NEAR(g_excess(e.z, e.phi), g_factor(e.z, e.phi) - std::sin(2.0 * e.phi),
                1e-12 * e.z * e.z);
    EXPECT_LE(g_excess(e.z, e.phi), 1e-12);
  }
}

TEST(GFactor, RejectsSmallZ) { EXPECT_THROW(g_factor(0.5, 0.0), DomainError); }

TEST(Fz, Examples) {
  EXPECT_NEAR(fz_of_triple(identity_limit_triple()), 1.0, 1e-15);
  EXPECT_NEAR(fz_of_triple({0.0, 3.0, 0.0}), 1.0, 1e-15);
}

TEST(Fz, CoordinateChangeOracle) {
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const EulerTriple e = random_triple(rng);
    const double want = oracle::certificate(oracle::rzr(e.theta, e.z, e.phi));
    worst = std::max(worst, std::abs(fz_of_triple(e) - want));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Fz, CompactFormAgrees) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 10000; ++i) {
    const EulerTriple e = random_triple(rng);
    ASSERT_NEAR(fz_compact(e), fz_of_triple(e), 1e-10 * e.z * e.z);
  }
}

TEST(Fz, DifferenceAngleVariantDisagrees) {
  // cos 2(theta - phi) - delta sin 2theta is not the same function.
  const EulerTriple e{0.4, 2.0, 1.1};
  const double delta = g_excess(e.z, e.phi);
  const double variant = std::cos(2.0 * (e.theta - e.phi)) - delta * std::sin(2.0 * e.theta);
  EXPECT_GT(std::abs(variant - fz_of_triple(e)), 0.1);
}

TEST(MinZ, Examples) {
  EXPECT_DOUBLE_EQ(min_z_for_f(1.0), 1.0);
  EXPECT_DOUBLE_EQ(min_z_for_f(7.0), 2.0);
  EXPECT_THROW(min_z_for_f(0.5), DomainError);
}

TEST(MinZ, MonteCarloBound) {
  std::mt19937_64 rng(17);
  for (double d : {1.0, 2.0, 3.0, 7.0}) {
    const double bound = min_z_for_f(d);
    std::size_t hits = 0;
    for (int i = 0; i < 100000; ++i) {
      const EulerTriple e = random_triple(rng);
      if (fz_of_triple(e) > d) {
        ++hits;
        ASSERT_GT(e.z, bound - 1e-9);
      }
    }
    EXPECT_GT(hits, 1000u);
  }
}

TEST(SignCheck, Examples) {
  EXPECT_TRUE(sin2theta_sign_check({-3.0 * kPi / 4.0 + 0.1, 2.0, 3.0 * kPi / 4.0}));
  EXPECT_GT(std::sin(2.0 * (-3.0 * kPi / 4.0 + 0.1)), 0.0);
  const EulerTriple neg{kPi / 4.0 + kPi / 2.0, 2.0, 0.0};
  EXPECT_LT(std::sin(2.0 * neg.theta), 0.0);
  EXPECT_LE(fz_of_triple(neg), fz_of_triple({neg.theta, 1.0, neg.phi}) + 1e-12);
  EXPECT_TRUE(sin2theta_sign_check(neg));
  EXPECT_TRUE(sin2theta_sign_check({0.3, 1.0, 1.0}));
}

TEST(SignCheck, HoldsOnSamples) {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 100000; ++i) ASSERT_TRUE(sin2theta_sign_check(random_triple(rng)));
}

TEST(Trajectory, ZeroPulse) {
  const auto f = f_along_trajectory(0.0, Pulse{std::vector<double>(10, 0.0), 1.0});
  EXPECT_EQ(f.size(), 1u + 10u * 50u);
  EXPECT_DOUBLE_EQ(f.front(), 1.0);
  const Mat2 s = oracle::series_expm((-1.0 * Kx()).mat(), 1.0);
  EXPECT_NEAR(f.back(), oracle::certificate(s), 1e-12);
  EXPECT_GE(f.back(), 1.0);
}

TEST(Trajectory, MonotoneAndUnitInitialRate) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ub(-0.999, 0.999);
  for (int i = 0; i < 100; ++i) {
    const double b = ub(rng);
    const Pulse p = random_pulse(rng, 10, 5.0, 2.0);
    const auto f = f_along_trajectory(b, p);
    ASSERT_NEAR(f.front(), 1.0, 1e-12);
    for (std::size_t k = 1; k < f.size(); ++k) ASSERT_GE(f[k], f[k - 1] - 1e-9);
    const double h = 1e-6;
    const Pulse tiny{{p.values[0]}, h};
    const double slope = (f_along_trajectory(b, tiny, 1).back() - 1.0) / h;
    EXPECT_NEAR(slope, 1.0, 1e-3);
  }
}

TEST(Trajectory, RejectsUnitB) {
  EXPECT_THROW(f_along_trajectory(1.0, Pulse{{0.0}, 1.0}), DomainError);
}

TEST(Rate, MatchesFiniteDifference) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> ub(-0.99, 0.99);
  std::uniform_real_distribution<double> uu(-5.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double b = ub(rng);
    const ControlSystem sys = normal_form_system(b);
    const Mat2 s = propagate(sys, random_pulse(rng, 10, 5.0, 1.0)).mat();
    const double u = uu(rng);
    const Mat2 g = sys.generator(u).mat();
    const double h = 1e-5;
    const double fp = f_of_matrix(oracle::series_expm(g, h) * s);
    const double fm = f_of_matrix(oracle::series_expm(g, -h) * s);
    const double fd = (fp - fm) / (2.0 * h);
    const double rate = f_rate(s, b);
    ASSERT_NEAR(rate, fd, 1e-5 * std::max(1.0, std::abs(fd)));
    ASSERT_GE(rate, 0.0);
  }
}
