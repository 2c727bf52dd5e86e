#include <cmath>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include "hml/specfun.hpp"

namespace {

using hml::bessel_i_scaled;
using hml::bessel_j;
using hml::e_kernel;
using hml::e_kernel_origin;
using hml::MultiIndex;

constexpr double kPi = std::numbers::pi;

TEST(BesselJ, ClosedFormExamples) {
  EXPECT_NEAR(bessel_j(0.5, kPi / 2), 2.0 / kPi, 1e-15);
  EXPECT_DOUBLE_EQ(bessel_j(0.0, 0.0), 1.0);
  EXPECT_NEAR(bessel_j(1.0, 1.0), 0.44005058574493351596, 1e-15);
}

TEST(BesselJ, HalfIntegerOrders) {
  for (double x : {1e-3, 0.1, 1.0, 7.5, 30.0, 200.0, 1500.0}) {
    const double s = std::sqrt(2.0 / (kPi * x));
    EXPECT_NEAR(bessel_j(0.5, x), s * std::sin(x), 1e-14 * (1.0 + s)) << x;
    EXPECT_NEAR(bessel_j(-0.5, x), s * std::cos(x), 1e-14 * (1.0 + s)) << x;
    EXPECT_NEAR(bessel_j(1.5, x), s * (std::sin(x) / x - std::cos(x)), 1e-13 * (1.0 + s)) << x;
  }
}

// Boost is the independent oracle across all three evaluation regimes.
TEST(BesselJ, AgreesWithBoostAcrossRegimes) {
  const double orders[] = {-0.5, -0.25, 0.0, 0.3, 0.5, 1.0, 2.5, 7.0, 15.5, 40.0};
  const double xs[] = {0.0, 1e-8, 1e-3, 0.5, 1.9, 2.1, 5.0, 12.0, 24.9, 25.1, 60.0, 250.0, 2000.0, 3.0e4};
  for (double nu : orders) {
    for (double x : xs) {
      if (x == 0.0 && nu < 0.0) continue;
      const double want = boost::math::cyl_bessel_j(nu, x);
      const double got = bessel_j(nu, x);
      const double scale = std::max(std::abs(want), 1e-3 * std::min(1.0, std::sqrt(2.0 / (kPi * std::max(x, 1.0)))));
      EXPECT_NEAR(got, want, 1e-12 * scale + 1e-300) << "nu=" << nu << " x=" << x;
    }
  }
}

TEST(BesselJ, ThreeTermRecurrence) {
  for (double x : {0.7, 3.3, 18.0, 90.0}) {
    for (double nu : {0.25, 1.0, 3.5}) {
      const double lhs = bessel_j(nu - 1.0, x) + bessel_j(nu + 1.0, x);
      const double rhs = 2.0 * nu / x * bessel_j(nu, x);
      EXPECT_NEAR(lhs, rhs, 1e-12) << nu << " " << x;
    }
  }
}

TEST(BesselJ, ZeroArgumentForNegativeOrderIsInfinite) { EXPECT_TRUE(std::isinf(bessel_j(-0.25, 0.0))); }

TEST(BesselIScaled, Examples) {
  EXPECT_NEAR(bessel_i_scaled(-0.5, 1.0), std::exp(-1.0) * std::sqrt(2.0 / kPi) * std::cosh(1.0), 1e-15);
  EXPECT_DOUBLE_EQ(bessel_i_scaled(0.5, 0.0), 0.0);
  EXPECT_NEAR(bessel_i_scaled(0.0, 2.0), 0.30850832255367103953, 1e-15);
}

TEST(BesselIScaled, AgreesWithBoost) {
  for (double mu : {-0.5, -0.2, 0.0, 0.5, 1.0, 3.5, 12.0}) {
    for (double x : {1e-6, 0.1, 1.0, 4.0, 20.0, 80.0, 300.0}) {
      const double want = boost::math::cyl_bessel_i(mu, x) * std::exp(-x);
      EXPECT_NEAR(bessel_i_scaled(mu, x), want, 1e-12 * std::abs(want) + 1e-300) << mu << " " << x;
    }
  }
  // Beyond the range of the unscaled function: e^{-x} I_mu(x) ~ 1 / sqrt(2 pi x).
  const double x = 1e4;
  EXPECT_NEAR(bessel_i_scaled(0.0, x) * std::sqrt(2.0 * kPi * x), 1.0, 1e-4);
}

TEST(Gamma, RealAxisAgreesWithTgamma) {
  for (double x : {0.1, 0.5, 1.0, 2.5, 7.0, 20.0, -0.5, -2.3}) {
    const std::complex<double> g = hml::gamma({x, 0.0});
    EXPECT_NEAR(g.real() / std::tgamma(x), 1.0, 1e-14) << x;
    EXPECT_EQ(g.imag(), 0.0);
  }
}

TEST(Gamma, ComplexIdentities) {
  for (double y : {0.5, 1.0, 2.0, 5.0}) {
    // |Gamma(iy)|^2 = pi / (y sinh(pi y)).
    const double mod2 = std::norm(hml::gamma({0.0, y}));
    EXPECT_NEAR(mod2 / (kPi / (y * std::sinh(kPi * y))), 1.0, 1e-13) << y;
    // Gamma(z + 1) = z Gamma(z).
    const std::complex<double> z(0.3, y);
    const std::complex<double> ratio = hml::gamma(z + 1.0) / (z * hml::gamma(z));
    EXPECT_NEAR(std::abs(ratio - 1.0), 0.0, 1e-13);
    // Reflection Gamma(z) Gamma(1 - z) = pi / sin(pi z).
    const std::complex<double> refl = hml::gamma(z) * hml::gamma(1.0 - z) * std::sin(kPi * z) / kPi;
    EXPECT_NEAR(std::abs(refl - 1.0), 0.0, 1e-12);
  }
}

TEST(EKernel, HalfAlphaIsBesselJ0Product) {
  const MultiIndex a({0.5, 0.5});
  const double x[] = {1.3, 0.4}, lam[] = {2.0, 7.5};
  const double want = boost::math::cyl_bessel_j(0, 2.6) * boost::math::cyl_bessel_j(0, 3.0);
  EXPECT_NEAR(e_kernel(a, x, lam), want, 1e-14);
}

TEST(EKernel, AlphaZeroIsScaledCosine) {
  const MultiIndex a({0.0});
  for (double s : {0.01, 1.0, 3.7, 40.0}) {
    const double x[] = {s}, lam[] = {1.0};
    EXPECT_NEAR(e_kernel(a, x, lam), std::sqrt(2.0 / kPi) * std::cos(s), 1e-14) << s;
  }
}

TEST(EKernel, ContinuousAtZeroFrequency) {
  for (double alpha : {0.0, 0.5, 1.0, 2.3}) {
    const MultiIndex a({alpha});
    const double nu = alpha - 0.5;
    const double origin = std::pow(2.0, -nu) / boost::math::tgamma(nu + 1.0);
    EXPECT_NEAR(e_kernel_origin(a), origin, 1e-14);
    const double x[] = {2.0}, zero[] = {0.0}, tiny[] = {1e-7};
    EXPECT_NEAR(e_kernel(a, x, zero), origin, 1e-14);
    EXPECT_NEAR(e_kernel(a, x, tiny), origin, 1e-12);
  }
}

TEST(EKernel, SymmetricInItsArguments) {
  const MultiIndex a({0.2, 1.5});
  const double x[] = {0.9, 3.1}, lam[] = {4.2, 0.35};
  const double xl[] = {0.9 * 4.2, 3.1 * 0.35}, one[] = {1.0, 1.0};
  EXPECT_NEAR(e_kernel(a, x, lam), e_kernel(a, lam, x), 1e-15);
  EXPECT_NEAR(e_kernel(a, x, lam), e_kernel(a, xl, one), 1e-15);
}

TEST(EKernel, OriginValueIsSupremum) {
  // |E_x(lambda)| <= E(0) for alpha >= 0.
  for (double alpha : {0.0, 0.5, 1.5}) {
    const MultiIndex a({alpha});
    for (double s = 0.37; s < 60.0; s += 0.37) {
      const double x[] = {s}, one[] = {1.0};
      EXPECT_LE(std::abs(e_kernel(a, x, one)), e_kernel_origin(a) * (1.0 + 1e-14));
    }
  }
}

TEST(MultiIndex, RejectsOrdersAtOrBelowMinusHalf) {
  EXPECT_THROW(MultiIndex({-0.5}), std::invalid_argument);
  EXPECT_THROW(MultiIndex({0.5, -1.0}), std::invalid_argument);
  EXPECT_NEAR(MultiIndex({0.5, 1.0}).homogeneous_dimension(), 5.0, 1e-15);
}

}  // namespace
