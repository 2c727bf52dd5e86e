#include <cmath>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>
#include <gtest/gtest.h>

#include "hml/log.hpp"
#include "hml/multiplier.hpp"
#include "hml/sobolev.hpp"

namespace {

using hml::cplx;

constexpr double kPi = std::numbers::pi;

// ||e^{-a|u|^2}||^2_{W^beta_2(R^d)} for beta = 0, 1, 2 from the Gaussian
// moments of its Fourier transform.
double gaussian_sobolev_sq(std::size_t d, double a, int beta) {
  const double base = std::pow(kPi / (2 * a), d / 2.0);
  const double dd = static_cast<double>(d);
  switch (beta) {
    case 0: return base;
    case 1: return base * (1 + dd * a);
    default: return base * (1 + 2 * dd * a + a * a * (dd * dd + 2 * dd));
  }
}

TEST(SobolevNorm, GaussianMoments) {
  for (std::size_t d : {1u, 2u}) {
    const double a = 4.0;
    auto g = [a](std::span<const double> u) {
      double r2 = 0.0;
      for (double v : u) r2 += v * v;
      return cplx(std::exp(-a * r2));
    };
    const double betas[] = {0.0, 1.0, 2.0};
    const auto res = hml::sobolev_norms(d, g, betas);
    for (int b = 0; b < 3; ++b) {
      EXPECT_NEAR(res[b].norm * res[b].norm / gaussian_sobolev_sq(d, a, b), 1.0, 1e-10) << d << " " << b;
      EXPECT_FALSE(res[b].tail_warning);
    }
    EXPECT_NEAR(hml::sobolev_norm(d, g, 1.0).norm, res[1].norm, 1e-14);
  }
}

TEST(LocalSobolevNorm, ConstantSymbolIsWindowNormForEveryJ) {
  const hml::Symbol one = hml::identity_symbol(1);
  const hml::Window eta = hml::default_window();
  const double ref = hml::sobolev_norm(1, [&](std::span<const double> u) { return cplx(eta.eta(u)); }, 2.0).norm;
  for (int j : {-8, 0, 5}) EXPECT_NEAR(hml::local_sobolev_norm(one, j, eta, 2.0).norm, ref, 1e-13 * ref) << j;
}

TEST(LocalSobolevNorm, ModulationShiftOracle) {
  // For real eta in d = 1: ||eta e^{iku}||^2_{W^1} = ||eta||^2_{W^1} + k^2 ||eta||^2_{L^2}.
  const hml::Window eta = hml::default_window();
  const double v = 3.0;
  const hml::Symbol mod("modulation", 1, [v](std::span<const double> u) { return std::exp(cplx(0.0, v * u[0])); }, 1.0);
  auto window = [&](std::span<const double> u) { return cplx(eta.eta(u)); };
  const double l2 = hml::sobolev_norm(1, window, 0.0).norm;
  const double w1 = hml::sobolev_norm(1, window, 1.0).norm;
  for (int j : {-1, 0, 1, 2}) {
    const double k = std::ldexp(v, j);
    const double want = std::sqrt(w1 * w1 + k * k * l2 * l2);
    EXPECT_NEAR(hml::local_sobolev_norm(mod, j, eta, 1.0).norm / want, 1.0, 1e-9) << j;
    EXPECT_NEAR(hml::local_sobolev_norm(mod, j, eta, 0.0).norm / l2, 1.0, 1e-12) << j;
  }
}

TEST(LocalSobolevNorm, BetaZeroIsL2ByDirectQuadrature) {
  const hml::Symbol ip = hml::laplace_type_imag_power(1, 1.0);
  const hml::Window eta = hml::alternate_window();
  double direct = 0.0;
  const int N = 200000;
  for (int i = 0; i < N; ++i) {
    const double u = 0.5 + 1.5 * (i + 0.5) / N;
    const double uu[] = {u};
    const double e = eta.eta(uu);
    const double s[] = {u * 4.0};
    direct += e * e * std::norm(ip(s)) * 1.5 / N;
  }
  EXPECT_NEAR(hml::local_sobolev_norm(ip, 2, eta, 0.0).norm, std::sqrt(direct), 1e-6 * std::sqrt(direct));
}

TEST(HormanderSup, FlatForLaplaceTypeAndDivergentForControl) {
  for (double gamma : {1.0, 2.0}) {
    const hml::SobolevProfile p = hml::hormander_sup(hml::laplace_type_imag_power(2, gamma), 2.1, -10, 10);
    EXPECT_LE(p.flatness, 1.5) << gamma;
    EXPECT_EQ(p.norms.size(), 21u);
    double mx = 0.0;
    for (const auto& [j, v] : p.norms) mx = std::max(mx, v);
    EXPECT_EQ(p.sup_norm, mx);
  }
  hml::ScopedLogCapture quiet;
  const hml::SobolevProfile bad = hml::hormander_sup(hml::divergent_symbol(1), 1.0, -10, 10);
  EXPECT_GE(bad.flatness, 10.0);
}

TEST(BesselPotentialKernel, ClosedForms) {
  for (double x : {0.1, 0.5, 1.0, 3.0}) {
    const double p[] = {x};
    EXPECT_NEAR(hml::bessel_potential_kernel({2.0, 0.0}, p).value.real(), std::exp(-x) / 2, 1e-10) << x;
    EXPECT_NEAR(hml::bessel_potential_kernel({1.0, 0.0}, p).value.real(), boost::math::cyl_bessel_k(0, x) / kPi, 1e-10) << x;
    const double p3[] = {x, 0.0, 0.0};
    EXPECT_NEAR(hml::bessel_potential_kernel({2.0, 0.0}, p3).value.real(), std::exp(-x) / (4 * kPi * x), 1e-10) << x;
    EXPECT_GT(hml::bessel_potential_kernel({0.7, 0.0}, p).value.real(), 0.0);
  }
}

TEST(BesselPotentialKernel, UnitMassForRealOrder) {
  // int_R G_s = 1; integrate the even kernel on a log grid.
  for (double s : {1.5, 3.0}) {
    double mass = 0.0;
    const double lo = std::log(1e-8), hi = std::log(60.0);
    const int N = 4000;
    for (int i = 0; i < N; ++i) {
      const double x = std::exp(lo + (hi - lo) * (i + 0.5) / N);
      const double p[] = {x};
      mass += 2.0 * hml::bessel_potential_kernel({s, 0.0}, p).value.real() * x * (hi - lo) / N;
    }
    EXPECT_NEAR(mass, 1.0, 1e-5) << s;
  }
}

TEST(PotentialFamily, ConstructionAndNorm) {
  const hml::PotentialFamily cosf("cos", 2.0, 1);
  const double u[] = {0.9};
  EXPECT_NEAR(cosf.n(u), std::pow(2.0, -1.0) * std::cos(0.9), 1e-12);
  EXPECT_EQ(cosf.potential_norm(), 1.0);
  const hml::PotentialFamily sign("sign", 1.5, 1);
  const double big[] = {50.0}, neg[] = {-50.0};
  EXPECT_NEAR(sign.n(big), 1.0, 1e-6);
  EXPECT_NEAR(sign.n(neg), -1.0, 1e-6);
  EXPECT_THROW(hml::PotentialFamily("nope", 1.0, 1), std::invalid_argument);
  EXPECT_TRUE(hml::potential_family_check(cosf, 1.5, -6, 6).passed());
}

}  // namespace
