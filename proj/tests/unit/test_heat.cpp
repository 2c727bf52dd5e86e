#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hml/heat.hpp"
#include "hml/log.hpp"
#include "hml/multiplier.hpp"
#include "hml/symbol.hpp"

namespace {

using hml::GridFunction;
using hml::HeatKernelEval;
using hml::MultiIndex;
using hml::Point;
using hml::TimeGrid;
using hml::TransformPlan;

constexpr double kPi = std::numbers::pi;

// alpha = 0: the Neumann heat kernel of the half-line.
double neumann_kernel(double t, double x, double y) {
  return (std::exp(-(x - y) * (x - y) / (4 * t)) + std::exp(-(x + y) * (x + y) / (4 * t))) / std::sqrt(4 * kPi * t);
}

// alpha = 1: the radial heat kernel of R^3 against x^2 dx.
double radial3_kernel(double t, double x, double y) {
  const double z = x * y / (2 * t);
  const double shape = z < 1e-8 ? 1.0 : std::sinh(z) / z;
  return 4 * kPi * std::pow(4 * kPi * t, -1.5) * std::exp(-(x * x + y * y) / (4 * t)) * shape;
}

TEST(HeatKernel, ClosedFormsAtAlphaZeroAndOne) {
  const HeatKernelEval h0(MultiIndex({0.0})), h1(MultiIndex({1.0}));
  for (double t : {0.01, 0.3, 1.0, 7.0}) {
    for (double x : {0.02, 0.5, 2.0, 4.0}) {
      for (double y : {0.1, 1.0, 3.0}) {
        const double p[] = {x}, q[] = {y};
        const double a = neumann_kernel(t, x, y), b = radial3_kernel(t, x, y);
        EXPECT_NEAR(heat_kernel(h0, t, p, q), a, 1e-12 * a + 1e-300) << t << " " << x << " " << y;
        EXPECT_NEAR(heat_kernel(h1, t, p, q), b, 1e-12 * b + 1e-300) << t << " " << x << " " << y;
      }
    }
  }
}

TEST(HeatKernel, NormalizationAndSymmetry) {
  for (double alpha : {-0.3, 0.5, 2.0}) {
    const HeatKernelEval hk(MultiIndex({alpha}));
    EXPECT_GT(hk.normalization()[0], 0.0);
    EXPECT_LT(hk.verification_residual(), 1e-8);
    for (double y : {0.05, 0.7, 3.0, 9.0}) EXPECT_NEAR(hk.axis_mass(0, y), 1.0, 1e-6) << alpha << " " << y;
  }
  const HeatKernelEval hk(MultiIndex({0.5, 1.5}));
  const Point x{0.4, 2.0}, y{1.1, 0.3};
  EXPECT_EQ(hk(0.6, x, y), hk(0.6, y, x));
  // The product kernel factorizes over the axes.
  EXPECT_NEAR(hk(0.6, x, y), hk.axis_kernel(0, 0.6, 0.4, 1.1) * hk.axis_kernel(1, 0.6, 2.0, 0.3), 1e-15);
}

TEST(HeatKernel, SpectralRouteAgrees) {
  const auto plan = TransformPlan::make(MultiIndex({0.5}), 16.0, 38.7, 1024);
  const HeatKernelEval hk(plan->alpha());
  const Point y{2.0};
  for (double t : {0.25, 1.0}) {
    GridFunction g = hml::sample_dual(*plan, [t](std::span<const double> l) { return hml::cplx(std::exp(-t * l[0] * l[0])); });
    g *= hml::e_kernel_on_dual(*plan, y);
    const GridFunction spectral = inverse_hankel(*plan, g);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < spectral.size(); ++i) {
      const Point x = plan->spatial()->node(i);
      if (x[0] > 8.0) break;
      const double exact = heat_kernel(hk, t, x, y);
      worst = std::max(worst, std::abs(spectral[i].real() - exact));
      scale = std::max(scale, exact);
    }
    EXPECT_LT(worst / scale, 1e-6) << t;
  }
}

TEST(HeatApply, ConstantsSemigroupAndMultiplierRoute) {
  const auto plan = TransformPlan::make(MultiIndex({0.5}), 16.0, 38.7, 1024);
  const HeatKernelEval hk(plan->alpha());
  GridFunction one(plan->spatial());
  for (auto& v : one.values()) v = 1.0;
  const GridFunction t1 = heat_apply(hk, 1.0, one);
  for (std::size_t i = 0; i < t1.size(); ++i) {
    if (plan->spatial()->node(i)[0] > 2.0) break;
    EXPECT_NEAR(t1[i].real(), 1.0, 1e-6);
  }
  const GridFunction f = GridFunction::sample_real(plan->spatial(), [](std::span<const double> x) { return std::exp(-x[0] * x[0] / 2); });
  const GridFunction a = heat_apply(hk, 0.5, heat_apply(hk, 0.5, f));
  const GridFunction b = heat_apply(hk, 1.0, f);
  EXPECT_LT(norm(a - b, 2.0) / norm(b, 2.0), 1e-6);
  const GridFunction c = apply_multiplier(*plan, hml::heat_symbol(1, 1.0), f);
  EXPECT_LT(norm(c - b, 2.0) / norm(b, 2.0), 1e-7);
  const GridFunction d = heat_apply(*plan, 1.0, f);
  EXPECT_LT(norm(d - b, 2.0) / norm(b, 2.0), 1e-7);
}

TEST(HeatApply, ClipsUnresolvableTimes) {
  const auto g = hml::Grid::make(MultiIndex({0.5}), 16.0, 256);
  const HeatKernelEval hk(g->alpha());
  const GridFunction f = GridFunction::sample_real(g, [](std::span<const double> x) { return std::exp(-x[0] * x[0]); });
  EXPECT_GT(hml::min_resolvable_time(*g), 0.0);
  hml::ScopedLogCapture capture;
  (void)heat_apply(hk, 1e-9, f);
  EXPECT_FALSE(capture.warnings().empty());
}

TEST(TimeGrid, SpacingScalingAndRefinement) {
  const TimeGrid d = TimeGrid::defaults();
  EXPECT_EQ(d.t.size(), 64u);
  EXPECT_NEAR(d.t_min(), 1e-4, 1e-18);
  EXPECT_NEAR(d.t_max(), 1e4, 1e-8);
  const double q = d.t[1] / d.t[0];
  for (std::size_t i = 1; i < d.t.size(); ++i) EXPECT_NEAR(d.t[i] / d.t[i - 1], q, 1e-12);
  const TimeGrid s = d.scaled(3.0);
  EXPECT_NEAR(s.t_min(), 3e-4, 1e-16);
  const TimeGrid r = d.refined();
  EXPECT_GT(r.t.size(), d.t.size());
  EXPECT_NEAR(r.t_max(), d.t_max(), 1e-8);
}

TEST(MaximalFunction, DominatesEveryTimeAndFixesConstants) {
  const auto g = hml::Grid::make(MultiIndex({0.5}), 16.0, 512);
  const HeatKernelEval hk(g->alpha());
  const GridFunction f = GridFunction::sample_real(g, [](std::span<const double> x) { return std::exp(-2.0 * (x[0] - 3) * (x[0] - 3)); });
  const TimeGrid tg = TimeGrid::log_spaced(0.05, 5.0, 10);
  const GridFunction mf = maximal_function(hk, tg, f);
  for (double t : tg.t) {
    const GridFunction tf = heat_apply(hk, t, f);
    for (std::size_t i = 0; i < tf.size(); ++i) EXPECT_GE(mf[i].real(), std::abs(tf[i]) - 1e-15);
  }
  GridFunction one(g);
  for (auto& v : one.values()) v = 1.0;
  const GridFunction m1 = maximal_function(hk, tg, one);
  for (std::size_t i = 0; i < m1.size(); ++i) {
    if (g->node(i)[0] > 2.0) break;
    EXPECT_NEAR(m1[i].real(), 1.0, 1e-6);
  }
}

TEST(MaximalFunction, TimeGridRefinementIsStable) {
  const auto plan = TransformPlan::make(MultiIndex({0.5}), 16.0, 38.7, 1024);
  const GridFunction f = GridFunction::sample_real(plan->spatial(), [](std::span<const double> x) { return std::exp(-x[0] * x[0] / 2); });
  const double a = norm(maximal_function(*plan, TimeGrid::defaults(), f), 1.0);
  const double b = norm(maximal_function(*plan, TimeGrid::defaults().refined(), f), 1.0);
  EXPECT_LT(std::abs(a - b) / b, 0.01);
}

TEST(GaussianBound, PositivityAndBandsInBothRegimes) {
  const HeatKernelEval hk(MultiIndex({0.5}));
  const auto coarse = hml::heat_sample_lattice(1, 1e-2, 1e2, 0.05, 20.0, 6);
  const auto fine = hml::heat_sample_lattice(1, 1e-2, 1e2, 0.05, 20.0, 12);
  const hml::EstimateReport r = gaussian_bound_check(hk, coarse, fine);
  EXPECT_TRUE(r.passed()) << r.to_table();
  EXPECT_GE(r.fitted_value("min_kernel_value"), 0.0);
  EXPECT_LE(r.fitted_value("band_ratio_xy_below_t"), 10.0);
  EXPECT_LE(r.fitted_value("band_ratio_xy_above_t"), 10.0);
}

TEST(HeatLipschitz, RatiosWithinFactorTwo) {
  const HeatKernelEval hk(MultiIndex({0.5}));
  std::vector<std::pair<Point, Point>> pairs;
  for (int k = 1; k <= 4; ++k) pairs.emplace_back(Point{1.0}, Point{1.0 + std::pow(10.0, -k)});
  const hml::EstimateReport r = heat_lipschitz_check(hk, pairs);
  EXPECT_TRUE(r.passed()) << r.to_table();
  EXPECT_LE(r.fitted_value("ratio_spread"), 2.0);

  const HeatKernelEval hk2(MultiIndex({0.5, 0.5}));
  std::vector<std::pair<Point, Point>> pairs2;
  for (int k = 1; k <= 3; ++k) pairs2.emplace_back(Point{1.0, 1.0}, Point{1.0 + std::pow(10.0, -k), 1.0 + std::pow(10.0, -k)});
  const hml::EstimateReport r2 = heat_lipschitz_check(hk2, pairs2);
  EXPECT_TRUE(r2.passed()) << r2.to_table();
  EXPECT_EQ(r2.fitted_value("product_bound_respected"), 1.0);
}

TEST(HeatHolder, LipschitzEnvelope) {
  const hml::EstimateReport r = heat_holder_check(HeatKernelEval(MultiIndex({1.0})));
  EXPECT_TRUE(r.passed()) << r.to_table();
  EXPECT_NEAR(r.fitted_value("envelope_exponent"), 1.0, 0.1);
}

}  // namespace
