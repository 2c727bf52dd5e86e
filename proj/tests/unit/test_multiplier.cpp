#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hml/heat.hpp"
#include "hml/log.hpp"
#include "hml/multiplier.hpp"
#include "hml/sobolev.hpp"

namespace {

using hml::cplx;
using hml::DyadicPartition;
using hml::GridFunction;
using hml::MultiIndex;
using hml::PartitionVariant;
using hml::TransformPlan;

std::shared_ptr<const TransformPlan> plan1d(double alpha = 0.5) {
  return TransformPlan::make(MultiIndex({alpha}), 16.0, 38.7, 1024);
}

GridFunction gaussian(const TransformPlan& plan, double t) {
  return GridFunction::sample_real(plan.spatial(), [t](std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return std::exp(-t * t * r2);
  });
}

TEST(ApplyMultiplier, IdentityHeatAndContraction) {
  const auto plan = plan1d();
  const GridFunction f = gaussian(*plan, 1.0);
  const GridFunction id = apply_multiplier(*plan, hml::identity_symbol(1), f);
  EXPECT_LT(norm(id - f, 2.0) / norm(f, 2.0), 1e-9);

  // m = e^{-s lambda^2} acting on e^{-x^2} gives the Gaussian of width 1 + 4s,
  // scaled by (1 + 4s)^{-Q/2}.
  const double s = 0.3, Q = 2.0;
  const GridFunction h = apply_multiplier(*plan, hml::heat_symbol(1, s), f);
  const GridFunction want = GridFunction::sample_real(plan->spatial(), [&](std::span<const double> x) {
    return std::pow(1 + 4 * s, -Q / 2) * std::exp(-x[0] * x[0] / (1 + 4 * s));
  });
  EXPECT_LT(norm(h - want, 2.0) / norm(want, 2.0), 1e-8);

  const hml::Symbol ip = hml::laplace_type_imag_power(1, 1.0);
  const GridFunction g = apply_multiplier(*plan, ip, f);
  EXPECT_LE(norm(g, 2.0), ip.sup_norm() * norm(f, 2.0) * (1 + 1e-9));
}

TEST(ApplyMultiplier, WarnsWhenSymbolExceedsItsBound) {
  const auto plan = plan1d();
  const hml::Symbol liar("liar", 1, [](std::span<const double>) { return cplx(2.0); }, 1.0);
  hml::ScopedLogCapture capture;
  (void)apply_multiplier(*plan, liar, gaussian(*plan, 1.0));
  EXPECT_FALSE(capture.warnings().empty());
}

TEST(ResolvableBand, MatchesTheDefiningInequalities) {
  const auto plan = plan1d();
  const hml::DyadicBand band = hml::resolvable_band(*plan);
  ASSERT_FALSE(band.empty());
  const double R = plan->spatial()->axis(0).edges().back(), Lambda = plan->dual()->axis(0).edges().back();
  auto ok = [&](int j) { return std::exp2((j + 1) / 2.0) <= Lambda && 32.0 * std::exp2(-j / 2.0) <= R; };
  EXPECT_TRUE(ok(band.j_lo));
  EXPECT_TRUE(ok(band.j_hi));
  EXPECT_FALSE(ok(band.j_lo - 1));
  EXPECT_FALSE(ok(band.j_hi + 1));
}

TEST(DyadicKernel1D, AgreesWithThePlan) {
  const auto plan = plan1d(1.0);
  const DyadicPartition psi(PartitionVariant::plain);
  const hml::Symbol ip = hml::laplace_type_imag_power(1, 1.0);
  const hml::DyadicBand band = hml::resolvable_band(*plan);
  const int j = (band.j_lo + band.j_hi) / 2;
  const GridFunction piece = inverse_hankel(*plan, dyadic_symbol_piece(*plan, ip, psi, j));
  const std::vector<double> xs{0.3, 1.0, 2.5, 4.0};
  const hml::DyadicKernel1D direct(1.0, ip, psi, j, 64.0);
  ASSERT_TRUE(direct.resolved());
  const std::vector<cplx> v = direct.transform(xs);
  double scale = piece.max_abs();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x[] = {xs[i]};
    EXPECT_LT(std::abs(piece.evaluate(x) - v[i]) / scale, 1e-7) << xs[i];
  }
  // K_j(x, y) against the plan's translate of H(m_j).
  const double y[] = {1.5};
  const GridFunction k = kernel_piece(*plan, ip, psi, j, y);
  const std::vector<double> ys{1.5};
  const std::vector<cplx> kv = direct.kernel(xs, ys);
  scale = k.max_abs();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x[] = {xs[i]};
    EXPECT_LT(std::abs(k.evaluate(x) - kv[i]) / scale, 1e-6) << xs[i];
  }
}

TEST(DyadicKernel1D, KernelIsSymmetric) {
  const DyadicPartition psi(PartitionVariant::plain);
  const hml::DyadicKernel1D k(0.5, hml::laplace_type_const(1), psi, 0, 32.0);
  const std::vector<double> a{0.4, 2.0}, b{1.3, 3.1};
  const auto ab = k.kernel(a, b), ba = k.kernel(b, a);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t l = 0; l < 2; ++l) EXPECT_NEAR(std::abs(ab[l * 2 + i] - ba[i * 2 + l]), 0.0, 1e-13);
}

TEST(HormanderCheck, FlatForLaplaceTypeAndDetectsDivergence) {
  const std::vector<double> betas{1.0, 2.1};
  EXPECT_TRUE(hml::hormander_check(hml::identity_symbol(1), betas, -4, 4).passed());
  EXPECT_TRUE(hml::hormander_check(hml::laplace_type_imag_power(1, 1.0), betas, -4, 4).passed());
  hml::ScopedLogCapture quiet;
  const hml::EstimateReport bad = hml::hormander_check(hml::divergent_symbol(1), {1.0}, -10, 10);
  EXPECT_EQ(bad.verdict, hml::Verdict::fail);
  EXPECT_GE(bad.fitted_value("max_spread"), 10.0);
  EXPECT_GE(bad.fitted_value("edge_growth"), 1.25);
}

TEST(HormanderCheck, BoundedButNotFlatIsInconclusive) {
  hml::ScopedLogCapture quiet;
  // The Bessel potential profile decays in j and the bump profile vanishes for large j.
  const hml::EstimateReport pot = hml::hormander_check(hml::PotentialFamily("gauss", 1.5, 1).symbol(), {1.0}, -2, 2);
  EXPECT_EQ(pot.verdict, hml::Verdict::inconclusive) << pot.to_table();
  EXPECT_LT(pot.fitted_value("edge_growth"), 1.25);
  const hml::EstimateReport bump = hml::hormander_check(hml::bump_symbol(1), {1.0}, -4, 6);
  EXPECT_EQ(bump.verdict, hml::Verdict::inconclusive) << bump.to_table();
}

TEST(KernelPieceCheck, IdentityAndImaginaryPower) {
  const auto plan = plan1d();
  const DyadicPartition psi(PartitionVariant::plain);
  const hml::DyadicBand band = hml::resolvable_band(*plan);
  const hml::EstimateReport id = kernel_piece_check(*plan, hml::identity_symbol(1), psi, 1.0, band.j_lo, band.j_hi);
  EXPECT_TRUE(id.passed()) << id.to_table();
  EXPECT_LE(id.fitted_value("partition_sum_residual"), 1e-12);
  EXPECT_NEAR(id.fitted_value("approximate_identity_mass_re"), 1.0, 1e-4);
  EXPECT_GT(id.fitted_value("min_fitted_delta"), 0.0);

  hml::ScopedLogCapture quiet;
  const hml::EstimateReport ip =
      kernel_piece_check(*plan, hml::laplace_type_imag_power(1, 1.0), psi, 1.0, band.j_lo, band.j_hi);
  EXPECT_TRUE(ip.passed()) << ip.to_table();
  EXPECT_FALSE(ip.has_fitted("approximate_identity_mass_error"));
}

TEST(WeightedTransformBound, OscillatoryFamilyStaysInBand) {
  // The box of the multiplier suite: the family spreads to |x| ~ 2 sqrt(2) k.
  const double R = 6.0 * 32 + 16.0, Lambda = 2.0;
  const auto plan = TransformPlan::make(MultiIndex({0.5}), R, Lambda, TransformPlan::minimal_nodes(R, Lambda));
  const hml::EstimateReport r = weighted_transform_bound_check(*plan, 0.5, 0.1, 8);
  EXPECT_TRUE(r.passed()) << r.to_table();
  EXPECT_LE(r.fitted_value("max_ratio_over_baseline_strong"), 10.0);
}

TEST(PointwiseDecay, BumpDecaysFasterThanRequestedOrders) {
  const double R = 160.0, Lambda = 4.0;
  const auto plan = TransformPlan::make(MultiIndex({0.5}), R, Lambda, TransformPlan::minimal_nodes(R, Lambda));
  const hml::EstimateReport r = pointwise_decay_check(*plan, hml::bump_symbol(1), {0, 2, 4}, 24.0, 128.0);
  EXPECT_TRUE(r.passed()) << r.to_table();
  EXPECT_GE(r.fitted_value("decay_exponent"), 4.0);
  const hml::EstimateReport too_much = pointwise_decay_check(*plan, hml::bump_symbol(1), {40}, 24.0, 128.0);
  EXPECT_EQ(too_much.verdict, hml::Verdict::fail);
}

TEST(PotentialFamilyCheck, FiniteNormsBelowTheSmoothnessIndex) {
  const hml::EstimateReport r = potential_family_check(hml::PotentialFamily("sign", 2.0, 1), 1.5, -4, 4);
  EXPECT_TRUE(r.passed()) << r.to_table();
  EXPECT_EQ(r.fitted_value("potential_norm"), 1.0);
}

}  // namespace
