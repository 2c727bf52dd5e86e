#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "hml/log.hpp"
#include "hml/multiplier.hpp"
#include "hml/profiles.hpp"
#include "hml/verify.hpp"

namespace {

using hml::DyadicPartition;
using hml::EstimateReport;
using hml::GridFunction;
using hml::MultiIndex;
using hml::PartitionVariant;
using hml::Point;
using hml::TransformPlan;
using hml::Verdict;

std::shared_ptr<const TransformPlan> plan1d(double alpha = 0.5) {
  return TransformPlan::make(MultiIndex({alpha}), 16.0, 38.7, 1024);
}

TEST(Atoms, SupportSupAndMeanZero) {
  const auto g = hml::Grid::make(MultiIndex({0.5}), 16.0, 1024);
  for (double y0 : {0.0, 1.0, 4.0}) {
    for (double r : {0.25, 1.0, 2.0}) {
      const hml::Atom a = hml::make_atom(g, Point{y0}, r);
      const hml::AtomResiduals res = hml::atom_residuals(a);
      EXPECT_EQ(res.outside, 0.0) << y0 << " " << r;
      EXPECT_LE(res.sup_excess, 1e-12);
      EXPECT_LE(res.mean, 1e-10);
      const double c[] = {y0};
      EXPECT_NEAR(a.ball_measure, ball_measure(g->alpha(), c, r), 1e-12 * a.ball_measure);
      EXPECT_NEAR(a.values.max_abs() * a.ball_measure, 1.0, 1e-12);
    }
  }
}

TEST(Atoms, RejectsBallsOffTheGridOrBelowResolution) {
  const auto g = hml::Grid::make(MultiIndex({0.5}), 16.0, 256);
  EXPECT_THROW(hml::make_atom(g, Point{20.0}, 1.0), std::invalid_argument);
  EXPECT_THROW(hml::make_atom(g, Point{1.0}, -1.0), std::invalid_argument);
  EXPECT_THROW(hml::make_atom(g, Point{1.0, 1.0}, 0.5), std::invalid_argument);
  EXPECT_THROW(hml::make_atom(g, Point{8.0}, 1e-3), std::domain_error);
}

TEST(CzPairs, OffsetsTimesDeltas) {
  const auto p = hml::cz_pairs({0.1, 1.0});
  ASSERT_EQ(p.size(), 4u);
  for (const auto& [y, yp] : p) {
    EXPECT_GE(y, 0.0);
    EXPECT_GT(yp, y);
  }
  const auto q = hml::cz_pairs({2.0}, {3.0});
  ASSERT_EQ(q.size(), 1u);
  EXPECT_DOUBLE_EQ(q[0].first, 6.0);
  EXPECT_DOUBLE_EQ(q[0].second, 8.0);
}

TEST(WeakL1Quantity, ConstantsAndHomogeneity) {
  const auto g = hml::Grid::make(MultiIndex({0.0}), 5.0, 64);
  GridFunction one(g);
  for (auto& v : one.values()) v = 1.0;
  EXPECT_NEAR(hml::weak_l1_quantity(one), 5.0, 1e-12);
  const GridFunction f = GridFunction::sample_real(g, [](std::span<const double> x) { return 1.0 / (0.1 + x[0]); });
  GridFunction f3 = f;
  for (auto& v : f3.values()) v *= 3.0;
  EXPECT_NEAR(hml::weak_l1_quantity(f3), 3.0 * hml::weak_l1_quantity(f), 1e-12);
  // Chebyshev: lambda nu{|f| > lambda} <= ||f||_1.
  EXPECT_LE(hml::weak_l1_quantity(f), norm(f, 1.0) * (1 + 1e-12));
}

TEST(Battery, DeterministicAndResolved) {
  const auto plan = plan1d();
  const hml::TestBattery a = hml::default_battery(*plan, 11, 16);
  const hml::TestBattery b = hml::default_battery(*plan, 11, 16);
  const hml::TestBattery c = hml::default_battery(*plan, 12, 16);
  ASSERT_EQ(a.members.size(), 16u);
  ASSERT_EQ(a.labels.size(), 16u);
  bool differs = false;
  for (std::size_t i = 0; i < 16; ++i) {
    EXPECT_EQ(a.members[i].values(), b.members[i].values());
    differs |= a.members[i].values() != c.members[i].values();
    // Spectrum inside the dual box: the inversion round trip holds.
    const GridFunction back = inverse_hankel(*plan, hankel_transform(*plan, a.members[i]));
    EXPECT_LT(norm(back - a.members[i], 2.0) / norm(a.members[i], 2.0), 1e-7) << a.labels[i];
  }
  EXPECT_TRUE(differs);
}

TEST(LpProbe, PlancherelAndIdentity) {
  const auto plan = plan1d();
  const hml::TestBattery bat = hml::default_battery(*plan, 3, 12);
  const hml::Symbol ip = hml::laplace_type_imag_power(1, 1.0);
  const EstimateReport two = hml::lp_norm_probe(*plan, ip, 2.0, bat);
  EXPECT_TRUE(two.passed()) << two.to_table();
  EXPECT_LE(two.fitted_value("max_ratio"), ip.sup_norm() * (1 + 1e-6));
  const EstimateReport id = hml::lp_norm_probe(*plan, hml::identity_symbol(1), 3.0, bat);
  EXPECT_NEAR(id.fitted_value("max_ratio"), 1.0, 1e-6);
  EXPECT_THROW(hml::lp_norm_probe(*plan, ip, 1.0, bat), std::invalid_argument);
  EXPECT_THROW(hml::lp_norm_probe(*plan, ip, 2.0, hml::TestBattery{}), std::invalid_argument);
}

TEST(SpikeBattery, WidthsAndRefusal) {
  // sigma = 32 / Lambda = 0.4, so a spike at c = 8 is 20 sigma from the face.
  const double R = 16.0, Lambda = 80.0;
  const auto plan = TransformPlan::make(MultiIndex({0.5}), R, Lambda, TransformPlan::minimal_nodes(R, Lambda));
  const hml::SpikeBattery s = hml::spike_battery(*plan, {0.0, 8.0});
  ASSERT_FALSE(s.base.empty());
  EXPECT_EQ(s.base.size(), s.sharpened.size());
  for (const auto& f : s.base) EXPECT_NEAR(norm(f, 1.0), 1.0, 1e-8);
  for (const auto& f : s.sharpened) EXPECT_NEAR(norm(f, 1.0), 1.0, 1e-8);
  // At c = 1 neither width is 20 sigma from the face.
  EXPECT_THROW(hml::spike_battery(*plan, {1.0}), std::invalid_argument);
}

TEST(Weak11, IdentityIsStable) {
  const double R = 16.0, Lambda = 40.0;
  const auto plan = TransformPlan::make(MultiIndex({0.5}), R, Lambda, TransformPlan::minimal_nodes(R, Lambda));
  const hml::SpikeBattery s = hml::spike_battery(*plan, {0.0});
  const EstimateReport r = hml::weak11_probe(*plan, hml::identity_symbol(1), s);
  EXPECT_TRUE(r.passed()) << r.to_table();
  EXPECT_LE(r.fitted_value("sharpening_ratio"), 1.25);
  EXPECT_THROW(hml::weak11_probe(*plan, hml::identity_symbol(1), hml::SpikeBattery{}), std::invalid_argument);
}

TEST(ResolutionCheck, DowngradesMovedConstantsAndSkipsResiduals) {
  EstimateReport coarse;
  coarse.verdict = Verdict::pass;
  coarse.fit("C", 1.0).fit("law_discrepancy", 1e-9);
  EstimateReport fine = coarse;
  fine.fitted = {{"C", 1.05}, {"law_discrepancy", 5e-9}};
  EstimateReport a = coarse;
  hml::apply_resolution_check(a, fine);
  EXPECT_EQ(a.verdict, Verdict::pass);

  fine.fitted[0].second = 1.5;
  EstimateReport b = coarse;
  hml::apply_resolution_check(b, fine);
  EXPECT_EQ(b.verdict, Verdict::inconclusive);

  EstimateReport failed = coarse;
  failed.verdict = Verdict::fail;
  hml::apply_resolution_check(failed, fine);
  EXPECT_EQ(failed.verdict, Verdict::fail);
}

TEST(CzHormander, FlatForLaplaceTypeAndArgumentChecks) {
  const DyadicPartition psi(PartitionVariant::plain);
  const auto pairs = hml::cz_pairs({1e-2, 1e-1, 1.0}, {4.0});
  const EstimateReport r = hml::cz_hormander_check(0.5, hml::laplace_type_const(1), psi, pairs);
  EXPECT_TRUE(r.passed()) << r.to_table();
  EXPECT_LE(std::abs(r.fitted_value("slope")), 0.05);
  EXPECT_THROW(hml::cz_hormander_check(0.5, hml::laplace_type_const(2), psi, pairs), std::invalid_argument);
  EXPECT_THROW(hml::cz_hormander_check(0.5, hml::laplace_type_const(1), psi, {pairs[0]}), std::invalid_argument);
}

TEST(Association, KernelIntegralMatchesThePlan) {
  const double R = 24.0, Lambda = 48.0;
  const auto plan = TransformPlan::make(MultiIndex({0.5}), R, Lambda, TransformPlan::minimal_nodes(R, Lambda));
  const DyadicPartition psi(PartitionVariant::plain);
  auto f = [](double x) { return hml::smooth_bump(x, 1.0, 5.0); };
  const EstimateReport r =
      hml::association_check(*plan, hml::laplace_type_imag_power(1, 1.0), psi, f, 1.0, 5.0, {0.5, 7.0});
  EXPECT_TRUE(r.passed()) << r.to_table();
  EXPECT_LE(r.fitted_value("max_relative_error"), 1e-3);
  EXPECT_THROW(hml::association_check(*plan, hml::identity_symbol(1), psi, f, 1.0, 5.0, {2.0}), std::invalid_argument);
}

TEST(NegativeControl, DivergentSymbolIsDetected) {
  hml::ScopedLogCapture quiet;
  const EstimateReport r = hml::negative_control_check(0.5, hml::cz_pairs({1e-2, 1e-1, 1.0, 10.0}, {4.0}));
  EXPECT_TRUE(r.passed()) << r.to_table();
  EXPECT_GE(r.fitted_value("hormander_max_spread"), 10.0);
}

TEST(AtomFamily, TwentyFourAtoms) {
  const auto fam = hml::default_atom_family();
  EXPECT_EQ(fam.size(), 24u);
  for (const auto& a : fam) {
    EXPECT_GT(a.radius, 0.0);
    EXPECT_NE(a.radius, 1.0);
    EXPECT_TRUE(a.center == 0.0 || a.center == 1.0 || a.center == a.radius);
  }
}

}  // namespace
