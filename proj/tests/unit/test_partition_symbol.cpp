#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include <gtest/gtest.h>

#include "hml/multiplier.hpp"
#include "hml/partition.hpp"
#include "hml/specfun.hpp"
#include "hml/symbol.hpp"
#include "hml/symbol_parser.hpp"

namespace {

using hml::cplx;
using hml::DyadicPartition;
using hml::PartitionVariant;

TEST(SmoothStep, ShapeAndSmoothness) {
  EXPECT_EQ(hml::smooth_step(0.0), 1.0);
  EXPECT_EQ(hml::smooth_step(1.0), 1.0);
  EXPECT_EQ(hml::smooth_step(2.0), 0.0);
  EXPECT_EQ(hml::smooth_step(5.0), 0.0);
  double prev = 1.0;
  for (double s = 1.0; s <= 2.0; s += 1e-3) {
    const double v = hml::smooth_step(s);
    EXPECT_LE(v, prev + 1e-15);
    prev = v;
  }
  EXPECT_NEAR(hml::smooth_step(1.5), 0.5, 1e-14);
}

TEST(DyadicPartition, SupportAndTelescoping) {
  for (auto variant : {PartitionVariant::plain, PartitionVariant::squared}) {
    const DyadicPartition psi(variant);
    EXPECT_EQ(psi(0.5), 0.0);
    EXPECT_EQ(psi(0.25), 0.0);
    EXPECT_EQ(psi(2.0), 0.0);
    EXPECT_EQ(psi(3.0), 0.0);
    EXPECT_GT(psi(1.0), 0.0);
    for (double e = -35.0; e <= 35.0; e += 0.173) {
      EXPECT_NEAR(psi.partial_sum(std::exp2(e), -40, 40), 1.0, 1e-12) << e;
    }
  }
  // Plain telescoping: the partial sum over |j| <= J is chi(2^{-J} r) - chi(2^{J+1} r).
  const DyadicPartition plain(PartitionVariant::plain);
  for (double r : {0.01, 0.3, 5.0, 40.0}) {
    const int J = 3;
    EXPECT_NEAR(plain.partial_sum(r, -J, J), hml::smooth_step(std::exp2(-J) * r) - hml::smooth_step(std::exp2(J + 1) * r), 1e-14);
  }
  EXPECT_EQ(plain.piece(3, 8.0), plain(1.0));
}

TEST(PartitionCheck, BothVariantsPass) {
  EXPECT_TRUE(hml::partition_check(PartitionVariant::plain).passed());
  EXPECT_TRUE(hml::partition_check(PartitionVariant::squared).passed());
}

TEST(AngularCutoff, OneOnQuadrantZeroNearAntiDiagonal) {
  const double q[] = {1.0, 0.0}, q2[] = {0.3, 2.0}, bad[] = {1.0, -1.0}, zero[] = {0.0, 0.0};
  EXPECT_EQ(hml::angular_cutoff(q), 1.0);
  EXPECT_EQ(hml::angular_cutoff(q2), 1.0);
  EXPECT_EQ(hml::angular_cutoff(bad), 0.0);
  EXPECT_EQ(hml::angular_cutoff(zero), 0.0);
  const double pos[] = {2.0}, neg[] = {-2.0};
  EXPECT_EQ(hml::angular_cutoff(pos), 1.0);
  EXPECT_EQ(hml::angular_cutoff(neg), 0.0);
}

TEST(Symbols, LaplaceTypeValuesOnTheQuadrant) {
  const hml::Symbol one = hml::laplace_type_const(2);
  const hml::Symbol ip = hml::laplace_type_imag_power(2, 1.0);
  const cplx g = hml::gamma({1.0, 1.0});
  for (double a : {0.01, 0.5, 3.0, 100.0}) {
    const double u[] = {a, 2.0 * a};
    EXPECT_NEAR(std::abs(one(u) - 1.0), 0.0, 1e-10) << a;
    const cplx want = g * std::exp(cplx(0.0, -1.0) * std::log(3.0 * a));
    EXPECT_NEAR(std::abs(ip(u) - want), 0.0, 1e-9) << a;
    EXPECT_LE(std::abs(ip(u)), ip.sup_norm() * (1.0 + 1e-12));
  }
}

TEST(Symbols, BasicFamilies) {
  const double u[] = {0.7}, lam[] = {std::sqrt(0.7)};
  EXPECT_EQ(hml::identity_symbol(1)(u), cplx(1.0));
  EXPECT_NEAR(hml::heat_symbol(1, 2.0)(u).real(), std::exp(-1.4), 1e-15);
  EXPECT_NEAR(hml::heat_symbol(1, 2.0).m(lam).real(), std::exp(-1.4), 1e-15);
  EXPECT_THROW(hml::heat_symbol(1, 0.0), std::invalid_argument);
  const double neg[] = {-0.7};
  EXPECT_NEAR(hml::heat_symbol(1, 2.0)(neg).real(), std::exp(-1.4), 1e-15);
  const DyadicPartition psi;
  const double one[] = {1.0};
  EXPECT_EQ(hml::bump_symbol(1)(one).real(), psi(1.0));
  EXPECT_NEAR(std::abs(hml::oscillatory_symbol(1, 5.0)(one)), psi(1.0), 1e-15);
  const hml::Symbol d3 = hml::identity_symbol(1).dilated(3);
  EXPECT_EQ(d3(u), cplx(1.0));
  const hml::Symbol b3 = hml::bump_symbol(1).dilated(-2);
  const double quarter[] = {0.25};
  EXPECT_EQ(b3(quarter).real(), psi(1.0 / 16.0));
}

TEST(SymbolParser, AcceptsTheGrammar) {
  const double u[] = {0.8, 0.4};
  EXPECT_EQ(hml::parse_symbol("identity", 2)(u), cplx(1.0));
  EXPECT_NEAR(hml::parse_symbol(" heat{ t = 0.5 } ", 2)(u).real(), std::exp(-0.6), 1e-15);
  EXPECT_NEAR(std::abs(hml::parse_symbol("laplace_type{phi=imag_power:gamma=2}", 2)(u) -
                       hml::laplace_type_imag_power(2, 2.0)(u)),
              0.0, 1e-12);
  EXPECT_NEAR(std::abs(hml::parse_symbol("laplace_type{phi=const}", 2)(u) - 1.0), 0.0, 1e-10);
  EXPECT_NO_THROW(hml::parse_symbol("bump", 1));
  EXPECT_NO_THROW(hml::parse_symbol("divergent", 1));
  EXPECT_NO_THROW(hml::parse_symbol("oscillatory{k=3}", 1));
  EXPECT_NO_THROW(hml::parse_symbol("potential{s=2,h=cos}", 1));
}

TEST(SymbolParser, RejectsMalformedInput) {
  for (const char* bad : {"", "nonsense", "heat{t=}", "heat{t=-1}", "heat{x=1}", "laplace_type{phi=wave}",
                          "oscillatory{k=abc}", "identity{", "potential{s=2,h=nope}"}) {
    EXPECT_THROW(hml::parse_symbol(bad, 1), std::invalid_argument) << bad;
  }
}

TEST(TabulatedSymbol, MultilinearInterpolation) {
  const std::string path = testing::TempDir() + "hml_tab_symbol.csv";
  {
    std::ofstream out(path);
    out << "u1,u2,re,im\n";
    for (double a : {0.0, 1.0, 2.0})
      for (double b : {0.0, 2.0}) out << a << "," << b << "," << a + b << "," << a * b << "\n";
  }
  const hml::Symbol s = hml::tabulated_symbol(path, 2);
  const double mid[] = {0.5, 1.0};
  EXPECT_NEAR(s(mid).real(), 1.5, 1e-14);
  EXPECT_NEAR(s(mid).imag(), 0.5, 1e-14);
  const double out_of_box[] = {3.0, 1.0};
  EXPECT_EQ(s(out_of_box), cplx(0.0));
  EXPECT_NEAR(s.sup_norm(), std::abs(cplx(4.0, 4.0)), 1e-14);
  EXPECT_NO_THROW(hml::parse_symbol("csv:" + path, 2));
  std::remove(path.c_str());
  EXPECT_THROW(hml::tabulated_symbol(path, 2), std::runtime_error);
}

}  // namespace
