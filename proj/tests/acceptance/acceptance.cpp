// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails or overruns its time budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "hml/heat.hpp"
#include "hml/log.hpp"
#include "hml/multiplier.hpp"
#include "hml/profiles.hpp"
#include "hml/verify.hpp"
#include "suites.hpp"

namespace {

using namespace hml;
using cli::RunConfig;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
  void require(const EstimateReport& r) { require(r.passed(), r.name + " verdict " + to_string(r.verdict)); }
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<void(Outcome&)> body;
};

RunConfig config(std::size_t dims, std::vector<double> alpha, std::size_t n = 0) {
  RunConfig c;
  c.dims = dims;
  c.alpha = std::move(alpha);
  c.n = n;
  return cli::effective(c);
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

void transform_exactness(Outcome& o) {
  double worst = 0.0;
  for (double alpha : {0.0, 0.5, 1.0, 1.5}) {
    const auto plan = cli::plan_for(config(1, {alpha}, 2048));
    const EstimateReport r = cli::gaussian_pair_check(*plan, {0.5, 1.0, 2.0}, 1e-7);
    o.require(r);
    worst = std::max(worst, r.fitted_value("max_relative_l2_error"));
  }
  o.detail << "max rel L2 error " << num(worst);
}

void plancherel_inversion(Outcome& o) {
  for (std::size_t d : {1u, 2u}) {
    const RunConfig c = config(d, std::vector<double>(d, 0.5));
    const EstimateReport r = cli::plancherel_inversion_check(*cli::plan_for(c), c.seed, 16, 1e-6);
    o.require(r);
    o.detail << " d=" << d << ": norm dev " << num(r.fitted_value("max_norm_deviation")) << ", inversion "
             << num(r.fitted_value("max_inversion_error"));
  }
}

void identities(Outcome& o) {
  const std::set<std::string> wanted{"convolution",       "young",           "dilation_covariance", "dilation_identity",
                                     "diagonalization",   "translation_support", "translation_symmetry"};
  const std::vector<EstimateReport> reports = cli::transform_suite(config(1, {0.5}));
  std::size_t seen = 0;
  for (const auto& r : reports) {
    if (!wanted.count(r.name)) continue;
    ++seen;
    o.require(r);
  }
  o.require(seen >= wanted.size(), "identity reports missing");
  o.detail << seen << " identity reports";
}

void heat(Outcome& o) {
  const std::vector<EstimateReport> reports = cli::heat_suite(config(1, {0.5}));
  for (const auto& r : reports) {
    o.require(r);
    if (r.name == "heat_mass") {
      o.require(r.measurements.size() >= 6, "fewer than 6 mass centers");
      o.detail << "mass error " << num(r.fitted_value("max_mass_error"));
    }
    if (r.name == "heat_closed_form_vs_spectral") o.detail << ", spectral " << num(r.fitted_value("max_relative_sup_error"));
    if (r.name == "heat_semigroup") o.detail << ", semigroup " << num(r.fitted_value("semigroup_residual"));
    if (r.name == "heat_gaussian_bound") {
      const double band = std::max(r.fitted_value("band_ratio_xy_below_t"), r.fitted_value("band_ratio_xy_above_t"));
      o.require(band <= 10.0, "band ratio above 10");
      o.detail << ", band ratio " << num(band);
    }
  }
}

void off_diagonal(Outcome& o) {
  const auto plan = cli::plan_for(config(1, {0.5}));
  const double Q = plan->alpha().homogeneous_dimension();
  auto f = [Q](double x) { return std::pow(1.0 + x * x, -0.5 * (Q + 1.0)); };
  std::vector<double> rs, ts;
  for (int i = 0; i < 6; ++i) {
    rs.push_back(std::exp2(0.5 * i));
    ts.push_back(std::exp2(0.5 * (i - 2)));
  }
  const EstimateReport r = off_diagonal_check(*plan, f, 6.0, rs, ts, 0.5);
  o.require(r);
  o.require(r.has_fitted("slope") && r.fitted_value("slope") <= -0.5 + 0.1, "slope above -delta + 0.1");
  o.require(r.lattice_rows.size() == 36, "lattice is not 6 x 6");
  if (r.has_fitted("slope")) o.detail << "slope " << num(r.fitted_value("slope"));
}

void heat_lipschitz(Outcome& o) {
  for (double alpha : {0.0, 0.5, 1.5}) {
    const HeatKernelEval hk(MultiIndex({alpha}));
    std::vector<std::pair<Point, Point>> pairs;
    for (int k = 1; k <= 4; ++k) pairs.emplace_back(Point{1.0}, Point{1.0 + std::pow(10.0, -k)});
    const EstimateReport r = heat_lipschitz_check(hk, pairs);
    o.require(r);
    o.require(r.fitted_value("ratio_spread") <= 2.0, "ratio band above 2");
    o.detail << " alpha=" << alpha << ": spread " << num(r.fitted_value("ratio_spread"));
  }
}

void weighted_bounds(Outcome& o) {
  const int k_max = 32;
  const double R = 6.0 * k_max + 16.0, Lambda = 2.0;
  const auto plan = TransformPlan::make(MultiIndex({0.5}), R, Lambda, TransformPlan::minimal_nodes(R, Lambda));
  const EstimateReport r = weighted_transform_bound_check(*plan, 0.5, 0.1, k_max, 10.0);
  o.require(r);
  const double s = r.fitted_value("max_ratio_over_baseline_strong");
  const double w = r.fitted_value("max_ratio_over_baseline_weak");
  o.require(s <= 10.0 && w <= 10.0, "ratio above 10x baseline");
  o.detail << "max/baseline strong " << num(s) << ", weak " << num(w);
}

void hormander(Outcome& o) {
  for (std::size_t d : {1u, 2u}) {
    const double Q = MultiIndex(std::vector<double>(d, 0.5)).homogeneous_dimension();
    const std::vector<double> betas{1.0, 0.5 * Q + 0.1, 4.0};
    double spread = 0.0;
    for (const Symbol& n : {laplace_type_const(d), laplace_type_imag_power(d, 1.0), laplace_type_imag_power(d, 2.0)}) {
      const EstimateReport r = hormander_check(n, betas, -10, 10, 1.5);
      o.require(r);
      spread = std::max(spread, r.fitted_value("max_spread"));
    }
    ScopedLogCapture quiet;
    const EstimateReport bad = hormander_check(divergent_symbol(d), betas, -10, 10, 1.5);
    o.require(bad.fitted_value("max_spread") >= 10.0, "divergent profile grows less than 10x");
    o.detail << " d=" << d << ": flat spread " << num(spread) << ", divergent " << num(bad.fitted_value("max_spread"));
  }
}

void calderon_zygmund(Outcome& o) {
  const Symbol m = laplace_type_imag_power(1, 1.0);
  const DyadicPartition psi(PartitionVariant::plain);
  std::vector<double> deltas;
  for (int i = 0; i < 7; ++i) deltas.push_back(std::pow(10.0, -2.0 + 0.5 * i));
  const EstimateReport cz = cz_hormander_check(0.5, m, psi, cz_pairs(deltas));
  o.require(cz);
  o.require(std::abs(cz.fitted_value("slope")) <= 0.05 && cz.fitted_value("max_over_min") <= 5.0, "not flat");
  const double R = 24.0, Lambda = 48.0;
  const auto plan = TransformPlan::make(MultiIndex({0.5}), R, Lambda, TransformPlan::minimal_nodes(R, Lambda));
  auto f = [](double x) { return smooth_bump(x, 1.0, 5.0); };
  const EstimateReport as = association_check(*plan, m, psi, f, 1.0, 5.0, {0.25, 0.5, 6.0, 7.0, 9.0});
  o.require(as);
  o.detail << "slope " << num(cz.fitted_value("slope")) << ", max/min " << num(cz.fitted_value("max_over_min"))
           << ", association " << num(as.fitted_value("max_relative_error"));
}

void hardy_atoms(Outcome& o) {
  const DyadicPartition psi2(PartitionVariant::squared);
  const auto atoms = default_atom_family();
  o.require(atoms.size() == 24, "atom family is not 24 atoms");
  // The Laplace-type symbols are dilation invariant, so the atom quantity must
  // be flat in r.
  std::vector<EstimateReport> flat;
  for (const Symbol& m : {laplace_type_const(1), laplace_type_imag_power(1, 1.0)}) {
    flat.push_back(h1_atom_check(0.5, m, psi2, atoms));
    o.require(flat.back());
    o.detail << " " << m.name() << ": slope " << num(flat.back().fitted_value("slope")) << ", max/min "
             << num(flat.back().fitted_value("max_over_min"));
  }
  // e^{-lambda^2} is not dilation invariant; M(T_1 a) = sup_{s >= 1} |T_s a| <= M(a),
  // so its atom quantity is bounded by that of m = 1 (the first run, since
  // Xi = 1 on the half-line) up to the time-grid refinement tolerance.
  const EstimateReport heat = h1_atom_check(0.5, heat_symbol(1, 1.0), psi2, atoms);
  double worst = 0.0;
  for (std::size_t i = 0; i < heat.measurements.size(); ++i) {
    worst = std::max(worst, heat.measurements[i].value / flat.front().measurements[i].value);
  }
  o.require(worst <= 1.01, "heat atom quantity exceeds the m = 1 bound");
  o.detail << " heat: C " << num(heat.fitted_value("C")) << ", max ratio to m=1 " << num(worst) << ", slope "
           << num(heat.fitted_value("slope"));
  std::vector<int> js;
  for (int j = -4; j <= 4; ++j) js.push_back(j);
  o.require(mjt_kernel_checks(0.5, laplace_type_imag_power(1, 1.0), psi2, js));
}

void negative_controls(Outcome& o) {
  ScopedLogCapture quiet;
  const EstimateReport r = negative_control_check(0.5, cz_pairs({1e-2, 1e-1, 1.0, 10.0}, {4.0}));
  o.require(r);
  o.require(r.fitted_value("hormander_max_spread") >= 10.0, "profile growth below 10x");
  o.detail << "hormander growth " << num(r.fitted_value("hormander_max_spread")) << ", cz slope "
           << num(r.fitted_value("cz_slope"));
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "transform exactness", 10, transform_exactness},
      {2, "Plancherel and self-inversion", 60, plancherel_inversion},
      {3, "transform identities", 120, identities},
      {4, "heat kernel", 120, heat},
      {5, "off-diagonal decay", 60, off_diagonal},
      {6, "heat kernel Lipschitz ratio", 60, heat_lipschitz},
      {7, "weighted transform bounds", 300, weighted_bounds},
      {8, "Hormander profiles", 120, hormander},
      {9, "Calderon-Zygmund kernel condition", 600, calderon_zygmund},
      {10, "H^1 atoms", 600, hardy_atoms},
      {11, "negative controls", 120, negative_controls},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      o.ok = false;
      o.detail << " [over time budget]";
    }
    if (!o.ok) ++failures;
    std::printf("criterion %2d %s  %-36s %7.1f s / %4.0f s  %s\n", c.id, o.ok ? "PASS" : "FAIL", c.title, secs,
                c.budget_s, o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
