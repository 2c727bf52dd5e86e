#pragma once

#include <memory>
#include <string>
#include <vector>

#include "config.hpp"
#include "hml/hankel.hpp"
#include "hml/report.hpp"

namespace hml::cli {

struct SuiteOutcome {
  std::string name;
  std::vector<EstimateReport> reports;
  Verdict verdict = Verdict::inconclusive;
  double seconds = 0.0;
};

/// Plan from the effective config (alpha, R, Lambda, n, grading).
std::shared_ptr<const TransformPlan> plan_for(const RunConfig& cfg);

/// The Hormander indices: {cfg.beta} when set, otherwise 1, Q/2 + 0.1, 4.
std::vector<double> hormander_betas(const RunConfig& cfg);

/// Reports of one suite at the configured resolution.  Suites built on the
/// plan are rerun with n doubled and passing reports whose fitted constants
/// move by more than 10% become inconclusive.
SuiteOutcome run_suite(const std::string& name, const RunConfig& cfg);

// Individual suites, without the resolution rerun.
std::vector<EstimateReport> transform_suite(const RunConfig& cfg);
std::vector<EstimateReport> heat_suite(const RunConfig& cfg);
std::vector<EstimateReport> multiplier_suite(const RunConfig& cfg);
std::vector<EstimateReport> cz_suite(const RunConfig& cfg);
std::vector<EstimateReport> h1_suite(const RunConfig& cfg);
std::vector<EstimateReport> lp_suite(const RunConfig& cfg);
std::vector<EstimateReport> negative_suite(const RunConfig& cfg);

// Checks shared by the transform suite and the subcommands.
EstimateReport gaussian_pair_check(const TransformPlan& plan, const std::vector<double>& times, double tolerance = 1e-7);
EstimateReport plancherel_inversion_check(const TransformPlan& plan, std::uint64_t seed, std::size_t battery_size = 16,
                                          double tolerance = 1e-6);
EstimateReport convolution_check(const TransformPlan& plan, double tolerance = 1e-8);
EstimateReport young_check(const TransformPlan& plan, double tolerance = 1e-6);
EstimateReport dilation_covariance_check(const TransformPlan& plan, double tolerance = 1e-5);
EstimateReport translation_symmetry_check(const TransformPlan& plan, double tolerance = 1e-5);

}  // namespace hml::cli
