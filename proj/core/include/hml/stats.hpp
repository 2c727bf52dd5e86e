#pragma once

#include <span>

namespace hml {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Least-squares slope of log(y) against log(x).  Requires positive data.
LineFit fit_loglog(std::span<const double> x, std::span<const double> y);

/// max(y) / min(y) over positive data.
double spread_ratio(std::span<const double> y);

/// "Bounded with no trend": |slope of y against log(param)| measured on
/// log(y), within slope_tol, and max/min within ratio_tol.
struct FlatnessResult {
  double slope = 0.0;
  double ratio = 0.0;
  bool flat = false;
};
FlatnessResult flatness(std::span<const double> param, std::span<const double> y, double slope_tol = 0.05,
                        double ratio_tol = 5.0);

}  // namespace hml
