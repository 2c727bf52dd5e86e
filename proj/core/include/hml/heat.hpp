#pragma once

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "hml/grid.hpp"
#include "hml/hankel.hpp"
#include "hml/report.hpp"

namespace hml {

/// Closed-form heat kernel of the Bessel operator.  Per axis
///
///   T_t(x, y) = c t^{-1} (4t)^{-nu} exp(-(x - y)^2 / 4t) R_nu(xy / 2t),
///   R_nu(z) = e^{-z} (z/2)^{-nu} I_nu(z),  nu = alpha - 1/2,
///
/// which is c t^{-1} (xy)^{-nu} exp(-(x^2 + y^2)/4t) I_nu(xy/2t) written
/// without overflow.  c is fixed at construction from int T_1(x, y) dnu(x) = 1
/// at y = reference_y and re-verified at five other centers.
class HeatKernelEval {
 public:
  explicit HeatKernelEval(MultiIndex alpha, double reference_y = 1.0);

  const MultiIndex& alpha() const noexcept { return alpha_; }
  const std::vector<double>& normalization() const noexcept { return c_; }
  /// Largest |int T_1(., y) dnu - 1| found at the verification centers.
  double verification_residual() const noexcept { return residual_; }
  static constexpr std::array<double, 5> kVerificationCenters = {0.05, 0.5, 2.0, 5.0, 12.0};

  double axis_kernel(std::size_t k, double t, double x, double y) const;
  double operator()(double t, std::span<const double> x, std::span<const double> y) const;

  /// int_0^inf T_1^{(k)}(x, y) dnu_k(x) by composite quadrature (with the
  /// current normalization).
  double axis_mass(std::size_t k, double y) const;

 private:
  double unit_kernel(std::size_t k, double t, double x, double y) const;
  double unnormalized_mass(std::size_t k, double y) const;

  MultiIndex alpha_;
  std::vector<double> c_;
  double residual_ = 0.0;
};

double heat_kernel(const HeatKernelEval& hk, double t, std::span<const double> x, std::span<const double> y);

/// Log-spaced times in [t_min, t_max].
struct TimeGrid {
  std::vector<double> t;

  static TimeGrid log_spaced(double t_min, double t_max, std::size_t count);
  /// 64 points in [1e-4, 1e4].
  static TimeGrid defaults();
  /// Same count and spacing on [s t_min, s t_max].
  TimeGrid scaled(double s) const;
  /// Twice as many points over the same range.
  TimeGrid refined() const;
  double t_min() const { return t.front(); }
  double t_max() const { return t.back(); }
};

/// T_t f by quadrature against the closed-form kernel on the grid of f.
/// Times below the grid's resolvable bound (sqrt(2t) < h_max / 5) are
/// raised to that bound with a warning.
GridFunction heat_apply(const HeatKernelEval& hk, double t, const GridFunction& f);

/// Smallest t that heat_apply resolves on this grid.
double min_resolvable_time(const Grid& g);

/// T_t f = H(e^{-t|lambda|^2} Hf) through a transform plan.
GridFunction heat_apply(const TransformPlan& plan, double t, const GridFunction& f);

/// max over tg of |T_t f| using the quadrature route (clipped times).
GridFunction maximal_function(const HeatKernelEval& hk, const TimeGrid& tg, const GridFunction& f);

/// max over tg of |T_t f| using the spectral route; valid for every t.
GridFunction maximal_function(const TransformPlan& plan, const TimeGrid& tg, const GridFunction& f);

struct HeatSample {
  double t;
  Point x;
  Point y;
};

/// Regular (t, x, y) lattice in d dimensions: `per_axis` log-spaced values of
/// t in [t_lo, t_hi] and of each x_k, y_k in [s_lo, s_hi].
std::vector<HeatSample> heat_sample_lattice(std::size_t dims, double t_lo, double t_hi, double s_lo, double s_hi,
                                            std::size_t per_axis);

/// Minimal C in T_t(x,y) <= C exp(-c|x-y|^2/t) / nu(B(x, sqrt t)) for c = 1/8
/// on a coarse and a refined sample, positivity, and the two-regime
/// asymptotic bands (per axis: t^{-(2 alpha + 1)/2} e^{-(x^2+y^2)/4t} when
/// xy < t, t^{-1/2} (xy)^{-alpha} e^{-(x-y)^2/4t} when xy >= t).
EstimateReport gaussian_bound_check(const HeatKernelEval& hk, const std::vector<HeatSample>& coarse,
                                    const std::vector<HeatSample>& refined, double band_limit = 10.0,
                                    double stability_limit = 1.25);

/// Ratio int |T_1(x,y) - T_1(x,y')| dnu(x) / |y - y'| over the pairs; passes
/// when the ratios lie within a factor `band` of each other.  For d = 2 the
/// full tensor integral is compared with the per-axis product bound.
EstimateReport heat_lipschitz_check(const HeatKernelEval& hk, const std::vector<std::pair<Point, Point>>& pairs,
                                    double band = 2.0);

/// Spot check of |T_t(x,y) - T_t(x,y')| <= C (|y-y'|/sqrt t)^delta / nu(B(x, sqrt t))
/// for |y - y'| <= sqrt t, d = 1.  Reports C for delta = 1 on a coarse and a
/// refined lattice and the fitted exponent of the envelope.
EstimateReport heat_holder_check(const HeatKernelEval& hk, std::size_t per_axis = 8, double stability_limit = 1.25);

}  // namespace hml
