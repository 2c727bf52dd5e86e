#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "hml/grid.hpp"
#include "hml/report.hpp"

namespace hml {

/// Dense per-axis discretization of the Hankel transform between a spatial
/// grid and a dual (frequency) grid with the same alpha.
///
/// Axis k stores F_k = [E(lambda_i x_j) w_j] (dual x spatial) and
/// B_k = [E(x_i lambda_j) w~_j] (spatial x dual).  Construction refuses grid
/// pairs whose panels cannot resolve the kernel oscillation, i.e. when
/// Lambda * h_max or R * h~_max exceeds `max_phase_per_panel`.
class TransformPlan {
 public:
  static constexpr double kDefaultMaxPhase = 10.0;

  TransformPlan(std::shared_ptr<const Grid> spatial, std::shared_ptr<const Grid> dual,
                double max_phase_per_panel = kDefaultMaxPhase);

  /// Spatial grid of radius R and dual grid of radius Lambda, n nodes per axis.
  static std::shared_ptr<const TransformPlan> make(const MultiIndex& alpha, double R, double Lambda, std::size_t n,
                                                   std::size_t order = 16, std::size_t grading = 3);

  /// Smallest multiple of 16 nodes that resolves the (R, Lambda) pair.
  static std::size_t minimal_nodes(double R, double Lambda, std::size_t order = 16, std::size_t grading = 3,
                                   double max_phase_per_panel = kDefaultMaxPhase);

  const std::shared_ptr<const Grid>& spatial() const noexcept { return spatial_; }
  const std::shared_ptr<const Grid>& dual() const noexcept { return dual_; }
  const MultiIndex& alpha() const noexcept { return spatial_->alpha(); }
  std::size_t dims() const noexcept { return spatial_->dims(); }

  const std::vector<double>& forward_matrix(std::size_t k) const { return forward_[k]; }
  const std::vector<double>& backward_matrix(std::size_t k) const { return backward_[k]; }

  /// Largest kernel phase per panel, max over axes of Lambda*h and R*h~.
  double phase_per_panel() const noexcept { return phase_; }

 private:
  std::shared_ptr<const Grid> spatial_;
  std::shared_ptr<const Grid> dual_;
  std::vector<std::vector<double>> forward_;
  std::vector<std::vector<double>> backward_;
  double phase_ = 0.0;
};

/// Hf on the dual grid from f on the spatial grid.
GridFunction hankel_transform(const TransformPlan& plan, const GridFunction& f);

/// Hg on the spatial grid from g on the dual grid.  Since H^{-1} = H this is
/// the same integral with the grid roles swapped.
GridFunction inverse_hankel(const TransformPlan& plan, const GridFunction& g);

/// Samples a frequency-side function on the dual grid.
GridFunction sample_dual(const TransformPlan& plan, const std::function<cplx(std::span<const double>)>& m);

/// E_y(lambda) on the dual grid.
GridFunction e_kernel_on_dual(const TransformPlan& plan, std::span<const double> y);

/// Warns when |g| on the outermost dual panel of any axis exceeds
/// `threshold` times max |g|.  Returns the measured ratio.
double check_spectral_tail(const GridFunction& g, const char* who, double threshold = 1e-8);

/// tau^y f = H(E_y Hf).
GridFunction translate(const TransformPlan& plan, const GridFunction& f, std::span<const double> y);

/// f natural g = H(Hf Hg).
GridFunction convolve(const TransformPlan& plan, const GridFunction& f, const GridFunction& g);

/// Compares tau^y(f_t) with (tau^{ty} f)_t.  Reports relative sup and L1
/// discrepancies; passes when both are at most `tolerance`.
EstimateReport dilation_identity_check(const TransformPlan& plan, const GridFunction& f, double t,
                                       std::span<const double> y, double tolerance = 1e-5);

/// For f >= 0 supported in the box [lo, hi], checks that tau^y f is
/// nonnegative up to tol * max f, vanishes up to tol * max f outside the
/// support hull  prod_k [max(0, y_k - hi_k, lo_k - y_k), y_k + hi_k], and has
/// mass E(0) int f dnu within mass_tol relative.
EstimateReport translation_support_check(const TransformPlan& plan, const GridFunction& f, std::span<const double> y,
                                         std::span<const double> lo, std::span<const double> hi,
                                         double tol = 1e-6, double mass_tol = 1e-6);

/// Compares the spectral operator H(lambda_k^2 Hf) with a fourth-order
/// finite-difference Bessel operator -f'' - (2 alpha_k / x) f' applied to
/// the callable f along axis k, at spatial nodes inside [x_lo, x_hi].
EstimateReport diagonalization_check(const TransformPlan& plan, const std::function<double(std::span<const double>)>& f,
                                     std::size_t axis, double x_lo, double x_hi, double fd_step = 1e-2,
                                     double tolerance = 1e-7);

/// int_a^b |g(x)| x^{2 alpha} dx for d = 1, with g interpolated from its
/// nodal values onto a Gauss rule `refine` times finer than the grid panels
/// (so that sign changes of g inside a panel are resolved).
double abs_integral_1d(const GridFunction& g, double a, double b, std::size_t refine = 4);

/// Off-diagonal decay of translated dilates, d = 1: measures
///   I(r, t) = int_{|x - y| > r} |tau^y(f_t)(x)| dnu(x)
/// over the (r, t) lattice, fits the slope of log I against log(rt) and the
/// constant C = max I (rt)^delta / ||f||_{L^1(w^delta dnu)}.  Passes when
/// the slope is at most -delta + slope_margin.  Lattice points whose tail
/// falls below `noise_floor` times the mass are excluded from the fit.
EstimateReport off_diagonal_check(const TransformPlan& plan, const std::function<double(double)>& f, double y,
                                  const std::vector<double>& r_values, const std::vector<double>& t_values,
                                  double delta = 0.5, double slope_margin = 0.1, double noise_floor = 1e-12);

}  // namespace hml
