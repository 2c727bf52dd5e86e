#pragma once

#include <span>
#include <vector>

#include "hml/grid.hpp"
#include "hml/hankel.hpp"
#include "hml/partition.hpp"
#include "hml/report.hpp"
#include "hml/sobolev.hpp"
#include "hml/symbol.hpp"

namespace hml {

/// T_m f = H(m Hf) with m(lambda) = n(lambda^2).  Warns when |m| on the dual
/// grid exceeds the symbol's recorded bound.
GridFunction apply_multiplier(const TransformPlan& plan, const Symbol& m, const GridFunction& f);

/// Dyadic indices j whose pieces psi(2^-j lambda^2) m(lambda) the plan
/// resolves: 2^{(j+1)/2} <= Lambda and 32 * 2^{-j/2} <= R.
struct DyadicBand {
  int j_lo = 0;
  int j_hi = -1;
  bool empty() const { return j_hi < j_lo; }
};
DyadicBand resolvable_band(const TransformPlan& plan);

/// psi(2^{-j} (lambda_1^2, ..., lambda_d^2)) m(lambda) on the dual grid.
GridFunction dyadic_symbol_piece(const TransformPlan& plan, const Symbol& m, const DyadicPartition& psi, int j);

/// K_j(., y) = tau^y H(m_j).  Warns when j lies outside resolvable_band.
GridFunction kernel_piece(const TransformPlan& plan, const Symbol& m, const DyadicPartition& psi, int j,
                          std::span<const double> y);

/// Partition of unity residual max |sum_{|j| <= 40} psi(2^-j r) - 1| (psi^2
/// for the squared variant) over log-spaced r in [2^-35, 2^35], plus the
/// support check psi = 0 off (1/2, 2).
EstimateReport partition_check(PartitionVariant variant, double tolerance = 1e-12);

/// Direct evaluation of dyadic kernel pieces in d = 1 on the rescaled band
/// mu in [2^{-1/2}, 2^{1/2}]:
///
///   H(m_j)(x)  = 2^{jQ/2} int psi(mu^2) m(2^{j/2} mu) E_X(mu) dnu(mu),
///   K_j(x, y)  = 2^{jQ/2} int psi(mu^2) m(2^{j/2} mu) E_X(mu) E_Y(mu) dnu(mu),
///
/// with X = 2^{j/2} x, Y = 2^{j/2} y.  The composite Gauss rule in mu is
/// sized for arguments X + Y up to `max_argument` and for the phase rate of
/// the rescaled symbol; `resolved()` is false when that phase rate could not
/// be sampled.
class DyadicKernel1D {
 public:
  DyadicKernel1D(double alpha, const Symbol& m, const DyadicPartition& psi, int j, double max_argument);

  int j() const noexcept { return j_; }
  double scale() const noexcept { return scale_; }
  bool resolved() const noexcept { return resolved_; }
  std::size_t node_count() const noexcept { return mu_.size(); }

  /// H(m_j) at the points xs.
  std::vector<cplx> transform(std::span<const double> xs) const;
  /// K_j(xs[a], ys[b]) stored row-major as [b * xs.size() + a].
  std::vector<cplx> kernel(std::span<const double> xs, std::span<const double> ys) const;

 private:
  std::vector<double> reduced_bessel(double x) const;

  double nu_;
  int j_;
  double scale_;
  double prefactor_;
  bool resolved_ = true;
  std::vector<double> mu_;
  std::vector<cplx> weight_;  // Gauss weight * psi(mu^2) m(2^{j/2} mu) mu^{2 alpha}
};

/// Kernel pieces on a plan: the partition sum of m_j against m on the
/// dual nodes of the resolvable annulus, the approximate-identity mass of
/// sum_j K_j(., y) plus the low-frequency residue, the dilation law
/// H(m_j) = (H(m~_j))_{2^{j/2}}, and the fitted decay exponent of the
/// tails int_{|x-y|>r} |K_j| dnu against 2^{j/2} r (d = 1).  The mass is
/// gated only when m(lambda) settles as lambda -> 0.
EstimateReport kernel_piece_check(const TransformPlan& plan, const Symbol& m, const DyadicPartition& psi, double y,
                                  int j_lo, int j_hi);

/// Localized Sobolev profiles j -> ||eta n(2^j .)||_{W^beta_2} for each beta,
/// under the default window and the alternate window.  Passes when every
/// profile has max/min <= flat_limit; `max_spread` records the largest
/// ratio seen (the divergent control is expected to exceed 10).  Fails when a
/// profile grows by a factor >= 1.25 over the last step at either end of the
/// range (`edge_growth`); otherwise a non-flat profile is inconclusive.
EstimateReport hormander_check(const Symbol& n, const std::vector<double>& betas, int j_lo, int j_hi,
                               double flat_limit = 1.5, const SobolevBox& box = {});

/// Sobolev box adequate for an oscillatory family up to frequency k_max.
SobolevBox oscillation_box(std::size_t dims, double k_max);

/// Ratio ||H(m_k) w^s||_{L^2} / ||n_k||_{W^{beta}_2} for n_k = eta(u) e^{i k u_1},
/// k = 0..k_max, at the two indices beta = s + d/2 + epsilon and
/// beta = s + epsilon.  Each ratio sweep passes when
/// max_k ratio_k <= band * ratio_0 (boundedness across the family).  The
/// weaker index is gated only when every alpha_k >= 1/2.
EstimateReport weighted_transform_bound_check(const TransformPlan& plan, double s, double epsilon, int k_max = 32,
                                              double band = 10.0);

/// Envelope decay of |H(m)(x)| for a compactly supported smooth n: fits
/// the running-max envelope against (1 + |x|) on [x_lo, x_hi] (along the
/// diagonal x_1 = ... = x_d when d > 1).  Passes when the fitted exponent is
/// at least every requested order N.
EstimateReport pointwise_decay_check(const TransformPlan& plan, const Symbol& n, const std::vector<int>& orders,
                                     double x_lo, double x_hi);

/// For n = h * G_s built constructively, the localized W^beta_2 norms with
/// beta < s are finite across the j range under both windows.
EstimateReport potential_family_check(const PotentialFamily& family, double beta, int j_lo, int j_hi,
                                      const SobolevBox& box = {});

}  // namespace hml
