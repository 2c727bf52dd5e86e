#pragma once

#include <span>

namespace hml {

/// C^infty step: 1 on [0, 1], 0 on [2, inf), glued with h(t) = e^{-1/t}.
double smooth_step(double s);

enum class PartitionVariant { plain, squared };

/// Radial dyadic bump psi supported in the annulus 1/2 <= |u| <= 2.
///   plain:   psi(r) = chi(r) - chi(2r),          sum_j psi(2^-j r) = 1
///   squared: psi / sqrt(sum_k psi^2(2^-k r)),    sum_j psi^2(2^-j r) = 1
class DyadicPartition {
 public:
  explicit DyadicPartition(PartitionVariant variant = PartitionVariant::plain) : variant_(variant) {}

  PartitionVariant variant() const noexcept { return variant_; }
  static constexpr double inner_radius() { return 0.5; }
  static constexpr double outer_radius() { return 2.0; }

  /// psi at radius r >= 0.
  double operator()(double r) const;
  /// psi(|u|).
  double operator()(std::span<const double> u) const;
  /// psi(2^{-j} r).
  double piece(int j, double r) const;

  /// sum_{j in [j_lo, j_hi]} psi(2^-j r) (plain) or psi^2 (squared).
  double partial_sum(double r, int j_lo, int j_hi) const;

 private:
  PartitionVariant variant_;
};

DyadicPartition make_partition(PartitionVariant variant);

}  // namespace hml
