#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hml {

/// A point of (0,inf)^d or R^d, one coordinate per axis.
using Point = std::vector<double>;

/// The parameter vector alpha = (alpha_1, ..., alpha_d) of the product
/// measure x^{2 alpha} dx.  Every component is strictly greater than -1/2.
class MultiIndex {
 public:
  explicit MultiIndex(std::vector<double> alpha);

  static MultiIndex uniform(std::size_t dims, double alpha);

  std::size_t dims() const noexcept { return alpha_.size(); }
  double operator[](std::size_t k) const { return alpha_[k]; }
  std::span<const double> values() const noexcept { return alpha_; }

  /// Bessel order nu_k = alpha_k - 1/2 used by the eigenfunction kernel.
  double bessel_order(std::size_t k) const { return alpha_[k] - 0.5; }

  /// Q = sum_k (2 alpha_k + 1).
  double homogeneous_dimension() const noexcept { return q_; }

  bool operator==(const MultiIndex& other) const = default;

 private:
  std::vector<double> alpha_;
  double q_ = 0.0;
};

double euclidean_norm(std::span<const double> x);
double euclidean_distance(std::span<const double> x, std::span<const double> y);

}  // namespace hml
