#include "hml/partition.hpp"

#include <cmath>

#include "hml/multi_index.hpp"

namespace hml {
namespace {

double h(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double plain_psi(double r) { return smooth_step(r) - smooth_step(2.0 * r); }

}  // namespace

double smooth_step(double s) {
  if (s <= 1.0) return 1.0;
  if (s >= 2.0) return 0.0;
  const double a = h(2.0 - s), b = h(s - 1.0);
  return a / (a + b);
}

double DyadicPartition::operator()(double r) const {
  if (!(r > inner_radius()) || !(r < outer_radius())) return 0.0;
  const double p = plain_psi(r);
  if (variant_ == PartitionVariant::plain) return p;
  // Only the dilates k = -1, 0, 1 can overlap supp psi.
  double s = 0.0;
  for (int k = -1; k <= 1; ++k) {
    const double q = plain_psi(std::ldexp(r, -k));
    s += q * q;
  }
  return p / std::sqrt(s);
}

double DyadicPartition::operator()(std::span<const double> u) const { return (*this)(euclidean_norm(u)); }

double DyadicPartition::piece(int j, double r) const { return (*this)(std::ldexp(r, -j)); }

double DyadicPartition::partial_sum(double r, int j_lo, int j_hi) const {
  double s = 0.0;
  for (int j = j_lo; j <= j_hi; ++j) {
    const double p = piece(j, r);
    s += variant_ == PartitionVariant::plain ? p : p * p;
  }
  return s;
}

DyadicPartition make_partition(PartitionVariant variant) { return DyadicPartition(variant); }

}  // namespace hml
