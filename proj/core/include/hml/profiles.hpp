#pragma once

#include <cmath>
#include <span>

namespace hml {

/// C_c^infty bump on (a, b): exp(c - c / (1 - s^2)) with s the position
/// rescaled to (-1, 1).  Peak value 1 at the midpoint.  Larger `sharpness`
/// concentrates the bump and speeds up the decay of its Fourier/Hankel
/// transform.
inline double smooth_bump(double x, double a, double b, double sharpness = 4.0) {
  const double s = (2.0 * x - a - b) / (b - a);
  if (!(std::abs(s) < 1.0)) return 0.0;
  return std::exp(sharpness - sharpness / (1.0 - s * s));
}

/// Product of one-dimensional bumps over a box.
inline double smooth_bump(std::span<const double> x, std::span<const double> lo, std::span<const double> hi,
                          double sharpness = 4.0) {
  double v = 1.0;
  for (std::size_t k = 0; k < x.size() && v != 0.0; ++k) v *= smooth_bump(x[k], lo[k], hi[k], sharpness);
  return v;
}

/// exp(-a |x - c|^2).
inline double gaussian(std::span<const double> x, double a, std::span<const double> c) {
  double r2 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) r2 += (x[k] - c[k]) * (x[k] - c[k]);
  return std::exp(-a * r2);
}

}  // namespace hml
