#pragma once

#include <cstddef>
#include <vector>

namespace hml {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(std::size_t n);

/// n-point Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(std::size_t n, double a, double b);

/// n-point Gauss-Jacobi rule for the weight x^beta on [0, h] (beta > -1).
/// Exact for x^beta p(x) with deg p <= 2n - 1.
QuadratureRule gauss_jacobi_origin(std::size_t n, double beta, double h);

}  // namespace hml
