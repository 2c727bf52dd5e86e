#pragma once

#include <complex>
#include <span>

#include "hml/multi_index.hpp"

namespace hml {

/// Bessel function of the first kind J_nu(x) for nu > -1 and x >= 0.
///
/// Three regimes: the power series for x <= 2, Miller backward recurrence
/// normalized by the Neumann sum for moderate x, and the Hankel asymptotic
/// expansion for x > 25 + nu^2.  Relative accuracy is about 1e-14 away from
/// zeros.  J_nu(0) is +inf for nu < 0.
double bessel_j(double nu, double x);

/// e^{-x} I_mu(x) for mu > -1 and x >= 0.
double bessel_i_scaled(double mu, double x);

/// Gamma function on the complex plane (Lanczos approximation with
/// reflection), about 1e-15 relative accuracy.
std::complex<double> gamma(std::complex<double> z);

/// E_x(lambda) = prod_k (x_k lambda_k)^{-nu_k} J_{nu_k}(x_k lambda_k),
/// nu_k = alpha_k - 1/2.  Components with lambda_k = 0 take the continuous
/// limit 2^{-nu_k} / Gamma(nu_k + 1).
double e_kernel(const MultiIndex& alpha, std::span<const double> x, std::span<const double> lambda);

/// E_x(0) = prod_k 2^{-nu_k} / Gamma(nu_k + 1).
double e_kernel_origin(const MultiIndex& alpha);

namespace detail {

/// s^{-nu} J_nu(s), finite at s = 0.
double bessel_j_reduced(double nu, double s);

/// e^{-z} (z/2)^{-mu} I_mu(z), finite at z = 0.
double bessel_i_reduced_scaled(double mu, double z);

}  // namespace detail

}  // namespace hml
