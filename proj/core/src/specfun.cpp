#include "hml/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace hml {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 1e-17;

void check_order(double nu, const char* who) {
  if (!std::isfinite(nu) || !(nu > -1.0))
    throw std::invalid_argument(std::string(who) + ": order must be finite and > -1");
}

void check_argument(double x, const char* who) {
  if (!std::isfinite(x) || x < 0.0)
    throw std::invalid_argument(std::string(who) + ": argument must be finite and >= 0");
}

// sum_k (-s^2/4)^k / (k! Gamma(nu+k+1)), i.e. (s/2)^{-nu} J_nu(s).
double j_series_reduced(double nu, double s) {
  const double q = -0.25 * s * s;
  double term = 1.0 / std::tgamma(nu + 1.0);
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (std::abs(term) < kEps * std::abs(sum)) break;
  }
  return sum;
}

double j_miller(double nu, double x) {
  const int m = 2 * static_cast<int>((x + std::max(nu, 0.0) + 40.0) / 2.0);
  const int half = m / 2;
  // g[k] = Gamma(nu+k)/k! for k >= 1; the Neumann weights are c_0 = Gamma(nu+1)
  // and c_k = (nu+2k) g[k].
  std::vector<double> g(static_cast<std::size_t>(half) + 1);
  g[1] = std::tgamma(nu + 1.0);
  for (int k = 1; k < half; ++k) g[static_cast<std::size_t>(k) + 1] = g[static_cast<std::size_t>(k)] * (nu + k) / (k + 1.0);

  double f_next = 0.0, f = 1e-300, sum = 0.0;
  for (int i = m; i >= 0; --i) {
    if (i % 2 == 0) {
      const int k = i / 2;
      const double c = (k == 0) ? g[1] : (nu + 2.0 * k) * g[static_cast<std::size_t>(k)];
      sum += c * f;
    }
    if (i == 0) break;
    const double f_prev = 2.0 * (nu + i) / x * f - f_next;
    f_next = f;
    f = f_prev;
    if (std::abs(f) > 1e250) {
      f *= 1e-250;
      f_next *= 1e-250;
      sum *= 1e-250;
    }
  }
  return f / sum * std::pow(0.5 * x, nu);
}

// Hankel expansion coefficients a_k(nu) / x^k summed into P and Q.
void hankel_pq(double nu, double x, double& p, double& q) {
  const double mu = 4.0 * nu * nu;
  p = 1.0;
  q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
    const double mag = std::abs(term);
    if (mag > last) break;
    last = mag;
    // a_k / x^k enters P with sign (-1)^{k/2} for even k, Q with (-1)^{(k-1)/2} for odd k.
    const int r = k % 4;
    if (r == 0) p += term;
    else if (r == 1) q += term;
    else if (r == 2) p -= term;
    else q -= term;
    if (mag < kEps) break;
  }
}

double j_asymptotic(double nu, double x) {
  double p, q;
  hankel_pq(nu, x, p, q);
  const double phi = 0.5 * kPi * nu + 0.25 * kPi;
  const double cx = std::cos(x), sx = std::sin(x);
  const double cw = cx * std::cos(phi) + sx * std::sin(phi);
  const double sw = sx * std::cos(phi) - cx * std::sin(phi);
  return std::sqrt(2.0 / (kPi * x)) * (p * cw - q * sw);
}

bool use_asymptotic_j(double nu, double x) { return x > 25.0 + nu * nu; }

// e^{-x} sum_k (x^2/4)^k / (k! Gamma(mu+k+1)) computed stably.
double i_series_reduced_scaled(double mu, double x) {
  const double q = 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (k * (mu + k));
    sum += term;
    if (term < kEps * sum) break;
  }
  return sum * std::exp(-x - std::lgamma(mu + 1.0));
}

double i_asymptotic_scaled(double mu, double x) {
  const double m4 = 4.0 * mu * mu;
  double term = 1.0, sum = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    term *= -(m4 - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
    const double mag = std::abs(term);
    if (mag > last) break;
    last = mag;
    sum += term;
    if (mag < kEps * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * kPi * x);
}

constexpr double kISeriesLimit = 30.0;

}  // namespace

double bessel_j(double nu, double x) {
  check_order(nu, "bessel_j");
  check_argument(x, "bessel_j");
  if (x == 0.0) {
    if (nu == 0.0) return 1.0;
    return nu > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  if (x <= 2.0) return std::pow(0.5 * x, nu) * j_series_reduced(nu, x);
  if (use_asymptotic_j(nu, x)) return j_asymptotic(nu, x);
  return j_miller(nu, x);
}

double bessel_i_scaled(double mu, double x) {
  check_order(mu, "bessel_i_scaled");
  check_argument(x, "bessel_i_scaled");
  if (x == 0.0) {
    if (mu == 0.0) return 1.0;
    return mu > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  if (x <= kISeriesLimit) return std::pow(0.5 * x, mu) * i_series_reduced_scaled(mu, x);
  return i_asymptotic_scaled(mu, x);
}

std::complex<double> gamma(std::complex<double> z) {
  static constexpr std::array<double, 9> c = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * gamma(1.0 - z));
  z -= 1.0;
  std::complex<double> a = c[0];
  const std::complex<double> t = z + 7.5;
  for (int i = 1; i < 9; ++i) a += c[static_cast<std::size_t>(i)] / (z + static_cast<double>(i));
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

namespace detail {

double bessel_j_reduced(double nu, double s) {
  if (s <= 2.0) return std::pow(2.0, -nu) * j_series_reduced(nu, s);
  const double j = use_asymptotic_j(nu, s) ? j_asymptotic(nu, s) : j_miller(nu, s);
  return j * std::pow(s, -nu);
}

double bessel_i_reduced_scaled(double mu, double z) {
  if (z <= kISeriesLimit) return i_series_reduced_scaled(mu, z);
  return std::pow(0.5 * z, -mu) * i_asymptotic_scaled(mu, z);
}

}  // namespace detail

double e_kernel(const MultiIndex& alpha, std::span<const double> x, std::span<const double> lambda) {
  if (x.size() != alpha.dims() || lambda.size() != alpha.dims())
    throw std::invalid_argument("e_kernel: dimension mismatch");
  double v = 1.0;
  for (std::size_t k = 0; k < alpha.dims(); ++k) {
    if (!(x[k] > 0.0) || !std::isfinite(x[k])) throw std::invalid_argument("e_kernel: x must be positive");
    if (!(lambda[k] >= 0.0) || !std::isfinite(lambda[k]))
      throw std::invalid_argument("e_kernel: lambda must be nonnegative");
    v *= detail::bessel_j_reduced(alpha.bessel_order(k), x[k] * lambda[k]);
  }
  return v;
}

double e_kernel_origin(const MultiIndex& alpha) {
  double v = 1.0;
  for (std::size_t k = 0; k < alpha.dims(); ++k) {
    const double nu = alpha.bessel_order(k);
    v *= std::pow(2.0, -nu) / std::tgamma(nu + 1.0);
  }
  return v;
}

}  // namespace hml
