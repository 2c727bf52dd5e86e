#include "hml/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hml {

QuadratureRule gauss_legendre(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: n must be positive");
  QuadratureRule q;
  q.nodes.resize(n);
  q.weights.resize(n);
  const double pi = std::numbers::pi;
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess for the i-th largest root.
    double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 30; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.nodes[i] = -x;
    q.nodes[n - 1 - i] = x;
    q.weights[i] = w;
    q.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) q.nodes[n / 2] = 0.0;
  return q;
}

QuadratureRule gauss_legendre(std::size_t n, double a, double b) {
  QuadratureRule q = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (std::size_t i = 0; i < n; ++i) {
    q.nodes[i] = mid + half * q.nodes[i];
    q.weights[i] *= half;
  }
  return q;
}

QuadratureRule gauss_jacobi_origin(std::size_t n, double beta, double h) {
  if (n == 0) throw std::invalid_argument("gauss_jacobi_origin: n must be positive");
  if (!(beta > -1.0)) throw std::invalid_argument("gauss_jacobi_origin: beta must exceed -1");
  // Jacobi weight (1-t)^a (1+t)^b on [-1,1] with a = 0, b = beta.
  const double a = 0.0, b = beta;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const double s = 2.0 * k + a + b;
    double diag;
    if (k == 0)
      diag = (b - a) / (a + b + 2.0);
    else
      diag = (b * b - a * a) / (s * (s + 2.0));
    J(k, k) = diag;
    if (k + 1 < n) {
      const double kk = k + 1.0;
      const double s1 = 2.0 * kk + a + b;
      double off2;
      if (kk == 1.0)
        off2 = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
      else
        off2 = 4.0 * kk * (kk + a) * (kk + b) * (kk + a + b) / (s1 * s1 * (s1 + 1.0) * (s1 - 1.0));
      J(k, k + 1) = J(k + 1, k) = std::sqrt(off2);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  const double mu0 = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                              std::lgamma(a + b + 2.0));
  QuadratureRule q;
  q.nodes.resize(n);
  q.weights.resize(n);
  const double scale = std::pow(0.5 * h, b + 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = es.eigenvalues()(static_cast<Eigen::Index>(i));
    const double v = es.eigenvectors()(0, static_cast<Eigen::Index>(i));
    q.nodes[i] = 0.5 * h * (1.0 + t);
    q.weights[i] = mu0 * v * v * scale;
  }
  return q;
}

}  // namespace hml
