#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>

namespace hml {

using cplx = std::complex<double>;

/// A bounded multiplier n on R^d together with its sup-norm bound and an
/// optional support annulus a <= |u| <= b.  The operator symbol is
/// m(lambda) = n(lambda_1^2, ..., lambda_d^2).
class Symbol {
 public:
  using Fn = std::function<cplx(std::span<const double>)>;

  Symbol(std::string name, std::size_t dims, Fn n, double sup_norm,
         std::optional<std::pair<double, double>> support = std::nullopt);

  const std::string& name() const noexcept { return name_; }
  std::size_t dims() const noexcept { return dims_; }
  double sup_norm() const noexcept { return sup_norm_; }
  const std::optional<std::pair<double, double>>& support() const noexcept { return support_; }

  cplx operator()(std::span<const double> u) const { return n_(u); }
  /// m(lambda) = n(lambda^2).
  cplx m(std::span<const double> lambda) const;

  /// Symbol u -> n(2^j u) with the same bound.
  Symbol dilated(int j) const;

 private:
  std::string name_;
  std::size_t dims_;
  Fn n_;
  double sup_norm_;
  std::optional<std::pair<double, double>> support_;
};

/// Smooth 0-homogeneous angular cutoff: 1 on the closed positive quadrant
/// (minus the origin), 0 where u_1 + ... + u_d <= |u| / d.  In d = 1 this is
/// the indicator of u > 0.
double angular_cutoff(std::span<const double> u);

Symbol identity_symbol(std::size_t dims);
/// n(u) = exp(-t (u_1 + ... + u_d)), i.e. m(lambda) = exp(-t |lambda|^2),
/// extended evenly in each u_k off the quadrant.
Symbol heat_symbol(std::size_t dims, double t);

/// n(u) = Xi(u) S int_0^inf e^{-tS} phi(t) dt with S = u_1 + ... + u_d,
/// evaluated by quadrature in log t.  `sup_norm` bounds |n|.
Symbol laplace_type_symbol(std::size_t dims, std::function<cplx(double)> phi, double sup_norm, std::string name);
/// phi = 1: n = Xi.
Symbol laplace_type_const(std::size_t dims);
/// phi(t) = t^{i gamma}: n = Gamma(1 + i gamma) Xi(u) S^{-i gamma}.
Symbol laplace_type_imag_power(std::size_t dims, double gamma);

/// n(u) = psi(|u|) with the plain dyadic bump.
Symbol bump_symbol(std::size_t dims);
/// n(u) = psi(|u|) exp(i k u_1).
Symbol oscillatory_symbol(std::size_t dims, double k);
/// Negative control: n(u) = Xi(u) exp(i / S) chi(2^{-12}|u|).  Its localized
/// Sobolev norms grow like 2^{-j beta} as j -> -inf.
Symbol divergent_symbol(std::size_t dims);

/// Tabulated symbol read from CSV with columns u_1..u_d, Re n, Im n on a
/// tensor grid; multilinear interpolation inside the box, 0 outside.
Symbol tabulated_symbol(const std::string& path, std::size_t dims);

}  // namespace hml
