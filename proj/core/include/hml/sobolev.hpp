#pragma once

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hml/partition.hpp"
#include "hml/symbol.hpp"

namespace hml {

/// Window eta supported in the annulus 1/2 <= |u| <= 2.
struct Window {
  std::string name;
  std::function<double(std::span<const double>)> eta;
};

/// The plain dyadic bump psi(|u|).
Window default_window();
/// exp(1 - 1/(1 - s^2)) in s = (2|u| - 5/2) / (3/2), an independent window.
Window alternate_window();

/// Periodized sampling box [-half_width, half_width]^d.  samples = 0 picks
/// a resolution by dimension: 4096 per axis for d = 1, 1024 for d = 2 and
/// 128 for d = 3.
struct SobolevBox {
  double half_width = 4.0;
  std::size_t samples = 0;

  std::size_t samples_for(std::size_t dims) const;
};

struct SobolevResult {
  double norm = 0.0;
  /// Share of the weighted spectrum on the outermost 1/16 of the
  /// frequency range (periodization / aliasing monitor).
  double nyquist_tail = 0.0;
  bool tail_warning = false;
};

/// ||g||_{W^beta_2(R^d)} = ( (2 pi)^{-d} int |g^(xi)|^2 (1 + |xi|^2)^beta dxi )^{1/2}
/// for g supported inside the box, via a d-dimensional DFT (FFTW).
SobolevResult sobolev_norm(std::size_t dims, const std::function<cplx(std::span<const double>)>& g, double beta,
                           const SobolevBox& box = {});
/// The same for several indices from one transform.
std::vector<SobolevResult> sobolev_norms(std::size_t dims, const std::function<cplx(std::span<const double>)>& g,
                                         std::span<const double> betas, const SobolevBox& box = {});

/// ||eta(.) n(2^j .)||_{W^beta_2}.  Warns on a Nyquist tail above 1e-8.
SobolevResult local_sobolev_norm(const Symbol& n, int j, const Window& eta, double beta, const SobolevBox& box = {});
/// Several indices at once, without warnings.
std::vector<SobolevResult> local_sobolev_norms(const Symbol& n, int j, const Window& eta,
                                               std::span<const double> betas, const SobolevBox& box = {});

struct SobolevProfile {
  double beta = 0.0;
  std::string window;
  int j_lo = 0;
  int j_hi = 0;
  std::map<int, double> norms;
  double sup_norm = 0.0;
  double min_norm = 0.0;
  /// max / min over the range.
  double flatness = 0.0;
  bool tail_warning = false;
};

/// Emits one warning per profile listing the j with a Nyquist tail above 1e-8.
SobolevProfile hormander_sup(const Symbol& n, double beta, int j_lo, int j_hi, const Window& eta = default_window(),
                             const SobolevBox& box = {});
/// One profile per beta, sharing the transforms.
std::vector<SobolevProfile> hormander_profiles(const Symbol& n, std::span<const double> betas, int j_lo, int j_hi,
                                               const Window& eta = default_window(), const SobolevBox& box = {});

struct PotentialKernelValue {
  std::complex<double> value;
  bool converged = true;
};

/// G_z(x) = Gamma(z/2)^{-1} int_0^inf (4 pi t)^{-d/2} e^{-|x|^2/4t} e^{-t} t^{z/2} dt/t,
/// Re z > 0, x != 0.  Trapezoid rule in v = log t (double-exponential decay
/// at both ends); `converged` compares against the half-step rule.
PotentialKernelValue bessel_potential_kernel(std::complex<double> z, std::span<const double> x);

/// n = h * G_s built from a bounded h, so ||n||_{L^infty_s} = ||h||_inf.
///   cos:   h(u) = cos(u_1)               n = 2^{-s/2} cos(u_1)
///   sign:  h(u) = sign(u), d = 1         n = 2 int_0^u G_s
///   gauss: h(u) = exp(-|u|^2)            n radial, by quadrature in t
/// The sign and gauss members are tabulated once on a fine radial grid.
class PotentialFamily {
 public:
  PotentialFamily(std::string h_name, double s, std::size_t dims);

  const std::string& h_name() const noexcept { return h_name_; }
  double s() const noexcept { return s_; }
  std::size_t dims() const noexcept { return dims_; }
  double h_sup() const noexcept { return 1.0; }
  /// ||n||_{L^infty_s}, equal to ||h||_inf by construction.
  double potential_norm() const noexcept { return h_sup(); }

  double h(std::span<const double> u) const;
  double n(std::span<const double> u) const;
  Symbol symbol() const;

 private:
  double radial_profile(double r) const;

  std::string h_name_;
  double s_;
  std::size_t dims_;
  std::shared_ptr<const std::vector<double>> table_;
  double table_step_ = 0.0;
};

}  // namespace hml
