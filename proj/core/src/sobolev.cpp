#include "hml/sobolev.hpp"

#include <fftw3.h>

#include <algorithm>
#include <limits>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "hml/log.hpp"
#include "hml/multi_index.hpp"
#include "hml/parallel.hpp"
#include "hml/specfun.hpp"

namespace hml {

namespace {
constexpr double kPi = std::numbers::pi;

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Window default_window() {
  const DyadicPartition psi(PartitionVariant::plain);
  return {"psi", [psi](std::span<const double> u) { return psi(u); }};
}

Window alternate_window() {
  return {"bump_1/2_2", [](std::span<const double> u) {
            const double s = (2.0 * euclidean_norm(u) - 2.5) / 1.5;
            if (!(std::abs(s) < 1.0)) return 0.0;
            return std::exp(1.0 - 1.0 / (1.0 - s * s));
          }};
}

std::size_t SobolevBox::samples_for(std::size_t dims) const {
  if (samples != 0) return samples;
  return dims == 1 ? 4096 : (dims == 2 ? 1024 : 128);
}

std::vector<SobolevResult> sobolev_norms(std::size_t dims, const std::function<cplx(std::span<const double>)>& g,
                                         std::span<const double> betas, const SobolevBox& box) {
  if (dims == 0 || dims > 3) throw std::invalid_argument("sobolev_norm: 1 <= d <= 3");
  for (double beta : betas)
    if (!(beta >= 0.0)) throw std::invalid_argument("sobolev_norm: beta must be nonnegative");
  const std::size_t N = box.samples_for(dims);
  if (N < 8 || N % 2 != 0) throw std::invalid_argument("sobolev_norm: samples must be even and >= 8");
  const double L = box.half_width;
  const double du = 2.0 * L / static_cast<double>(N);
  std::size_t total = 1;
  for (std::size_t k = 0; k < dims; ++k) total *= N;

  fftw_complex* buf = fftw_alloc_complex(total);
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    std::vector<int> n(dims, static_cast<int>(N));
    plan = fftw_plan_dft(static_cast<int>(dims), n.data(), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  parallel_for(total, [&](std::size_t i) {
    double u[3];
    std::size_t r = i;
    for (std::size_t k = dims; k-- > 0;) {
      u[k] = -L + du * static_cast<double>(r % N);
      r /= N;
    }
    const cplx v = g(std::span<const double>(u, dims));
    buf[i][0] = v.real();
    buf[i][1] = v.imag();
  });
  fftw_execute(plan);

  // |g^(xi_k)| = du^d |DFT_k|, xi_k = pi k / L, d xi = (pi / L)^d.
  const double amp = std::pow(du, static_cast<double>(dims));
  const double dxi = std::pow(kPi / L, static_cast<double>(dims));
  const auto half = static_cast<long>(N / 2);
  const long edge = half - static_cast<long>(N / 32);
  const std::size_t nb = betas.size();
  std::vector<double> sum(nb, 0.0), tail(nb, 0.0);
  for (std::size_t i = 0; i < total; ++i) {
    const double mag2 = (buf[i][0] * buf[i][0] + buf[i][1] * buf[i][1]) * amp * amp;
    if (mag2 == 0.0) continue;
    std::size_t r = i;
    double xi2 = 0.0;
    bool outer = false;
    for (std::size_t k = 0; k < dims; ++k) {
      long kk = static_cast<long>(r % N);
      r /= N;
      if (kk >= half) kk -= static_cast<long>(N);
      if (std::abs(kk) >= edge) outer = true;
      const double xi = kPi * static_cast<double>(kk) / L;
      xi2 += xi * xi;
    }
    const double lw = std::log1p(xi2);
    for (std::size_t b = 0; b < nb; ++b) {
      const double v = mag2 * (betas[b] == 0.0 ? 1.0 : std::exp(betas[b] * lw));
      sum[b] += v;
      if (outer) tail[b] += v;
    }
  }
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buf);

  std::vector<SobolevResult> out(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    out[b].norm = std::sqrt(sum[b] * dxi / std::pow(2.0 * kPi, static_cast<double>(dims)));
    out[b].nyquist_tail = sum[b] > 0.0 ? tail[b] / sum[b] : 0.0;
    out[b].tail_warning = out[b].nyquist_tail > 1e-8;
  }
  return out;
}

SobolevResult sobolev_norm(std::size_t dims, const std::function<cplx(std::span<const double>)>& g, double beta,
                           const SobolevBox& box) {
  const double b[1] = {beta};
  return sobolev_norms(dims, g, b, box)[0];
}

std::vector<SobolevResult> local_sobolev_norms(const Symbol& n, int j, const Window& eta,
                                               std::span<const double> betas, const SobolevBox& box) {
  const double s = std::ldexp(1.0, j);
  const std::size_t d = n.dims();
  return sobolev_norms(
      d,
      [&](std::span<const double> u) -> cplx {
        const double e = eta.eta(u);
        if (e == 0.0) return 0.0;
        double v[3];
        for (std::size_t k = 0; k < d; ++k) v[k] = s * u[k];
        return e * n(std::span<const double>(v, d));
      },
      betas, box);
}

SobolevResult local_sobolev_norm(const Symbol& n, int j, const Window& eta, double beta, const SobolevBox& box) {
  if (!(beta >= 0.0)) throw std::invalid_argument("local_sobolev_norm: beta must be nonnegative");
  const double b[1] = {beta};
  const SobolevResult r = local_sobolev_norms(n, j, eta, b, box)[0];
  if (r.tail_warning) {
    std::ostringstream msg;
    msg << "local_sobolev_norm: Nyquist tail " << r.nyquist_tail << " for " << n.name() << " at j=" << j
        << ", beta=" << beta << " (periodization aliasing)";
    warn(msg.str());
  }
  return r;
}

std::vector<SobolevProfile> hormander_profiles(const Symbol& n, std::span<const double> betas, int j_lo, int j_hi,
                                               const Window& eta, const SobolevBox& box) {
  if (j_hi < j_lo) throw std::invalid_argument("hormander_sup: empty j range");
  for (double beta : betas)
    if (!(beta >= 0.0)) throw std::invalid_argument("hormander_sup: beta must be nonnegative");
  const std::size_t nb = betas.size();
  std::vector<SobolevProfile> out(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    out[b].beta = betas[b];
    out[b].window = eta.name;
    out[b].j_lo = j_lo;
    out[b].j_hi = j_hi;
    out[b].min_norm = std::numeric_limits<double>::infinity();
  }
  std::vector<std::vector<int>> tail_js(nb);
  for (int j = j_lo; j <= j_hi; ++j) {
    const std::vector<SobolevResult> res = local_sobolev_norms(n, j, eta, betas, box);
    for (std::size_t b = 0; b < nb; ++b) {
      SobolevProfile& p = out[b];
      p.norms[j] = res[b].norm;
      p.sup_norm = std::max(p.sup_norm, res[b].norm);
      p.min_norm = std::min(p.min_norm, res[b].norm);
      if (res[b].tail_warning) {
        p.tail_warning = true;
        tail_js[b].push_back(j);
      }
    }
  }
  for (std::size_t b = 0; b < nb; ++b) {
    SobolevProfile& p = out[b];
    p.flatness = p.min_norm > 0.0 ? p.sup_norm / p.min_norm : std::numeric_limits<double>::infinity();
    if (!tail_js[b].empty()) {
      std::ostringstream msg;
      msg << "hormander_sup: Nyquist tail above 1e-8 for " << n.name() << ", beta=" << p.beta << ", window "
          << eta.name << " at j =";
      for (int j : tail_js[b]) msg << ' ' << j;
      msg << " (periodization aliasing)";
      warn(msg.str());
    }
  }
  return out;
}

SobolevProfile hormander_sup(const Symbol& n, double beta, int j_lo, int j_hi, const Window& eta, const SobolevBox& box) {
  const double b[1] = {beta};
  return hormander_profiles(n, b, j_lo, j_hi, eta, box)[0];
}

// ------------------------------------------------------- Bessel potentials

PotentialKernelValue bessel_potential_kernel(std::complex<double> z, std::span<const double> x) {
  if (!(z.real() > 0.0)) throw std::invalid_argument("bessel_potential_kernel: Re z must be positive");
  const double r = euclidean_norm(x);
  if (!(r > 0.0)) throw std::invalid_argument("bessel_potential_kernel: x must be nonzero");
  const double d = static_cast<double>(x.size());
  const double r2 = r * r;
  const double v_lo = std::log(r2 / 4.0) - std::log(200.0);
  const double v_hi = std::log(200.0 + 2.0 * std::abs(z));
  const double h = 0.02;
  const auto steps = static_cast<std::size_t>(std::ceil((v_hi - v_lo) / h));
  std::complex<double> full = 0.0, coarse = 0.0;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double v = v_lo + h * static_cast<double>(i);
    const double ev = std::exp(v);
    const std::complex<double> e = -0.5 * d * v - r2 / (4.0 * ev) - ev + 0.5 * z * v;
    const std::complex<double> f = std::exp(e);
    full += f;
    if (i % 2 == 0) coarse += f;
  }
  const double pre = std::pow(4.0 * kPi, -0.5 * d);
  const std::complex<double> g = hml::gamma(0.5 * z);
  PotentialKernelValue out;
  out.value = pre * h * full / g;
  const std::complex<double> half = pre * 2.0 * h * coarse / g;
  out.converged = std::abs(out.value - half) <= 1e-8 * std::max(std::abs(out.value), 1e-300);
  if (!out.converged) warn("bessel_potential_kernel: quadrature did not converge");
  return out;
}

// ---------------------------------------------------------- PotentialFamily

namespace {

// Gamma(s/2)^{-1} int_0^inf e^{-t} t^{s/2 - 1} q(t) dt in v = log t.
double potential_t_integral(double s, const std::function<double(double)>& q) {
  const double v_lo = -84.0 / s;
  const double v_hi = std::log(120.0);
  const double h = 0.02;
  const auto steps = static_cast<std::size_t>(std::ceil((v_hi - v_lo) / h));
  double acc = 0.0;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double v = v_lo + h * static_cast<double>(i);
    const double t = std::exp(v);
    acc += std::exp(-t + 0.5 * s * v) * q(t);
  }
  return h * acc / std::tgamma(0.5 * s);
}

constexpr double kTableRadius = 40.0;
constexpr double kTableStep = 0.005;

}  // namespace

PotentialFamily::PotentialFamily(std::string h_name, double s, std::size_t dims)
    : h_name_(std::move(h_name)), s_(s), dims_(dims) {
  if (!(s > 0.0)) throw std::invalid_argument("PotentialFamily: s must be positive");
  if (dims == 0) throw std::invalid_argument("PotentialFamily: dims must be positive");
  if (h_name_ == "cos") return;
  if (h_name_ == "sign" && dims != 1) throw std::invalid_argument("PotentialFamily: sign requires d = 1");
  if (h_name_ != "sign" && h_name_ != "gauss")
    throw std::invalid_argument("PotentialFamily: unknown h '" + h_name_ + "' (cos, sign, gauss)");
  const auto count = static_cast<std::size_t>(kTableRadius / kTableStep) + 1;
  auto table = std::make_shared<std::vector<double>>(count);
  const double dd = static_cast<double>(dims);
  const bool sign = h_name_ == "sign";
  parallel_for(count, [&](std::size_t i) {
    const double r = kTableStep * static_cast<double>(i);
    if (sign) {
      (*table)[i] = potential_t_integral(s, [r](double t) { return std::erf(r / (2.0 * std::sqrt(t))); });
    } else {
      (*table)[i] = potential_t_integral(
          s, [r, dd](double t) { return std::pow(1.0 + 4.0 * t, -0.5 * dd) * std::exp(-r * r / (1.0 + 4.0 * t)); });
    }
  });
  table_ = table;
  table_step_ = kTableStep;
}

double PotentialFamily::radial_profile(double r) const {
  const auto& t = *table_;
  if (r >= kTableRadius) return h_name_ == "sign" ? 1.0 : 0.0;
  const double x = r / table_step_;
  auto i = static_cast<long>(std::floor(x));
  i = std::clamp<long>(i - 1, 0, static_cast<long>(t.size()) - 4);
  // Four-point Lagrange interpolation on nodes i .. i+3.
  double acc = 0.0;
  for (long a = 0; a < 4; ++a) {
    double w = 1.0;
    for (long b = 0; b < 4; ++b)
      if (b != a) w *= (x - static_cast<double>(i + b)) / static_cast<double>(a - b);
    acc += w * t[static_cast<std::size_t>(i + a)];
  }
  return acc;
}

double PotentialFamily::h(std::span<const double> u) const {
  if (h_name_ == "cos") return std::cos(u[0]);
  if (h_name_ == "sign") return u[0] > 0.0 ? 1.0 : (u[0] < 0.0 ? -1.0 : 0.0);
  double r2 = 0.0;
  for (double v : u) r2 += v * v;
  return std::exp(-r2);
}

double PotentialFamily::n(std::span<const double> u) const {
  if (h_name_ == "cos") return std::pow(2.0, -0.5 * s_) * std::cos(u[0]);
  if (h_name_ == "sign") {
    const double v = radial_profile(std::abs(u[0]));
    return u[0] < 0.0 ? -v : v;
  }
  return radial_profile(euclidean_norm(u));
}

Symbol PotentialFamily::symbol() const {
  std::ostringstream name;
  name << "potential{s=" << s_ << ",h=" << h_name_ << "}";
  auto self = std::make_shared<const PotentialFamily>(*this);
  return Symbol(name.str(), dims_, [self](std::span<const double> u) { return cplx(self->n(u), 0.0); }, h_sup());
}

}  // namespace hml
