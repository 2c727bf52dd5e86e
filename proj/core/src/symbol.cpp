#include "hml/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "hml/multi_index.hpp"
#include "hml/partition.hpp"
#include "hml/specfun.hpp"

namespace hml {

Symbol::Symbol(std::string name, std::size_t dims, Fn n, double sup_norm,
               std::optional<std::pair<double, double>> support)
    : name_(std::move(name)), dims_(dims), n_(std::move(n)), sup_norm_(sup_norm), support_(support) {
  if (dims_ == 0) throw std::invalid_argument("Symbol: dims must be positive");
  if (!n_) throw std::invalid_argument("Symbol: empty callable");
  if (!(sup_norm_ >= 0.0) || !std::isfinite(sup_norm_)) throw std::invalid_argument("Symbol: invalid sup norm");
}

cplx Symbol::m(std::span<const double> lambda) const {
  double u[8];
  std::vector<double> heap;
  double* p = u;
  if (lambda.size() > 8) {
    heap.resize(lambda.size());
    p = heap.data();
  }
  for (std::size_t k = 0; k < lambda.size(); ++k) p[k] = lambda[k] * lambda[k];
  return n_(std::span<const double>(p, lambda.size()));
}

Symbol Symbol::dilated(int j) const {
  const double s = std::ldexp(1.0, j);
  Fn base = n_;
  std::optional<std::pair<double, double>> supp;
  if (support_) supp = std::make_pair(support_->first / s, support_->second / s);
  return Symbol(name_ + "(2^" + std::to_string(j) + ".)", dims_,
                [base, s](std::span<const double> u) {
                  std::vector<double> v(u.begin(), u.end());
                  for (double& x : v) x *= s;
                  return base(v);
                },
                sup_norm_, supp);
}

namespace {

double coordinate_sum(std::span<const double> u) {
  double s = 0.0;
  for (double v : u) s += v;
  return s;
}

}  // namespace

double angular_cutoff(std::span<const double> u) {
  const double s = coordinate_sum(u);
  const double r = euclidean_norm(u);
  if (!(r > 0.0) || !(s > 0.0)) return 0.0;
  const double d = static_cast<double>(u.size());
  if (u.size() == 1) return 1.0;
  const double tau = (s / r - 1.0 / d) / (1.0 - 1.0 / d);
  // smooth_step(2 - tau) rises from 0 at tau = 0 to 1 at tau = 1.
  return smooth_step(2.0 - tau);
}

Symbol identity_symbol(std::size_t dims) {
  return Symbol("identity", dims, [](std::span<const double>) { return cplx(1.0, 0.0); }, 1.0);
}

Symbol heat_symbol(std::size_t dims, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_symbol: t must be positive");
  std::ostringstream name;
  name << "heat{t=" << t << "}";
  return Symbol(name.str(), dims,
                [t](std::span<const double> u) {
                  double s = 0.0;
                  for (double v : u) s += std::abs(v);
                  return cplx(std::exp(-t * s), 0.0);
                },
                1.0);
}

Symbol laplace_type_symbol(std::size_t dims, std::function<cplx(double)> phi, double sup_norm, std::string name) {
  return Symbol(std::move(name), dims,
                [phi](std::span<const double> u) -> cplx {
                  const double xi = angular_cutoff(u);
                  if (xi == 0.0) return 0.0;
                  const double S = coordinate_sum(u);
                  // S int e^{-tS} phi(t) dt = int exp(-e^v) e^v phi(e^v / S) dv.
                  const double h = 0.01;
                  cplx acc = 0.0;
                  for (int i = 0; i <= 4460; ++i) {
                    const double ev = std::exp(-40.0 + h * i);
                    acc += std::exp(-ev) * ev * phi(ev / S);
                  }
                  return xi * h * acc;
                },
                sup_norm);
}

Symbol laplace_type_const(std::size_t dims) {
  return Symbol("laplace_type{phi=const}", dims, [](std::span<const double> u) { return cplx(angular_cutoff(u), 0.0); },
                1.0);
}

Symbol laplace_type_imag_power(std::size_t dims, double gamma) {
  const cplx g = hml::gamma(cplx(1.0, gamma));
  std::ostringstream name;
  name << "laplace_type{phi=imag_power:gamma=" << gamma << "}";
  return Symbol(name.str(), dims,
                [g, gamma](std::span<const double> u) -> cplx {
                  const double xi = angular_cutoff(u);
                  if (xi == 0.0) return 0.0;
                  const double S = coordinate_sum(u);
                  return xi * g * std::exp(cplx(0.0, -gamma * std::log(S)));
                },
                std::abs(g));
}

Symbol bump_symbol(std::size_t dims) {
  const DyadicPartition psi(PartitionVariant::plain);
  return Symbol("bump", dims, [psi](std::span<const double> u) { return cplx(psi(u), 0.0); }, 1.0,
                std::make_pair(0.5, 2.0));
}

Symbol oscillatory_symbol(std::size_t dims, double k) {
  const DyadicPartition psi(PartitionVariant::plain);
  std::ostringstream name;
  name << "oscillatory{k=" << k << "}";
  return Symbol(name.str(), dims,
                [psi, k](std::span<const double> u) -> cplx {
                  const double p = psi(u);
                  if (p == 0.0) return 0.0;
                  return p * std::exp(cplx(0.0, k * u[0]));
                },
                1.0, std::make_pair(0.5, 2.0));
}

Symbol divergent_symbol(std::size_t dims) {
  return Symbol("divergent", dims,
                [](std::span<const double> u) -> cplx {
                  const double xi = angular_cutoff(u);
                  if (xi == 0.0) return 0.0;
                  const double S = coordinate_sum(u);
                  const double cut = smooth_step(std::ldexp(euclidean_norm(u), -12));
                  return xi * cut * std::exp(cplx(0.0, 1.0 / S));
                },
                1.0);
}

Symbol tabulated_symbol(const std::string& path, std::size_t dims) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("tabulated_symbol: cannot open " + path);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> r;
    while (std::getline(ss, cell, ',')) r.push_back(std::stod(cell));
    if (r.size() != dims + 2) throw std::runtime_error("tabulated_symbol: expected u_1..u_d, re, im columns");
    rows.push_back(std::move(r));
  }
  auto axes = std::make_shared<std::vector<std::vector<double>>>(dims);
  for (std::size_t k = 0; k < dims; ++k) {
    auto& a = (*axes)[k];
    for (const auto& r : rows) a.push_back(r[k]);
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    if (a.size() < 2) throw std::runtime_error("tabulated_symbol: each axis needs at least two coordinates");
  }
  std::size_t total = 1;
  for (const auto& a : *axes) total *= a.size();
  if (total != rows.size()) throw std::runtime_error("tabulated_symbol: rows do not form a tensor grid");
  auto values = std::make_shared<std::vector<cplx>>(total);
  double sup = 0.0;
  for (const auto& r : rows) {
    std::size_t flat = 0;
    for (std::size_t k = 0; k < dims; ++k) {
      const auto& a = (*axes)[k];
      flat = flat * a.size() + static_cast<std::size_t>(std::lower_bound(a.begin(), a.end(), r[k]) - a.begin());
    }
    (*values)[flat] = cplx(r[dims], r[dims + 1]);
    sup = std::max(sup, std::abs((*values)[flat]));
  }
  return Symbol("csv:" + path, dims,
                [axes, values, dims](std::span<const double> u) -> cplx {
                  std::vector<std::size_t> lo(dims);
                  std::vector<double> frac(dims);
                  for (std::size_t k = 0; k < dims; ++k) {
                    const auto& a = (*axes)[k];
                    if (u[k] < a.front() || u[k] > a.back()) return 0.0;
                    std::size_t i = static_cast<std::size_t>(std::upper_bound(a.begin(), a.end(), u[k]) - a.begin());
                    i = std::clamp<std::size_t>(i, 1, a.size() - 1) - 1;
                    lo[k] = i;
                    frac[k] = (u[k] - a[i]) / (a[i + 1] - a[i]);
                  }
                  cplx acc = 0.0;
                  for (std::size_t corner = 0; corner < (std::size_t{1} << dims); ++corner) {
                    std::size_t flat = 0;
                    double w = 1.0;
                    for (std::size_t k = 0; k < dims; ++k) {
                      const bool up = (corner >> k) & 1u;
                      flat = flat * (*axes)[k].size() + lo[k] + (up ? 1 : 0);
                      w *= up ? frac[k] : 1.0 - frac[k];
                    }
                    acc += w * (*values)[flat];
                  }
                  return acc;
                },
                sup);
}

}  // namespace hml
