#include "hml/heat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hml/log.hpp"
#include "hml/parallel.hpp"
#include "hml/specfun.hpp"
#include "hml/stats.hpp"

namespace hml {

// ----------------------------------------------------------- HeatKernelEval

HeatKernelEval::HeatKernelEval(MultiIndex alpha, double reference_y) : alpha_(std::move(alpha)) {
  if (!(reference_y > 0.0)) throw std::invalid_argument("HeatKernelEval: reference_y must be positive");
  c_.assign(alpha_.dims(), 1.0);
  for (std::size_t k = 0; k < alpha_.dims(); ++k) {
    c_[k] = 1.0 / unnormalized_mass(k, reference_y);
    // Analytic value: c = 1/2 for every alpha (Weber's second exponential integral).
    for (double y : kVerificationCenters) residual_ = std::max(residual_, std::abs(axis_mass(k, y) - 1.0));
  }
  if (residual_ > 1e-6) {
    std::ostringstream msg;
    msg << "HeatKernelEval: normalization not reproduced at the verification centers (residual " << residual_ << ")";
    throw std::runtime_error(msg.str());
  }
}

double HeatKernelEval::unit_kernel(std::size_t k, double t, double x, double y) const {
  const double nu = alpha_.bessel_order(k);
  const double z = x * y / (2.0 * t);
  const double d = x - y;
  return std::pow(4.0 * t, -nu) / t * std::exp(-d * d / (4.0 * t)) * detail::bessel_i_reduced_scaled(nu, z);
}

double HeatKernelEval::axis_kernel(std::size_t k, double t, double x, double y) const {
  return c_[k] * unit_kernel(k, t, x, y);
}

double HeatKernelEval::operator()(double t, std::span<const double> x, std::span<const double> y) const {
  if (!(t > 0.0)) throw std::invalid_argument("heat_kernel: t must be positive");
  if (x.size() != alpha_.dims() || y.size() != alpha_.dims())
    throw std::invalid_argument("heat_kernel: dimension mismatch");
  double v = 1.0;
  for (std::size_t k = 0; k < alpha_.dims(); ++k) v *= axis_kernel(k, t, x[k], y[k]);
  return v;
}

double HeatKernelEval::unnormalized_mass(std::size_t k, double y) const {
  // T_1(., y) is concentrated in |x - y| < 2 sqrt(-log eps) ~ 12.
  const AxisGrid grid(alpha_[k], y + 16.0, 1024);
  double m = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) m += grid.weights()[i] * unit_kernel(k, 1.0, grid.nodes()[i], y);
  return m;
}

double HeatKernelEval::axis_mass(std::size_t k, double y) const { return c_[k] * unnormalized_mass(k, y); }

double heat_kernel(const HeatKernelEval& hk, double t, std::span<const double> x, std::span<const double> y) {
  return hk(t, x, y);
}

// ---------------------------------------------------------------- TimeGrid

TimeGrid TimeGrid::log_spaced(double t_min, double t_max, std::size_t count) {
  if (!(t_min > 0.0) || !(t_max > t_min) || count < 2) throw std::invalid_argument("TimeGrid: invalid range");
  TimeGrid g;
  const double a = std::log(t_min), b = std::log(t_max);
  for (std::size_t i = 0; i < count; ++i)
    g.t.push_back(std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1)));
  g.t.front() = t_min;
  g.t.back() = t_max;
  return g;
}

TimeGrid TimeGrid::defaults() { return log_spaced(1e-4, 1e4, 64); }

TimeGrid TimeGrid::scaled(double s) const { return log_spaced(t_min() * s, t_max() * s, t.size()); }

TimeGrid TimeGrid::refined() const { return log_spaced(t_min(), t_max(), 2 * t.size() - 1); }

// -------------------------------------------------------------- heat_apply

double min_resolvable_time(const Grid& g) {
  double h = 0.0;
  for (const auto& a : g.axes()) h = std::max(h, a.max_panel_width());
  const double s = h / 5.0;
  return 0.5 * s * s;
}

GridFunction heat_apply(const HeatKernelEval& hk, double t, const GridFunction& f) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_apply: t must be positive");
  const Grid& g = f.grid();
  if (!(g.alpha() == hk.alpha())) throw std::invalid_argument("heat_apply: alpha mismatch");
  const double tmin = min_resolvable_time(g);
  if (t < tmin) {
    std::ostringstream msg;
    msg << "heat_apply: t=" << t << " is below the grid's resolvable time " << tmin << "; using " << tmin;
    warn(msg.str());
    t = tmin;
  }
  std::vector<std::vector<double>> mats(g.dims());
  std::vector<const std::vector<double>*> maps;
  for (std::size_t k = 0; k < g.dims(); ++k) {
    const AxisGrid& a = g.axis(k);
    const std::size_t n = a.size();
    auto& m = mats[k];
    m.resize(n * n);
    parallel_for(n, [&](std::size_t i) {
      for (std::size_t j = 0; j < n; ++j) m[i * n + j] = hk.axis_kernel(k, t, a.nodes()[i], a.nodes()[j]) * a.weights()[j];
    });
    maps.push_back(&m);
  }
  return GridFunction(f.grid_ptr(), apply_axis_maps(f.values(), g.shape(), maps, g.shape()));
}

namespace {

GridFunction gaussian_on_dual(const TransformPlan& plan, double t) {
  return sample_dual(plan, [t](std::span<const double> lam) {
    double r2 = 0.0;
    for (double l : lam) r2 += l * l;
    return cplx(std::exp(-t * r2), 0.0);
  });
}

}  // namespace

GridFunction heat_apply(const TransformPlan& plan, double t, const GridFunction& f) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_apply: t must be positive");
  GridFunction hf = hankel_transform(plan, f);
  hf *= gaussian_on_dual(plan, t);
  return inverse_hankel(plan, hf);
}

GridFunction maximal_function(const HeatKernelEval& hk, const TimeGrid& tg, const GridFunction& f) {
  const double tmin = min_resolvable_time(f.grid());
  GridFunction m(f.grid_ptr());
  bool clipped = false;
  double last = -1.0;
  for (double t : tg.t) {
    const double te = std::max(t, tmin);
    clipped = clipped || t < tmin;
    if (te == last) continue;
    last = te;
    const GridFunction tf = [&] {
      ScopedLogCapture quiet;
      return heat_apply(hk, te, f);
    }();
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::max(m[i].real(), std::abs(tf[i]));
  }
  if (clipped) {
    std::ostringstream msg;
    msg << "maximal_function: times below " << tmin << " clipped to the resolvable bound";
    warn(msg.str());
  }
  return m;
}

GridFunction maximal_function(const TransformPlan& plan, const TimeGrid& tg, const GridFunction& f) {
  const GridFunction hf = hankel_transform(plan, f);
  const std::size_t nt = tg.t.size();
  const std::size_t n = plan.spatial()->size();
  std::vector<double> abs_vals(nt * n);
  parallel_for(nt, [&](std::size_t it) {
    GridFunction g = hf;
    g *= gaussian_on_dual(plan, tg.t[it]);
    const GridFunction tf = inverse_hankel(plan, g);
    for (std::size_t i = 0; i < n; ++i) abs_vals[it * n + i] = std::abs(tf[i]);
  });
  GridFunction m(plan.spatial());
  for (std::size_t i = 0; i < n; ++i) {
    double v = 0.0;
    for (std::size_t it = 0; it < nt; ++it) v = std::max(v, abs_vals[it * n + i]);
    m[i] = v;
  }
  return m;
}

// ------------------------------------------------------------------ checks

std::vector<HeatSample> heat_sample_lattice(std::size_t dims, double t_lo, double t_hi, double s_lo, double s_hi,
                                            std::size_t per_axis) {
  const TimeGrid tv = TimeGrid::log_spaced(t_lo, t_hi, per_axis);
  const TimeGrid sv = TimeGrid::log_spaced(s_lo, s_hi, per_axis);
  std::vector<HeatSample> out;
  const std::size_t m = 2 * dims;
  std::size_t combos = 1;
  for (std::size_t k = 0; k < m; ++k) combos *= per_axis;
  for (double t : tv.t) {
    for (std::size_t c = 0; c < combos; ++c) {
      HeatSample s{t, Point(dims), Point(dims)};
      std::size_t r = c;
      for (std::size_t k = 0; k < dims; ++k) {
        s.x[k] = sv.t[r % per_axis];
        r /= per_axis;
        s.y[k] = sv.t[r % per_axis];
        r /= per_axis;
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

namespace {

struct BoundStats {
  double C = 0.0;
  double min_value = std::numeric_limits<double>::infinity();
  double near_lo = std::numeric_limits<double>::infinity(), near_hi = 0.0;
  double far_lo = std::numeric_limits<double>::infinity(), far_hi = 0.0;
  std::size_t near_count = 0, far_count = 0;
};

BoundStats bound_stats(const HeatKernelEval& hk, const std::vector<HeatSample>& samples) {
  const MultiIndex& a = hk.alpha();
  BoundStats s;
  for (const auto& smp : samples) {
    const double t = smp.t;
    const double v = hk(t, smp.x, smp.y);
    s.min_value = std::min(s.min_value, v);
    const double dist2 = std::pow(euclidean_distance(smp.x, smp.y), 2);
    const double ball = ball_measure(a, smp.x, std::sqrt(t));
    // Work in logs: exp(dist2 / 8t) overflows far from the diagonal.
    if (v > 0.0) s.C = std::max(s.C, std::exp(std::log(v) + std::log(ball) + dist2 / (8.0 * t)));
    for (std::size_t k = 0; k < a.dims(); ++k) {
      const double x = smp.x[k], y = smp.y[k];
      const double tk = hk.axis_kernel(k, t, x, y);
      if (!(tk > 0.0)) continue;
      if (x * y < t) {
        const double ref = -(2.0 * a[k] + 1.0) / 2.0 * std::log(t) - (x * x + y * y) / (4.0 * t);
        const double ratio = std::exp(std::log(tk) - ref);
        s.near_lo = std::min(s.near_lo, ratio);
        s.near_hi = std::max(s.near_hi, ratio);
        ++s.near_count;
      } else {
        const double ref = -0.5 * std::log(t) - a[k] * std::log(x * y) - (x - y) * (x - y) / (4.0 * t);
        const double ratio = std::exp(std::log(tk) - ref);
        s.far_lo = std::min(s.far_lo, ratio);
        s.far_hi = std::max(s.far_hi, ratio);
        ++s.far_count;
      }
    }
  }
  return s;
}

}  // namespace

EstimateReport gaussian_bound_check(const HeatKernelEval& hk, const std::vector<HeatSample>& coarse,
                                    const std::vector<HeatSample>& refined, double band_limit,
                                    double stability_limit) {
  EstimateReport r;
  r.name = "heat_gaussian_bound";
  r.provenance = "0 <= T_t(x,y) <= C exp(-c|x-y|^2/t) / nu(B(x, sqrt t)) and the two-regime asymptotics";
  r.param("alpha", std::vector<double>(hk.alpha().values().begin(), hk.alpha().values().end()));
  r.param("c", 0.125).param("coarse_samples", static_cast<std::int64_t>(coarse.size()));
  r.param("refined_samples", static_cast<std::int64_t>(refined.size()));
  r.param("band_limit", band_limit).param("stability_limit", stability_limit);

  const BoundStats a = bound_stats(hk, coarse);
  const BoundStats b = bound_stats(hk, refined);
  const double stability = b.C / a.C;
  const double near_band = b.near_count ? b.near_hi / b.near_lo : 1.0;
  const double far_band = b.far_count ? b.far_hi / b.far_lo : 1.0;
  r.fit("C_coarse", a.C).fit("C_refined", b.C).fit("C_refinement_ratio", stability);
  r.fit("min_kernel_value", std::min(a.min_value, b.min_value));
  r.fit("band_ratio_xy_below_t", near_band).fit("band_ratio_xy_above_t", far_band);
  r.fit("band_lo_xy_below_t", b.near_lo).fit("band_hi_xy_below_t", b.near_hi);
  r.fit("band_lo_xy_above_t", b.far_lo).fit("band_hi_xy_above_t", b.far_hi);
  const bool ok = std::isfinite(b.C) && b.C > 0.0 && std::abs(stability - 1.0) <= stability_limit - 1.0 &&
                  std::min(a.min_value, b.min_value) >= 0.0 && near_band <= band_limit && far_band <= band_limit;
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  return r;
}

namespace {

// int |T_1(x, y) - T_1(x, y')| dnu(x) along axis k with panels refined
// around both centers.
double axis_difference_integral(const HeatKernelEval& hk, std::size_t k, double y, double yp) {
  const AxisGrid grid(hk.alpha()[k], std::max(y, yp) + 16.0, 16 * 640, 16, 6);
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.nodes()[i];
    s += grid.weights()[i] * std::abs(hk.axis_kernel(k, 1.0, x, y) - hk.axis_kernel(k, 1.0, x, yp));
  }
  return s;
}

double tensor_difference_integral(const HeatKernelEval& hk, const Point& y, const Point& yp) {
  // d = 2 only: a 2-D tensor rule over the product of the axis grids.
  std::vector<AxisGrid> axes;
  for (std::size_t k = 0; k < 2; ++k) axes.emplace_back(hk.alpha()[k], std::max(y[k], yp[k]) + 16.0, 16 * 48, 16, 6);
  std::vector<std::vector<double>> ty(2), typ(2);
  for (std::size_t k = 0; k < 2; ++k)
    for (double x : axes[k].nodes()) {
      ty[k].push_back(hk.axis_kernel(k, 1.0, x, y[k]));
      typ[k].push_back(hk.axis_kernel(k, 1.0, x, yp[k]));
    }
  double s = 0.0;
  for (std::size_t i = 0; i < axes[0].size(); ++i)
    for (std::size_t j = 0; j < axes[1].size(); ++j)
      s += axes[0].weights()[i] * axes[1].weights()[j] * std::abs(ty[0][i] * ty[1][j] - typ[0][i] * typ[1][j]);
  return s;
}

}  // namespace

EstimateReport heat_lipschitz_check(const HeatKernelEval& hk, const std::vector<std::pair<Point, Point>>& pairs,
                                    double band) {
  const std::size_t d = hk.alpha().dims();
  if (d > 2) throw std::invalid_argument("heat_lipschitz_check: supports d = 1 and d = 2");
  EstimateReport r;
  r.name = "heat_lipschitz";
  r.provenance = "int |T_1(x,y) - T_1(x,y')| dnu(x) <= C |y - y'|";
  r.param("pairs", static_cast<std::int64_t>(pairs.size())).param("band", band);
  r.lattice_columns = {"distance", "integral", "ratio", "product_bound"};
  std::vector<double> ratios(pairs.size());
  std::vector<double> bounds(pairs.size());
  std::vector<double> integrals(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t p) {
    const auto& [y, yp] = pairs[p];
    const double dist = euclidean_distance(y, yp);
    if (!(dist > 0.0)) throw std::invalid_argument("heat_lipschitz_check: y and y' must differ");
    double bound = 0.0;
    for (std::size_t k = 0; k < d; ++k)
      if (y[k] != yp[k]) bound += axis_difference_integral(hk, k, y[k], yp[k]);
    const double integral = d == 1 ? bound : tensor_difference_integral(hk, y, yp);
    integrals[p] = integral;
    ratios[p] = integral / dist;
    bounds[p] = bound;
  });
  bool product_ok = true;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const double dist = euclidean_distance(pairs[p].first, pairs[p].second);
    r.lattice_rows.push_back({dist, integrals[p], ratios[p], bounds[p]});
    std::ostringstream in;
    in << "|y-y'|=" << dist;
    r.measure(in.str(), ratios[p]);
    if (integrals[p] > bounds[p] * (1.0 + 1e-6)) product_ok = false;
  }
  const double spread = spread_ratio(ratios);
  r.fit("max_ratio", *std::max_element(ratios.begin(), ratios.end()));
  r.fit("min_ratio", *std::min_element(ratios.begin(), ratios.end()));
  r.fit("ratio_spread", spread);
  if (d == 2) r.fit("product_bound_respected", product_ok ? 1.0 : 0.0);
  r.verdict = (spread <= band && product_ok) ? Verdict::pass : Verdict::fail;
  return r;
}

EstimateReport heat_holder_check(const HeatKernelEval& hk, std::size_t per_axis, double stability_limit) {
  if (hk.alpha().dims() != 1) throw std::invalid_argument("heat_holder_check: d = 1 only");
  EstimateReport r;
  r.name = "heat_holder";
  r.provenance = "|T_t(x,y) - T_t(x,y')| <= C (|y-y'|/sqrt t)^delta / nu(B(x, sqrt t)) for |y-y'| <= sqrt t";
  r.param("per_axis", static_cast<std::int64_t>(per_axis)).param("stability_limit", stability_limit);
  const MultiIndex& a = hk.alpha();
  auto measure = [&](std::size_t m, std::vector<double>* rho_out, std::vector<double>* q_out) {
    const TimeGrid tv = TimeGrid::log_spaced(1e-2, 1e2, m);
    const TimeGrid xv = TimeGrid::log_spaced(1e-2, 1e2, m);
    const TimeGrid fr = TimeGrid::log_spaced(1e-3, 1.0, m);
    double C = 0.0;
    for (double t : tv.t)
      for (double x : xv.t)
        for (double y : xv.t)
          for (double f : fr.t) {
            const double yp = y + f * std::sqrt(t);
            const double rho = f;
            const double diff = std::abs(hk.axis_kernel(0, t, x, y) - hk.axis_kernel(0, t, x, yp));
            const double xs[1] = {x};
            const double q = diff * ball_measure(a, xs, std::sqrt(t));
            C = std::max(C, q / rho);
            if (rho_out) {
              rho_out->push_back(rho);
              q_out->push_back(q);
            }
          }
    return C;
  };
  std::vector<double> rho, q;
  const double c_coarse = measure(per_axis, nullptr, nullptr);
  const double c_fine = measure(2 * per_axis - 1, &rho, &q);
  // Envelope: the largest q for each rho, fitted in log-log.
  std::vector<double> env_r, env_q;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    auto it = std::find(env_r.begin(), env_r.end(), rho[i]);
    if (it == env_r.end()) {
      env_r.push_back(rho[i]);
      env_q.push_back(q[i]);
    } else {
      auto& v = env_q[static_cast<std::size_t>(it - env_r.begin())];
      v = std::max(v, q[i]);
    }
  }
  const double delta = fit_loglog(env_r, env_q).slope;
  r.fit("C_delta1_coarse", c_coarse).fit("C_delta1_refined", c_fine);
  r.fit("C_refinement_ratio", c_fine / c_coarse).fit("envelope_exponent", delta);
  const bool ok = std::isfinite(c_fine) && c_fine / c_coarse <= stability_limit && delta >= 1.0 - 0.05;
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  return r;
}

}  // namespace hml
