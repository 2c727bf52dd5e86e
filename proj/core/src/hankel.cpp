#include "hml/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hml/log.hpp"
#include "hml/parallel.hpp"
#include "hml/quadrature.hpp"
#include "hml/specfun.hpp"
#include "hml/stats.hpp"

namespace hml {

TransformPlan::TransformPlan(std::shared_ptr<const Grid> spatial, std::shared_ptr<const Grid> dual,
                             double max_phase_per_panel)
    : spatial_(std::move(spatial)), dual_(std::move(dual)) {
  if (!spatial_ || !dual_) throw std::invalid_argument("TransformPlan: null grid");
  if (!(spatial_->alpha() == dual_->alpha())) throw std::invalid_argument("TransformPlan: grids differ in alpha");
  const std::size_t d = spatial_->dims();
  for (std::size_t k = 0; k < d; ++k) {
    const AxisGrid& xs = spatial_->axis(k);
    const AxisGrid& ls = dual_->axis(k);
    phase_ = std::max({phase_, ls.R() * xs.max_panel_width(), xs.R() * ls.max_panel_width()});
  }
  if (phase_ > max_phase_per_panel) {
    std::ostringstream msg;
    msg << "TransformPlan: kernel phase per panel " << phase_ << " exceeds " << max_phase_per_panel
        << "; increase n or reduce R * Lambda";
    throw std::invalid_argument(msg.str());
  }
  forward_.resize(d);
  backward_.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    const AxisGrid& xs = spatial_->axis(k);
    const AxisGrid& ls = dual_->axis(k);
    const double nu = spatial_->alpha().bessel_order(k);
    const std::size_t ns = xs.size(), nd = ls.size();
    std::vector<double>& F = forward_[k];
    std::vector<double>& B = backward_[k];
    F.resize(nd * ns);
    B.resize(ns * nd);
    parallel_for(nd, [&](std::size_t i) {
      const double lam = ls.nodes()[i];
      for (std::size_t j = 0; j < ns; ++j) {
        const double e = detail::bessel_j_reduced(nu, lam * xs.nodes()[j]);
        F[i * ns + j] = e * xs.weights()[j];
        B[j * nd + i] = e * ls.weights()[i];
      }
    });
  }
}

std::shared_ptr<const TransformPlan> TransformPlan::make(const MultiIndex& alpha, double R, double Lambda,
                                                         std::size_t n, std::size_t order, std::size_t grading) {
  auto spatial = Grid::make(alpha, R, n, order, grading);
  auto dual = (R == Lambda) ? spatial : Grid::make(alpha, Lambda, n, order, grading);
  return std::make_shared<const TransformPlan>(spatial, dual);
}

std::size_t TransformPlan::minimal_nodes(double R, double Lambda, std::size_t order, std::size_t grading,
                                         double max_phase_per_panel) {
  const auto uniform = static_cast<std::size_t>(std::ceil(R * Lambda / max_phase_per_panel * (1.0 + 1e-12)));
  return (std::max<std::size_t>(uniform, 1) + grading - 1) * order;
}

GridFunction hankel_transform(const TransformPlan& plan, const GridFunction& f) {
  if (!(f.grid() == *plan.spatial())) throw std::invalid_argument("hankel_transform: f does not live on the plan's spatial grid");
  std::vector<const std::vector<double>*> maps;
  for (std::size_t k = 0; k < plan.dims(); ++k) maps.push_back(&plan.forward_matrix(k));
  return GridFunction(plan.dual(), apply_axis_maps(f.values(), plan.spatial()->shape(), maps, plan.dual()->shape()));
}

GridFunction inverse_hankel(const TransformPlan& plan, const GridFunction& g) {
  if (!(g.grid() == *plan.dual())) throw std::invalid_argument("inverse_hankel: g does not live on the plan's dual grid");
  std::vector<const std::vector<double>*> maps;
  for (std::size_t k = 0; k < plan.dims(); ++k) maps.push_back(&plan.backward_matrix(k));
  return GridFunction(plan.spatial(), apply_axis_maps(g.values(), plan.dual()->shape(), maps, plan.spatial()->shape()));
}

GridFunction sample_dual(const TransformPlan& plan, const std::function<cplx(std::span<const double>)>& m) {
  return GridFunction::sample(plan.dual(), m);
}

GridFunction e_kernel_on_dual(const TransformPlan& plan, std::span<const double> y) {
  const Grid& dual = *plan.dual();
  const std::size_t d = dual.dims();
  if (y.size() != d) throw std::invalid_argument("e_kernel_on_dual: dimension mismatch");
  std::vector<std::vector<double>> axis_vals(d);
  for (std::size_t k = 0; k < d; ++k) {
    if (!(y[k] > 0.0)) throw std::invalid_argument("e_kernel_on_dual: y must be positive");
    const double nu = dual.alpha().bessel_order(k);
    for (double lam : dual.axis(k).nodes()) axis_vals[k].push_back(detail::bessel_j_reduced(nu, lam * y[k]));
  }
  GridFunction e(plan.dual());
  std::vector<std::size_t> idx(d);
  for (std::size_t i = 0; i < e.size(); ++i) {
    dual.unravel(i, idx);
    double v = 1.0;
    for (std::size_t k = 0; k < d; ++k) v *= axis_vals[k][idx[k]];
    e[i] = v;
  }
  return e;
}

double check_spectral_tail(const GridFunction& g, const char* who, double threshold) {
  const Grid& grid = g.grid();
  const double peak = g.max_abs();
  if (peak == 0.0) return 0.0;
  std::vector<std::size_t> idx(grid.dims());
  double tail = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    grid.unravel(i, idx);
    for (std::size_t k = 0; k < grid.dims(); ++k) {
      const AxisGrid& a = grid.axis(k);
      if (idx[k] + a.order() >= a.size()) {
        tail = std::max(tail, std::abs(g[i]));
        break;
      }
    }
  }
  const double ratio = tail / peak;
  if (ratio > threshold) {
    std::ostringstream msg;
    msg << who << ": spectrum not negligible at the dual truncation (tail/peak " << ratio << "); aliasing risk";
    warn(msg.str());
  }
  return ratio;
}

GridFunction translate(const TransformPlan& plan, const GridFunction& f, std::span<const double> y) {
  GridFunction hf = hankel_transform(plan, f);
  check_spectral_tail(hf, "translate");
  hf *= e_kernel_on_dual(plan, y);
  return inverse_hankel(plan, hf);
}

GridFunction convolve(const TransformPlan& plan, const GridFunction& f, const GridFunction& g) {
  if (!f.same_grid(g)) throw std::invalid_argument("convolve: f and g must share a grid");
  GridFunction hf = hankel_transform(plan, f);
  GridFunction hg = hankel_transform(plan, g);
  check_spectral_tail(hf, "convolve");
  check_spectral_tail(hg, "convolve");
  hf *= hg;
  return inverse_hankel(plan, hf);
}

EstimateReport dilation_identity_check(const TransformPlan& plan, const GridFunction& f, double t,
                                       std::span<const double> y, double tolerance) {
  EstimateReport r;
  r.name = "dilation_identity";
  r.provenance = "tau^y(f_t) = (tau^{ty} f)_t";
  r.param("t", t).param("y", std::vector<double>(y.begin(), y.end())).param("tolerance", tolerance);
  r.param("R", plan.spatial()->max_R()).param("Lambda", plan.dual()->max_R());
  r.param("n", static_cast<std::int64_t>(plan.spatial()->axis(0).size()));

  std::vector<double> ty(y.begin(), y.end());
  for (double& v : ty) v *= t;
  const GridFunction lhs = translate(plan, dilate(f, t), y);
  const GridFunction rhs = dilate(translate(plan, f, ty), t);
  const GridFunction diff = lhs - rhs;
  const double sup = diff.max_abs() / std::max(lhs.max_abs(), 1e-300);
  const double l1 = norm(diff, 1.0) / std::max(norm(lhs, 1.0), 1e-300);
  r.fit("relative_sup_discrepancy", sup).fit("relative_l1_discrepancy", l1);
  r.verdict = (sup <= tolerance && l1 <= tolerance) ? Verdict::pass : Verdict::fail;
  return r;
}

EstimateReport translation_support_check(const TransformPlan& plan, const GridFunction& f, std::span<const double> y,
                                         std::span<const double> lo, std::span<const double> hi, double tol,
                                         double mass_tol) {
  const Grid& g = *plan.spatial();
  const std::size_t d = g.dims();
  EstimateReport r;
  r.name = "translation_support";
  r.provenance = "tau^y f is a nonnegative average of f over [|x-y|, x+y] per axis";
  r.param("y", std::vector<double>(y.begin(), y.end()))
      .param("support_lo", std::vector<double>(lo.begin(), lo.end()))
      .param("support_hi", std::vector<double>(hi.begin(), hi.end()))
      .param("tolerance", tol)
      .param("mass_tolerance", mass_tol);

  const GridFunction ty = translate(plan, f, y);
  const double fmax = f.max_abs();
  double outside = 0.0, negative = 0.0, imag = 0.0;
  for (std::size_t i = 0; i < ty.size(); ++i) {
    const Point x = g.node(i);
    bool inside = true;
    for (std::size_t k = 0; k < d; ++k) {
      const double a = std::max({0.0, y[k] - hi[k], lo[k] - y[k]});
      const double b = y[k] + hi[k];
      if (x[k] < a || x[k] > b) inside = false;
    }
    if (!inside) outside = std::max(outside, std::abs(ty[i]));
    negative = std::max(negative, -ty[i].real());
    imag = std::max(imag, std::abs(ty[i].imag()));
  }
  const double mass_f = integrate(f).real();
  const double mass_ty = integrate(ty).real();
  const double expected = e_kernel_origin(g.alpha()) * mass_f;
  const double mass_err = std::abs(mass_ty - expected) / std::max(std::abs(expected), 1e-300);

  r.fit("max_outside_hull_over_max_f", outside / fmax)
      .fit("max_negative_part_over_max_f", negative / fmax)
      .fit("mass_ratio_to_E0_mass", mass_ty / expected)
      .fit("relative_mass_error", mass_err)
      .fit("E0", e_kernel_origin(g.alpha()));
  r.note("the translated mass equals E(0) times the original mass under this normalization of E; E(0) = 1 iff every alpha_k = 1/2");
  const bool ok = outside <= tol * fmax && negative <= tol * fmax && mass_err <= mass_tol;
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  return r;
}

EstimateReport diagonalization_check(const TransformPlan& plan, const std::function<double(std::span<const double>)>& f,
                                     std::size_t axis, double x_lo, double x_hi, double fd_step, double tolerance) {
  const Grid& g = *plan.spatial();
  const double alpha_k = g.alpha()[axis];
  const double h = fd_step;
  EstimateReport r;
  r.name = "diagonalization";
  r.provenance = "L_k f = H(lambda_k^2 Hf)";
  r.param("axis", static_cast<std::int64_t>(axis)).param("fd_step", h).param("x_lo", x_lo).param("x_hi", x_hi);
  r.param("tolerance", tolerance);

  const GridFunction fg = GridFunction::sample_real(plan.spatial(), f);
  GridFunction hf = hankel_transform(plan, fg);
  const Grid& dual = *plan.dual();
  std::vector<std::size_t> idx(dual.dims());
  for (std::size_t i = 0; i < hf.size(); ++i) {
    dual.unravel(i, idx);
    const double lam = dual.axis(axis).nodes()[idx[axis]];
    hf[i] *= lam * lam;
  }
  const GridFunction spectral = inverse_hankel(plan, hf);

  double err = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < spectral.size(); ++i) {
    Point x = g.node(i);
    bool interior = true;
    for (double c : x)
      if (c < x_lo || c > x_hi) interior = false;
    if (!interior) continue;
    const double x0 = x[axis];
    auto at = [&](double dx) {
      x[axis] = x0 + dx;
      return f(x);
    };
    const double fm2 = at(-2 * h), fm1 = at(-h), f0 = at(0), fp1 = at(h), fp2 = at(2 * h);
    x[axis] = x0;
    const double d1 = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h);
    const double d2 = (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h);
    const double lf = -d2 - 2.0 * alpha_k / x0 * d1;
    err = std::max(err, std::abs(spectral[i] - lf));
    scale = std::max(scale, std::abs(lf));
  }
  const double rel = err / std::max(scale, 1e-300);
  r.fit("max_abs_discrepancy", err).fit("relative_discrepancy", rel);
  r.verdict = rel <= tolerance ? Verdict::pass : Verdict::fail;
  return r;
}


double abs_integral_1d(const GridFunction& g, double a, double b, std::size_t refine) {
  const Grid& grid = g.grid();
  if (grid.dims() != 1) throw std::invalid_argument("abs_integral_1d: d = 1 only");
  const AxisGrid& ax = grid.axis(0);
  a = std::max(a, 0.0);
  b = std::min(b, ax.R());
  if (!(b > a)) return 0.0;
  const double alpha = grid.alpha()[0];
  const auto& edges = ax.edges();
  const std::size_t order = ax.order();
  std::vector<double> coeff(order);
  const QuadratureRule gl = gauss_legendre(order);
  double acc = 0.0;
  auto add = [&](double z, double w) {
    const std::size_t first = ax.interpolation_row(z, coeff);
    cplx v = 0.0;
    for (std::size_t i = 0; i < order; ++i) v += coeff[i] * g[first + i];
    acc += w * std::abs(v);
  };
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double lo = std::max(a, edges[p]), hi = std::min(b, edges[p + 1]);
    if (!(hi > lo)) continue;
    const double h = (hi - lo) / static_cast<double>(refine);
    for (std::size_t s = 0; s < refine; ++s) {
      const double u0 = lo + h * static_cast<double>(s);
      if (u0 == 0.0) {
        const QuadratureRule jr = gauss_jacobi_origin(order, 2.0 * alpha, h);
        for (std::size_t i = 0; i < order; ++i) add(jr.nodes[i], jr.weights[i]);
        continue;
      }
      for (std::size_t i = 0; i < order; ++i) {
        const double z = u0 + 0.5 * h * (gl.nodes[i] + 1.0);
        add(z, 0.5 * h * gl.weights[i] * std::pow(z, 2.0 * alpha));
      }
    }
  }
  return acc;
}

EstimateReport off_diagonal_check(const TransformPlan& plan, const std::function<double(double)>& f, double y,
                                  const std::vector<double>& r_values, const std::vector<double>& t_values,
                                  double delta, double slope_margin, double noise_floor) {
  if (plan.dims() != 1) throw std::invalid_argument("off_diagonal_check: d = 1 only");
  if (r_values.empty() || t_values.empty()) throw std::invalid_argument("off_diagonal_check: empty lattice");
  const double Q = plan.alpha().homogeneous_dimension();
  EstimateReport r;
  r.name = "off_diagonal_decay";
  r.provenance = "int_{|x-y|>r} |tau^y(f_t)| dnu <= C (rt)^{-delta} ||f||_{L^1(w^delta dnu)}";
  r.param("alpha", plan.alpha()[0]).param("y", y).param("delta", delta).param("slope_margin", slope_margin);
  r.param("r_values", r_values).param("t_values", t_values);
  r.param("R", plan.spatial()->max_R()).param("Lambda", plan.dual()->max_R());
  r.param("n", static_cast<std::int64_t>(plan.spatial()->axis(0).size()));

  // ||f||_{L^1(w^delta dnu)} on a grid twice as wide as the plan's.
  const AxisGrid wide(plan.alpha()[0], 2.0 * plan.spatial()->max_R(), 2 * plan.spatial()->axis(0).size());
  double weighted = 0.0, mass = 0.0;
  for (std::size_t i = 0; i < wide.size(); ++i) {
    const double x = wide.nodes()[i];
    const double v = std::abs(f(x)) * wide.weights()[i];
    mass += v;
    weighted += v * std::pow(1.0 + x, delta);
  }
  r.fit("weighted_norm_of_f", weighted);

  std::vector<double> rt, tail;
  double C = 0.0;
  const std::vector<double> yy{y};
  r.lattice_columns = {"r", "t", "rt", "tail_integral"};
  for (double t : t_values) {
    const GridFunction ft = GridFunction::sample_real(
        plan.spatial(), [&](std::span<const double> x) { return std::pow(t, Q) * f(t * x[0]); });
    const GridFunction g = translate(plan, ft, yy);
    for (double rr : r_values) {
      const double I = abs_integral_1d(g, 0.0, y - rr) + abs_integral_1d(g, y + rr, plan.spatial()->max_R());
      r.lattice_rows.push_back({rr, t, rr * t, I});
      std::ostringstream key;
      key << "r=" << rr << ",t=" << t;
      r.measure(key.str(), I);
      C = std::max(C, I * std::pow(rr * t, delta) / weighted);
      if (I > noise_floor * mass) {
        rt.push_back(rr * t);
        tail.push_back(I);
      }
    }
  }
  r.fit("C", C);
  r.fit("fitted_points", static_cast<double>(rt.size()));
  if (rt.size() < 3) {
    r.note("fewer than three lattice points above the noise floor");
    r.verdict = Verdict::inconclusive;
    return r;
  }
  const LineFit fit = fit_loglog(rt, tail);
  r.fit("slope", fit.slope);
  r.verdict = fit.slope <= -delta + slope_margin ? Verdict::pass : Verdict::fail;
  return r;
}

}  // namespace hml
