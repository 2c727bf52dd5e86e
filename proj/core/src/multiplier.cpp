#include "hml/multiplier.hpp"

#include <algorithm>
#include <iterator>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "hml/log.hpp"
#include "hml/parallel.hpp"
#include "hml/quadrature.hpp"
#include "hml/specfun.hpp"
#include "hml/stats.hpp"

namespace hml {

namespace {

double squared_norm_scaled(std::span<const double> lambda, double s) {
  double r2 = 0.0;
  for (double l : lambda) {
    const double u = s * l * l;
    r2 += u * u;
  }
  return std::sqrt(r2);
}

double min_dual_radius(const TransformPlan& plan) {
  double v = std::numeric_limits<double>::infinity();
  for (const auto& a : plan.dual()->axes()) v = std::min(v, a.R());
  return v;
}

double min_spatial_radius(const TransformPlan& plan) {
  double v = std::numeric_limits<double>::infinity();
  for (const auto& a : plan.spatial()->axes()) v = std::min(v, a.R());
  return v;
}

}  // namespace

GridFunction apply_multiplier(const TransformPlan& plan, const Symbol& m, const GridFunction& f) {
  if (m.dims() != plan.dims()) throw std::invalid_argument("apply_multiplier: symbol dimension mismatch");
  GridFunction hf = hankel_transform(plan, f);
  const Grid& dual = *plan.dual();
  std::vector<double> peak(hf.size(), 0.0);
  parallel_for(hf.size(), [&](std::size_t i) {
    const Point lam = dual.node(i);
    const cplx v = m.m(lam);
    peak[i] = std::abs(v);
    hf[i] *= v;
  });
  const double mmax = *std::max_element(peak.begin(), peak.end());
  if (mmax > m.sup_norm() * (1.0 + 1e-9)) {
    std::ostringstream msg;
    msg << "apply_multiplier: |m| reaches " << mmax << " on the dual grid, above the recorded bound "
        << m.sup_norm() << " of " << m.name();
    warn(msg.str());
  }
  return inverse_hankel(plan, hf);
}

DyadicBand resolvable_band(const TransformPlan& plan) {
  DyadicBand b;
  b.j_hi = static_cast<int>(std::floor(2.0 * std::log2(min_dual_radius(plan)))) - 1;
  b.j_lo = static_cast<int>(std::ceil(2.0 * std::log2(32.0 / min_spatial_radius(plan))));
  return b;
}

GridFunction dyadic_symbol_piece(const TransformPlan& plan, const Symbol& m, const DyadicPartition& psi, int j) {
  const double s = std::ldexp(1.0, -j);
  return sample_dual(plan, [&](std::span<const double> lam) -> cplx {
    const double p = psi(squared_norm_scaled(lam, s));
    return p == 0.0 ? cplx(0.0) : p * m.m(lam);
  });
}

GridFunction kernel_piece(const TransformPlan& plan, const Symbol& m, const DyadicPartition& psi, int j,
                          std::span<const double> y) {
  const DyadicBand band = resolvable_band(plan);
  if (j > band.j_hi) {
    std::ostringstream msg;
    msg << "kernel_piece: j=" << j << " needs frequencies up to " << std::pow(2.0, 0.5 * (j + 1))
        << " beyond the dual truncation " << min_dual_radius(plan) << " (unresolvable piece)";
    warn(msg.str());
  } else if (j < band.j_lo) {
    std::ostringstream msg;
    msg << "kernel_piece: j=" << j << " spreads over " << 32.0 * std::pow(2.0, -0.5 * j)
        << " beyond the spatial truncation " << min_spatial_radius(plan) << " (unresolvable piece)";
    warn(msg.str());
  }
  GridFunction g = dyadic_symbol_piece(plan, m, psi, j);
  g *= e_kernel_on_dual(plan, y);
  return inverse_hankel(plan, g);
}

EstimateReport partition_check(PartitionVariant variant, double tolerance) {
  const DyadicPartition psi(variant);
  EstimateReport r;
  r.name = variant == PartitionVariant::plain ? "partition_of_unity_plain" : "partition_of_unity_squared";
  r.provenance = variant == PartitionVariant::plain ? "sum_j psi(2^-j r) = 1" : "sum_j psi^2(2^-j r) = 1";
  r.param("j_range", std::vector<double>{-40.0, 40.0}).param("r_range", std::vector<double>{std::ldexp(1.0, -35),
                                                                                          std::ldexp(1.0, 35)});
  r.param("tolerance", tolerance);
  const std::size_t count = 7001;
  double residual = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double e = -35.0 + 70.0 * static_cast<double>(i) / static_cast<double>(count - 1);
    residual = std::max(residual, std::abs(psi.partial_sum(std::exp2(e), -40, 40) - 1.0));
  }
  double off_support = 0.0;
  for (std::size_t i = 0; i <= 1000; ++i) {
    const double a = 0.5 * static_cast<double>(i) / 1000.0;
    const double b = 2.0 + 6.0 * static_cast<double>(i) / 1000.0;
    off_support = std::max({off_support, std::abs(psi(a)), std::abs(psi(b))});
  }
  r.fit("max_residual", residual).fit("max_off_support", off_support);
  r.verdict = (residual <= tolerance && off_support == 0.0) ? Verdict::pass : Verdict::fail;
  return r;
}

// ----------------------------------------------------------- DyadicKernel1D

DyadicKernel1D::DyadicKernel1D(double alpha, const Symbol& m, const DyadicPartition& psi, int j, double max_argument)
    : nu_(alpha - 0.5), j_(j), scale_(std::exp2(0.5 * j)) {
  if (m.dims() != 1) throw std::invalid_argument("DyadicKernel1D: d = 1 symbols only");
  if (!(alpha > -0.5)) throw std::invalid_argument("DyadicKernel1D: alpha must exceed -1/2");
  const double Q = 2.0 * alpha + 1.0;
  prefactor_ = std::exp2(0.5 * j * Q);
  const double lo = std::sqrt(DyadicPartition::inner_radius());
  const double hi = std::sqrt(DyadicPartition::outer_radius());
  const double width = hi - lo;

  // Phase rate of mu -> m(2^{j/2} mu) from consecutive samples.
  const std::size_t samples = 8192;
  const double dmu = width / static_cast<double>(samples);
  double rate = 0.0;
  cplx prev = 0.0;
  for (std::size_t i = 0; i <= samples; ++i) {
    const double mu[1] = {scale_ * (lo + dmu * static_cast<double>(i))};
    const cplx v = m.m(mu);
    if (std::abs(v) > 0.0 && std::abs(prev) > 0.0) {
      const double jump = std::abs(std::arg(v * std::conj(prev)));
      if (jump > 1.0) resolved_ = false;
      rate = std::max(rate, jump / dmu);
    }
    prev = v;
  }

  // An unresolved symbol gets a nominal rule only; callers skip the piece.
  if (!resolved_) rate = 0.0;
  const double phase = (std::max(max_argument, 0.0) + rate) * width;
  const auto panels = std::max<std::size_t>(32, static_cast<std::size_t>(std::ceil(phase / 6.0)));
  const QuadratureRule gl = gauss_legendre(16);
  const double h = width / static_cast<double>(panels);
  mu_.reserve(panels * 16);
  weight_.reserve(panels * 16);
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = lo + h * static_cast<double>(p);
    for (std::size_t i = 0; i < 16; ++i) {
      const double mu = a + 0.5 * h * (gl.nodes[i] + 1.0);
      const double ps = psi(mu * mu);
      if (ps == 0.0) continue;
      const double lam[1] = {scale_ * mu};
      mu_.push_back(mu);
      weight_.push_back(0.5 * h * gl.weights[i] * ps * std::pow(mu, 2.0 * alpha) * m.m(lam));
    }
  }
}

std::vector<double> DyadicKernel1D::reduced_bessel(double x) const {
  std::vector<double> e(mu_.size());
  const double X = scale_ * x;
  for (std::size_t i = 0; i < mu_.size(); ++i) e[i] = detail::bessel_j_reduced(nu_, X * mu_[i]);
  return e;
}

std::vector<cplx> DyadicKernel1D::transform(std::span<const double> xs) const {
  std::vector<cplx> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t a) {
    const std::vector<double> e = reduced_bessel(xs[a]);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < mu_.size(); ++i) acc += weight_[i] * e[i];
    out[a] = prefactor_ * acc;
  });
  return out;
}

std::vector<cplx> DyadicKernel1D::kernel(std::span<const double> xs, std::span<const double> ys) const {
  std::vector<std::vector<cplx>> wy(ys.size());
  parallel_for(ys.size(), [&](std::size_t b) {
    const std::vector<double> e = reduced_bessel(ys[b]);
    wy[b].resize(mu_.size());
    for (std::size_t i = 0; i < mu_.size(); ++i) wy[b][i] = prefactor_ * weight_[i] * e[i];
  });
  std::vector<cplx> out(xs.size() * ys.size());
  parallel_for(xs.size(), [&](std::size_t a) {
    const std::vector<double> e = reduced_bessel(xs[a]);
    for (std::size_t b = 0; b < ys.size(); ++b) {
      cplx acc = 0.0;
      const auto& w = wy[b];
      for (std::size_t i = 0; i < mu_.size(); ++i) acc += w[i] * e[i];
      out[b * xs.size() + a] = acc;
    }
  });
  return out;
}

// ------------------------------------------------------- kernel_piece_check

EstimateReport kernel_piece_check(const TransformPlan& plan, const Symbol& m, const DyadicPartition& psi, double y,
                                  int j_lo, int j_hi) {
  if (plan.dims() != 1) throw std::invalid_argument("kernel_piece_check: d = 1 only");
  if (j_hi < j_lo) throw std::invalid_argument("kernel_piece_check: empty j range");
  EstimateReport r;
  r.name = "kernel_pieces";
  r.provenance = "K_j(x,y) = tau^y H(psi(2^-j lambda^2) m)(x)";
  r.param("symbol", m.name()).param("y", y).param("j_lo", static_cast<std::int64_t>(j_lo));
  r.param("j_hi", static_cast<std::int64_t>(j_hi));
  r.param("R", plan.spatial()->max_R()).param("Lambda", plan.dual()->max_R());
  const double alpha = plan.alpha()[0];
  const double Q = plan.alpha().homogeneous_dimension();
  const std::vector<double> yy{y};
  const Grid& dual = *plan.dual();
  const Grid& spatial = *plan.spatial();

  // Partition sum against m on the annulus where j_lo..j_hi tile exactly.
  GridFunction sum_pieces(plan.dual());
  std::vector<GridFunction> pieces;
  for (int j = j_lo; j <= j_hi; ++j) {
    pieces.push_back(dyadic_symbol_piece(plan, m, psi, j));
    sum_pieces += pieces.back();
  }
  double residual = 0.0;
  if (psi.variant() == PartitionVariant::plain) {
    for (std::size_t i = 0; i < dual.size(); ++i) {
      const double l = dual.axis(0).nodes()[i];
      const double u = l * l;
      if (u < std::ldexp(1.0, j_lo + 1) || u > std::ldexp(1.0, j_hi - 1)) continue;
      const double lam[1] = {l};
      residual = std::max(residual, std::abs(sum_pieces[i] - m.m(lam)));
    }
  }
  r.fit("partition_sum_residual", residual);

  // sum_j K_j + tau^y H(chi(2^{-(j_lo-1)} lambda^2) m) = tau^y H(chi(2^{-j_hi} lambda^2) m).
  const double low = std::ldexp(1.0, -(j_lo - 1));
  GridFunction residue = sample_dual(plan, [&](std::span<const double> lam) -> cplx {
    const double c = smooth_step(low * lam[0] * lam[0]);
    return c == 0.0 ? cplx(0.0) : c * m.m(lam);
  });
  GridFunction total = residue;
  total += sum_pieces;
  total *= e_kernel_on_dual(plan, yy);
  const GridFunction kernel_total = inverse_hankel(plan, total);
  const double first_node[1] = {dual.axis(0).nodes()[0]};
  const cplx m0 = m.m(first_node);
  const cplx mass = integrate(kernel_total);
  const double mass_err = std::abs(mass - m0) / std::max(std::abs(m0), 1e-300);
  // The mass is only compared with m(0+) when that limit exists.
  const double probes[3] = {1e-4, 1e-6, 1e-8};
  double drift = 0.0;
  for (double l : probes) {
    const double lam[1] = {l};
    drift = std::max(drift, std::abs(m.m(lam) - m0));
  }
  const bool has_limit = drift <= 1e-6 * std::max(1.0, std::abs(m0));
  if (has_limit) {
    r.fit("approximate_identity_mass_re", mass.real()).fit("approximate_identity_mass_im", mass.imag());
    r.fit("symbol_at_origin_re", m0.real()).fit("approximate_identity_mass_error", mass_err);
  } else {
    r.param("approximate_identity_mass_re", mass.real()).param("approximate_identity_mass_im", mass.imag());
    r.param("symbol_at_first_node_re", m0.real()).param("approximate_identity_mass_error", mass_err);
    r.note("m has no limit at the origin; the approximate-identity mass is recorded but not gated");
  }

  // Dilation law and tail decay, piece by piece.
  double law = 0.0;
  double min_decay = std::numeric_limits<double>::infinity();
  r.lattice_columns = {"j", "rho", "tail_integral"};
  const std::vector<double> rho{1.0, 2.0, 4.0, 8.0, 16.0};
  const std::vector<double>& xs = spatial.axis(0).nodes();
  for (int j = j_lo; j <= j_hi; ++j) {
    const GridFunction& pj = pieces[static_cast<std::size_t>(j - j_lo)];
    const GridFunction hj = inverse_hankel(plan, pj);
    const DyadicKernel1D direct(alpha, m, psi, j, std::exp2(0.5 * j) * spatial.max_R());
    const std::vector<cplx> hd = direct.transform(xs);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      num = std::max(num, std::abs(hj[i] - hd[i]));
      den = std::max(den, std::abs(hd[i]));
    }
    law = std::max(law, num / std::max(den, 1e-300));

    GridFunction g = pj;
    g *= e_kernel_on_dual(plan, yy);
    const GridFunction kj = inverse_hankel(plan, g);
    const double full = abs_integral_1d(kj, 0.0, spatial.max_R());
    std::vector<double> lr, lt;
    for (double p : rho) {
      const double rr = p * std::exp2(-0.5 * j);
      const double tail = abs_integral_1d(kj, 0.0, y - rr) + abs_integral_1d(kj, y + rr, spatial.max_R());
      r.lattice_rows.push_back({static_cast<double>(j), p, tail});
      if (tail > 1e-12 * full) {
        lr.push_back(p);
        lt.push_back(tail);
      }
    }
    if (lr.size() >= 3) min_decay = std::min(min_decay, -fit_loglog(lr, lt).slope);
  }
  r.fit("dilation_law_discrepancy", law);
  r.fit("min_fitted_delta", std::isfinite(min_decay) ? min_decay : 0.0);
  r.fit("Q", Q);
  const bool ok = residual <= 1e-12 && law <= 1e-5 && (!has_limit || mass_err <= 1e-4) && min_decay > 0.0;
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  return r;
}

// ---------------------------------------------------------- Hörmander sup

EstimateReport hormander_check(const Symbol& n, const std::vector<double>& betas, int j_lo, int j_hi,
                               double flat_limit, const SobolevBox& box) {
  EstimateReport r;
  r.name = "hormander_profile";
  r.provenance = "sup_j ||eta n(2^j .)||_{W^beta_2} < inf";
  r.param("symbol", n.name()).param("betas", betas).param("j_lo", static_cast<std::int64_t>(j_lo));
  r.param("j_hi", static_cast<std::int64_t>(j_hi)).param("flat_limit", flat_limit);
  r.param("box_half_width", box.half_width)
      .param("box_samples", static_cast<std::int64_t>(box.samples_for(n.dims())));
  r.lattice_columns = {"beta", "window", "j", "norm"};
  const Window windows[2] = {default_window(), alternate_window()};
  double max_spread = 0.0, edge_growth = 1.0;
  auto growth = [](double edge, double inner) { return inner > 0.0 ? edge / inner : (edge > 0.0 ? HUGE_VAL : 1.0); };
  bool finite = true, tail = false;
  for (int w = 0; w < 2; ++w) {
    const std::vector<SobolevProfile> profiles = hormander_profiles(n, betas, j_lo, j_hi, windows[w], box);
    for (const SobolevProfile& p : profiles) {
      for (const auto& [j, v] : p.norms) {
        r.lattice_rows.push_back({p.beta, static_cast<double>(w), static_cast<double>(j), v});
        finite = finite && std::isfinite(v) && v >= 0.0;
      }
      std::ostringstream key;
      key << "beta=" << p.beta << "," << windows[w].name;
      r.fit(key.str() + ":sup", p.sup_norm);
      r.fit(key.str() + ":max_over_min", p.flatness);
      max_spread = std::max(max_spread, p.flatness);
      tail = tail || p.tail_warning;
      if (p.norms.size() >= 2) {
        const auto lo = p.norms.begin();
        const auto hi = p.norms.rbegin();
        edge_growth = std::max({edge_growth, growth(lo->second, std::next(lo)->second), growth(hi->second, std::next(hi)->second)});
      }
    }
  }
  r.fit("max_spread", max_spread).fit("edge_growth", edge_growth);
  if (tail) r.note("Nyquist tail above 1e-8 for at least one j: the box under-resolves those localized symbols");
  r.note("window independence is asserted as joint finiteness of both profiles");
  // A profile still rising by 25% per step at an end of the range is read as
  // an unbounded sup; a bounded profile that is not flat is left open.
  if (!finite || edge_growth >= 1.25)
    r.verdict = Verdict::fail;
  else
    r.verdict = max_spread <= flat_limit ? Verdict::pass : Verdict::inconclusive;
  return r;
}

SobolevBox oscillation_box(std::size_t dims, double k_max) {
  SobolevBox b;
  // Modulation by e^{i k u_1} shifts the spectrum by k: widen the default
  // Nyquist band by k_max.
  b.samples = b.samples_for(dims) + 2 * static_cast<std::size_t>(std::ceil(k_max * b.half_width / std::numbers::pi));
  return b;
}

// ------------------------------------------------ weighted transform bound

EstimateReport weighted_transform_bound_check(const TransformPlan& plan, double s, double epsilon, int k_max,
                                              double band) {
  if (!(s >= 0.0) || !(epsilon > 0.0)) throw std::invalid_argument("weighted_transform_bound_check: s >= 0, eps > 0");
  const std::size_t d = plan.dims();
  const double beta_strong = s + 0.5 * static_cast<double>(d) + epsilon;
  const double beta_weak = s + epsilon;
  bool weak_applies = true;
  for (double a : plan.alpha().values()) weak_applies = weak_applies && a >= 0.5;

  EstimateReport r;
  r.name = "weighted_transform_bound";
  r.provenance = "||H(m) w^s||_{L^2} <= C ||n||_{W^beta_2}, beta = s + d/2 + eps or s + eps";
  r.param("s", s).param("epsilon", epsilon).param("k_max", static_cast<std::int64_t>(k_max)).param("band", band);
  r.param("beta_strong", beta_strong).param("beta_weak", beta_weak);
  r.param("R", plan.spatial()->max_R()).param("Lambda", plan.dual()->max_R());
  r.param("n", static_cast<std::int64_t>(plan.spatial()->axis(0).size()));
  r.param("family", std::string("n_k(u) = psi(|u|) exp(i k u_1)"));

  const DyadicPartition psi(PartitionVariant::plain);
  const SobolevBox box = oscillation_box(d, k_max);
  const double R = plan.spatial()->max_R();
  r.lattice_columns = {"k", "lhs", "rhs_strong", "rhs_weak", "ratio_strong", "ratio_weak"};
  std::vector<double> ratio_strong, ratio_weak;
  double worst_edge = 0.0;
  for (int k = 0; k <= k_max; ++k) {
    const double kk = k;
    auto n = [&](std::span<const double> u) -> cplx {
      const double p = psi(u);
      return p == 0.0 ? cplx(0.0) : p * std::exp(cplx(0.0, kk * u[0]));
    };
    const GridFunction m = sample_dual(plan, [&](std::span<const double> lam) {
      std::vector<double> u(lam.size());
      for (std::size_t i = 0; i < lam.size(); ++i) u[i] = lam[i] * lam[i];
      return n(u);
    });
    const GridFunction hm = inverse_hankel(plan, m);
    const double lhs = norm(hm, 2.0, WeightSpec{s, 0.0});
    // Share of the weighted L^2 mass in the outer tenth of the box.
    double edge = 0.0, all = 0.0;
    const Grid& g = *plan.spatial();
    for (std::size_t i = 0; i < hm.size(); ++i) {
      const Point x = g.node(i);
      const double v = std::norm(hm[i]) * std::pow(polynomial_weight(x), 2.0 * s) * g.weight(i);
      all += v;
      if (euclidean_norm(x) > 0.9 * R) edge += v;
    }
    worst_edge = std::max(worst_edge, edge / std::max(all, 1e-300));
    const double rs = sobolev_norm(d, n, beta_strong, box).norm;
    const double rw = sobolev_norm(d, n, beta_weak, box).norm;
    ratio_strong.push_back(lhs / rs);
    ratio_weak.push_back(lhs / rw);
    r.lattice_rows.push_back({kk, lhs, rs, rw, lhs / rs, lhs / rw});
  }
  const double base_s = ratio_strong[0], base_w = ratio_weak[0];
  const double max_s = *std::max_element(ratio_strong.begin() + 1, ratio_strong.end());
  const double max_w = *std::max_element(ratio_weak.begin() + 1, ratio_weak.end());
  const double min_s = *std::min_element(ratio_strong.begin() + 1, ratio_strong.end());
  const double min_w = *std::min_element(ratio_weak.begin() + 1, ratio_weak.end());
  r.fit("baseline_ratio_strong", base_s).fit("baseline_ratio_weak", base_w);
  r.fit("max_ratio_over_baseline_strong", max_s / base_s).fit("max_ratio_over_baseline_weak", max_w / base_w);
  r.fit("min_ratio_over_baseline_strong", min_s / base_s).fit("min_ratio_over_baseline_weak", min_w / base_w);
  r.fit("spatial_edge_share", worst_edge);
  const bool strong_ok = max_s <= band * base_s;
  const bool weak_ok = !weak_applies || max_w <= band * base_w;
  if (!weak_applies) r.note("the s + eps index is recorded but not gated: some alpha_k < 1/2");
  if (worst_edge > 1e-6) {
    r.note("the transform of the family reaches the spatial truncation; enlarge R");
    r.verdict = Verdict::inconclusive;
    return r;
  }
  r.verdict = (strong_ok && weak_ok) ? Verdict::pass : Verdict::fail;
  return r;
}

// --------------------------------------------------------- pointwise decay

EstimateReport pointwise_decay_check(const TransformPlan& plan, const Symbol& n, const std::vector<int>& orders,
                                     double x_lo, double x_hi) {
  if (orders.empty()) throw std::invalid_argument("pointwise_decay_check: no orders");
  const Grid& g = *plan.spatial();
  const std::size_t d = g.dims();
  for (std::size_t k = 1; k < d; ++k)
    if (!(g.axis(k) == g.axis(0))) throw std::invalid_argument("pointwise_decay_check: axes must coincide");
  EstimateReport r;
  r.name = "pointwise_decay";
  r.provenance = "|H(m)(x)| <= C_N ||n||_{C^{N+d}} w^{-N}(x)";
  r.param("symbol", n.name()).param("x_lo", x_lo).param("x_hi", x_hi);
  std::vector<double> ord(orders.begin(), orders.end());
  r.param("orders", ord);

  const GridFunction m = sample_dual(plan, [&](std::span<const double> lam) { return n.m(lam); });
  const GridFunction hm = inverse_hankel(plan, m);
  // Diagonal nodes: flat index of (i, i, ..., i).
  const std::size_t na = g.axis(0).size();
  std::size_t stride = 0;
  for (std::size_t k = 0, p = 1; k < d; ++k, p *= na) stride += p;
  std::vector<double> xs(na), vals(na);
  for (std::size_t i = 0; i < na; ++i) {
    const double x = g.axis(0).nodes()[i];
    xs[i] = x * std::sqrt(static_cast<double>(d));
    vals[i] = std::abs(hm[i * stride]);
  }
  std::vector<double> env(na);
  double run = 0.0;
  for (std::size_t i = na; i-- > 0;) {
    run = std::max(run, vals[i]);
    env[i] = run;
  }
  const double peak = *std::max_element(vals.begin(), vals.end());
  r.fit("sup_abs", peak);
  std::vector<double> fx, fy;
  r.lattice_columns = {"abs_x", "abs_value", "envelope"};
  for (std::size_t i = 0; i < na; ++i) {
    r.lattice_rows.push_back({xs[i], vals[i], env[i]});
    if (xs[i] < x_lo || xs[i] > x_hi) continue;
    if (!(env[i] > 1e-13 * peak)) continue;
    fx.push_back(1.0 + xs[i]);
    fy.push_back(env[i]);
  }
  r.fit("fitted_points", static_cast<double>(fx.size()));
  if (fx.size() < 3) {
    r.note("envelope falls below the noise floor before the fit window; decay faster than resolvable");
    r.fit("decay_exponent", std::numeric_limits<double>::infinity());
    r.verdict = std::isfinite(peak) ? Verdict::pass : Verdict::fail;
    return r;
  }
  const double exponent = -fit_loglog(fx, fy).slope;
  r.fit("decay_exponent", exponent);
  bool ok = std::isfinite(peak);
  for (int N : orders) ok = ok && exponent >= static_cast<double>(N);
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  return r;
}

// ------------------------------------------------------- potential family

EstimateReport potential_family_check(const PotentialFamily& family, double beta, int j_lo, int j_hi,
                                      const SobolevBox& box) {
  EstimateReport r;
  r.name = "potential_family_profile";
  r.provenance = "n = h * G_s with bounded h: localized W^beta_2 norms finite for beta < s";
  r.param("h", family.h_name()).param("s", family.s()).param("beta", beta);
  r.param("j_lo", static_cast<std::int64_t>(j_lo)).param("j_hi", static_cast<std::int64_t>(j_hi));
  r.fit("potential_norm", family.potential_norm());
  const Symbol n = family.symbol();
  bool finite = true;
  for (const Window& w : {default_window(), alternate_window()}) {
    const SobolevProfile p = hormander_sup(n, beta, j_lo, j_hi, w, box);
    for (const auto& [j, v] : p.norms) finite = finite && std::isfinite(v);
    r.fit(w.name + ":sup", p.sup_norm);
    r.fit(w.name + ":min", p.min_norm);
  }
  if (!(beta < family.s())) r.note("beta >= s lies outside the constructive pathway; reported only");
  r.verdict = finite ? Verdict::pass : Verdict::fail;
  return r;
}

}  // namespace hml
