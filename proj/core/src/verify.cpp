#include "hml/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "hml/log.hpp"
#include "hml/multiplier.hpp"
#include "hml/parallel.hpp"
#include "hml/profiles.hpp"
#include "hml/quadrature.hpp"
#include "hml/stats.hpp"

namespace hml {

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

double min_radius(const Grid& g) {
  double v = std::numeric_limits<double>::infinity();
  for (const auto& a : g.axes()) v = std::min(v, a.R());
  return v;
}

// Nodes and dnu weights of a one-dimensional Gauss rule on [a, b]; the
// piece touching 0 uses the Jacobi rule for x^{2 alpha}.
void append_panel(std::vector<double>& x, std::vector<double>& w, double a, double b, double alpha,
                  const QuadratureRule& gl) {
  if (!(b > a)) return;
  if (a <= 0.0) {
    const QuadratureRule jr = gauss_jacobi_origin(gl.nodes.size(), 2.0 * alpha, b);
    x.insert(x.end(), jr.nodes.begin(), jr.nodes.end());
    w.insert(w.end(), jr.weights.begin(), jr.weights.end());
    return;
  }
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double z = a + 0.5 * (b - a) * (gl.nodes[i] + 1.0);
    x.push_back(z);
    w.push_back(0.5 * (b - a) * gl.weights[i] * std::pow(z, 2.0 * alpha));
  }
}

}  // namespace

// ------------------------------------------------------------------- atoms

Atom make_atom(std::shared_ptr<const Grid> grid, const Point& y0, double r, const AtomProfile& profile) {
  const std::size_t d = grid->dims();
  if (y0.size() != d) throw std::invalid_argument("make_atom: center dimension mismatch");
  if (!(r > 0.0)) throw std::invalid_argument("make_atom: radius must be positive");
  if (!(profile.inner > 0.0 && profile.inner < 1.0)) throw std::invalid_argument("make_atom: inner must lie in (0, 1)");
  for (std::size_t k = 0; k < d; ++k) {
    if (y0[k] < 0.0 || y0[k] + r > grid->axis(k).R()) {
      throw std::invalid_argument("make_atom: ball B(y0, r) leaves the grid box [0, R] on axis " + std::to_string(k));
    }
    const auto& nodes = grid->axis(k).nodes();
    const auto inside = std::count_if(nodes.begin(), nodes.end(),
                                      [&](double x) { return std::abs(x - y0[k]) < profile.inner * r; });
    if (inside < 8) {
      throw std::domain_error("make_atom: only " + std::to_string(inside) + " nodes on axis " + std::to_string(k) +
                              " inside the ball of radius " + fmt(r) + "; its measure is below quadrature resolution");
    }
  }
  const double ri = profile.inner * r;
  const double sharp = profile.sharpness;
  const GridFunction narrow = GridFunction::sample_real(grid, [&](std::span<const double> x) {
    return smooth_bump(euclidean_distance(x, y0), -ri, ri, sharp);
  });
  const GridFunction wide = GridFunction::sample_real(grid, [&](std::span<const double> x) {
    return smooth_bump(euclidean_distance(x, y0), -r, r, sharp);
  });
  const double wide_mass = integrate(wide).real();
  GridFunction a = narrow - wide * cplx(integrate(narrow).real() / wide_mass);
  // A second pass removes the rounding left by the first.
  a -= wide * cplx(integrate(a).real() / wide_mass);
  for (auto& v : a.values()) v = v.real();

  Atom atom{std::move(a), y0, r, ball_measure(grid->alpha(), y0, r)};
  atom.values *= cplx(1.0 / (atom.ball_measure * atom.values.max_abs()));
  const AtomResiduals res = atom_residuals(atom);
  if (res.outside > 1e-14 || res.sup_excess > 1e-12 || res.mean > 1e-10) {
    throw std::runtime_error("make_atom: atom conditions violated after normalization");
  }
  return atom;
}

AtomResiduals atom_residuals(const Atom& a) {
  const Grid& g = a.values.grid();
  AtomResiduals res;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point x = g.node(i);
    if (euclidean_distance(x, a.center) >= a.radius) res.outside = std::max(res.outside, std::abs(a.values[i]));
  }
  const double sup = a.values.max_abs();
  res.sup_excess = sup * a.ball_measure - 1.0;
  res.mean = std::abs(integrate(a.values)) / (sup * a.ball_measure);
  return res;
}

// ---------------------------------------------------- kernel condition (d=1)

std::vector<std::pair<double, double>> cz_pairs(const std::vector<double>& deltas, const std::vector<double>& offsets) {
  std::vector<std::pair<double, double>> out;
  for (double c : offsets) {
    for (double d : deltas) out.emplace_back(c * d, c * d + d);
  }
  return out;
}

namespace {

struct CzPairResult {
  double integral = 0.0;
  double smooth_part = 0.0;
  double decay_part = 0.0;
  double edge_share = 0.0;
  int unresolved = 0;
  int pieces = 0;
};

CzPairResult cz_pair(double alpha, const Symbol& m, const DyadicPartition& psi, double y, double yp,
                     const CzOptions& o) {
  const double delta = std::abs(yp - y);
  const int j_lo = static_cast<int>(std::floor(2.0 * std::log2(o.u_min / delta)));
  const int j_hi = static_cast<int>(std::ceil(2.0 * std::log2(o.u_max / delta)));
  const double j_star = -2.0 * std::log2(2.0 * delta);
  const double d0 = 2.0 * delta;
  const double d_max = o.cutoff * std::exp2(-0.5 * j_lo);
  const double q = std::exp2(1.0 / static_cast<double>(o.panels_per_octave));
  const QuadratureRule gl = gauss_legendre(16);

  std::vector<double> xs, ws;
  for (double a = d0; a < d_max; a *= q) append_panel(xs, ws, y + a, y + std::min(a * q, d_max), alpha, gl);
  for (double a = d0; a < y; a *= q) append_panel(xs, ws, std::max(0.0, y - a * q), y - a, alpha, gl);
  std::vector<double> dist(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) dist[i] = std::abs(xs[i] - y);

  CzPairResult res;
  std::vector<cplx> ky(xs.size(), 0.0), kyp(xs.size(), 0.0);
  double edge = 0.0;
  const std::vector<double> ys{y, yp};
  for (int j = j_lo; j <= j_hi; ++j) {
    const double s = std::exp2(0.5 * j);
    std::vector<std::size_t> idx;
    std::vector<double> xw;
    double x_max = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (s * dist[i] <= o.cutoff) {
        idx.push_back(i);
        xw.push_back(xs[i]);
        x_max = std::max(x_max, xs[i]);
      }
    }
    ++res.pieces;
    if (idx.empty()) continue;
    const DyadicKernel1D K(alpha, m, psi, j, s * (x_max + std::max(y, yp)));
    if (!K.resolved()) {
      ++res.unresolved;
      continue;
    }
    const std::vector<cplx> v = K.kernel(xw, ys);
    const std::size_t nx = xw.size();
    double diff = 0.0, abs_sum = 0.0;
    for (std::size_t a = 0; a < nx; ++a) {
      const std::size_t i = idx[a];
      const cplx k0 = v[a], k1 = v[nx + a];
      ky[i] += k0;
      kyp[i] += k1;
      diff += ws[i] * std::abs(k0 - k1);
      abs_sum += ws[i] * (std::abs(k0) + std::abs(k1));
    }
    if (j < j_star) {
      res.smooth_part += diff;
    } else {
      res.decay_part += abs_sum;
    }
    if (j == j_lo || j == j_hi) edge += diff;
  }
  for (std::size_t i = 0; i < xs.size(); ++i) res.integral += ws[i] * std::abs(ky[i] - kyp[i]);
  res.edge_share = res.integral > 0.0 ? edge / res.integral : 0.0;
  return res;
}

}  // namespace

EstimateReport cz_hormander_check(double alpha, const Symbol& m, const DyadicPartition& psi,
                                  const std::vector<std::pair<double, double>>& pairs, const CzOptions& options) {
  if (m.dims() != 1) throw std::invalid_argument("cz_hormander_check: d = 1 symbols only");
  if (pairs.size() < 3) throw std::invalid_argument("cz_hormander_check: at least three pairs are needed");
  EstimateReport r;
  r.name = "cz_kernel_condition";
  r.provenance = "int_{|x-y|>2|y-y'|} |K(x,y) - K(x,y')| dnu(x) <= C";
  r.param("symbol", m.name()).param("alpha", alpha).param("u_min", options.u_min).param("u_max", options.u_max);
  r.param("cutoff", options.cutoff).param("panels_per_octave", static_cast<std::int64_t>(options.panels_per_octave));
  r.param("edge_threshold", options.edge_threshold);
  r.lattice_columns = {"delta", "y", "y_prime", "integral", "smooth_part", "decay_part", "edge_share"};
  std::vector<double> deltas, values;
  double worst_edge = 0.0, max_integral = 0.0;
  int unresolved = 0;
  for (const auto& [y, yp] : pairs) {
    if (!(y >= 0.0 && yp >= 0.0 && y != yp)) throw std::invalid_argument("cz_hormander_check: invalid pair");
    const CzPairResult p = cz_pair(alpha, m, psi, y, yp, options);
    const double delta = std::abs(yp - y);
    deltas.push_back(delta);
    values.push_back(p.integral);
    r.lattice_rows.push_back({delta, y, yp, p.integral, p.smooth_part, p.decay_part, p.edge_share});
    r.measure("y=" + fmt(y) + ",y'=" + fmt(yp), p.integral);
    worst_edge = std::max(worst_edge, p.edge_share);
    max_integral = std::max(max_integral, p.integral);
    unresolved += p.unresolved;
  }
  const FlatnessResult fl = flatness(deltas, values, options.slope_tolerance, options.ratio_tolerance);
  r.fit("C", max_integral).fit("slope", fl.slope).fit("max_over_min", fl.ratio);
  r.fit("max_edge_share", worst_edge).fit("unresolved_pieces", static_cast<double>(unresolved));
  if (fl.flat) {
    r.verdict = Verdict::pass;
    if (unresolved > 0) {
      r.verdict = Verdict::inconclusive;
      r.note(std::to_string(unresolved) + " dyadic pieces have a symbol phase too fast to sample and were skipped");
    }
    if (worst_edge > options.edge_threshold) {
      r.verdict = Verdict::inconclusive;
      r.note("unresolvable dyadic mass: the end pieces of the band carry " + fmt(worst_edge) + " of the integral");
    }
  } else {
    r.verdict = Verdict::fail;
    r.note("the difference integral trends with |y - y'| (slope " + fmt(fl.slope) + ", max/min " + fmt(fl.ratio) + ")");
    if (unresolved > 0) r.note(std::to_string(unresolved) + " unresolvable dyadic pieces were skipped");
  }
  return r;
}

EstimateReport association_check(const TransformPlan& plan, const Symbol& m, const DyadicPartition& psi,
                                 const std::function<double(double)>& f, double f_lo, double f_hi,
                                 const std::vector<double>& x_samples, const AssociationOptions& options) {
  if (plan.dims() != 1) throw std::invalid_argument("association_check: d = 1 only");
  if (!(f_hi > f_lo) || f_lo < 0.0) throw std::invalid_argument("association_check: invalid support interval");
  if (x_samples.empty()) throw std::invalid_argument("association_check: no sample points");
  double dist_min = std::numeric_limits<double>::infinity(), x_max = 0.0;
  for (double x : x_samples) {
    if (x >= f_lo && x <= f_hi) throw std::invalid_argument("association_check: sample " + fmt(x) + " inside supp f");
    dist_min = std::min(dist_min, x < f_lo ? f_lo - x : x - f_hi);
    x_max = std::max(x_max, x);
  }
  const double alpha = plan.alpha()[0];
  const double Q = plan.alpha().homogeneous_dimension();
  EstimateReport r;
  r.name = "kernel_association";
  r.provenance = "T_m f(x) = int K(x,y) f(y) dnu(y) for x off supp f";
  r.param("symbol", m.name()).param("alpha", alpha).param("support", std::vector<double>{f_lo, f_hi});
  r.param("x_samples", x_samples).param("tolerance", options.tolerance).param("floor", options.floor);
  r.param("R", plan.spatial()->max_R()).param("Lambda", plan.dual()->max_R());

  const GridFunction fs = GridFunction::sample_real(plan.spatial(), [&](std::span<const double> x) { return f(x[0]); });
  const GridFunction tf = apply_multiplier(plan, m, fs);
  const double f_sup = fs.max_abs();

  const QuadratureRule gl = gauss_legendre(16);
  std::vector<double> ys, yw;
  const double h = (f_hi - f_lo) / static_cast<double>(options.y_panels);
  for (std::size_t p = 0; p < options.y_panels; ++p) {
    append_panel(ys, yw, f_lo + h * static_cast<double>(p), f_lo + h * static_cast<double>(p + 1), alpha, gl);
  }
  for (std::size_t b = 0; b < ys.size(); ++b) yw[b] *= f(ys[b]);

  // Pieces below u_min = 2^{j/2} max(x, f_hi) contribute O(u_min^Q).
  const double u_min = std::max(std::pow(1e-8, 1.0 / Q), 1e-12);
  const double span = std::max(x_max, f_hi);
  const int j_lo = static_cast<int>(std::floor(2.0 * std::log2(u_min / span)));
  const int j_hi = static_cast<int>(std::ceil(2.0 * std::log2(options.cutoff / dist_min)));
  r.param("j_lo", static_cast<std::int64_t>(j_lo)).param("j_hi", static_cast<std::int64_t>(j_hi));
  std::vector<cplx> ker(x_samples.size(), 0.0);
  int unresolved = 0;
  for (int j = j_lo; j <= j_hi; ++j) {
    const double s = std::exp2(0.5 * j);
    const DyadicKernel1D K(alpha, m, psi, j, s * (x_max + f_hi));
    if (!K.resolved()) {
      ++unresolved;
      continue;
    }
    const std::vector<cplx> v = K.kernel(x_samples, ys);
    for (std::size_t b = 0; b < ys.size(); ++b) {
      for (std::size_t a = 0; a < x_samples.size(); ++a) ker[a] += yw[b] * v[b * x_samples.size() + a];
    }
  }

  r.lattice_columns = {"x", "spectral_re", "spectral_im", "kernel_re", "kernel_im", "relative_error"};
  double worst = 0.0;
  for (std::size_t a = 0; a < x_samples.size(); ++a) {
    const double x[1] = {x_samples[a]};
    const cplx sv = tf.evaluate(x);
    const double err = std::abs(sv - ker[a]) / std::max(std::abs(sv), options.floor * f_sup);
    worst = std::max(worst, err);
    r.lattice_rows.push_back({x[0], sv.real(), sv.imag(), ker[a].real(), ker[a].imag(), err});
    r.measure("x=" + fmt(x[0]), err);
  }
  r.fit("max_relative_error", worst).fit("unresolved_pieces", static_cast<double>(unresolved));
  if (unresolved > 0) {
    r.verdict = Verdict::inconclusive;
    r.note(std::to_string(unresolved) + " dyadic pieces could not be sampled");
  } else {
    r.verdict = worst <= options.tolerance ? Verdict::pass : Verdict::fail;
  }
  return r;
}

// ----------------------------------------------------------------- probes

TestBattery default_battery(const TransformPlan& plan, std::uint64_t seed, std::size_t size) {
  const auto& grid = plan.spatial();
  const std::size_t d = plan.dims();
  const double R = min_radius(*grid);
  const double L = min_radius(*plan.dual());
  const double Q = plan.alpha().homogeneous_dimension();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto log_uniform = [&](double lo, double hi) { return lo * std::pow(hi / lo, u01(rng)); };
  // A Gaussian e^{-t^2 |x|^2} is below e^{-30} at distance D from its center
  // when t >= sqrt(30) / D, and its spectrum is below e^{-30} at distance G
  // from its frequency when t <= G / sqrt(120).
  const double t_lo = std::sqrt(30.0) / R;
  const double t_hi = std::max(L / std::sqrt(120.0), t_lo);

  // Bumps sit at least sqrt(40 / a) away from the origin so that their even
  // extension through 0 is smooth to roundoff, and a <= L^2 / 120 keeps
  // the spectrum below e^{-30} at the dual edge.
  const double a_hi = L * L / 120.0;
  const double a_lo = std::min(160.0 / (R * R), a_hi);

  TestBattery b;
  for (std::size_t i = 0; i < size; ++i) {
    switch (i % 4) {
      case 0: {
        const double a = log_uniform(a_lo, std::max(a_hi, a_lo * (1.0 + 1e-12)));
        const double near = std::sqrt(40.0 / a);
        Point c(d);
        for (auto& v : c) v = near + u01(rng) * std::max(0.0, R / 2.0 - near);
        b.members.push_back(GridFunction::sample_real(grid, [&](std::span<const double> x) { return gaussian(x, a, c); }));
        b.labels.push_back("bump#" + std::to_string(i));
        break;
      }
      case 1: {
        const double t = log_uniform(t_lo, t_hi);
        const Point zero(d, 0.0);
        b.members.push_back(GridFunction::sample_real(
            grid, [&](std::span<const double> x) { return std::pow(t, Q) * gaussian(x, t * t, zero); }));
        b.labels.push_back("dilate#" + std::to_string(i) + ",t=" + fmt(t));
        break;
      }
      case 2: {
        Point y(d);
        for (auto& v : y) v = u01(rng) * R / 3.0;
        const double t = log_uniform(std::min(std::sqrt(30.0) / (R - *std::max_element(y.begin(), y.end())), t_hi), t_hi);
        const Point zero(d, 0.0);
        const GridFunction g =
            GridFunction::sample_real(grid, [&](std::span<const double> x) { return gaussian(x, t * t, zero); });
        b.members.push_back(translate(plan, g, y));
        b.labels.push_back("translate#" + std::to_string(i));
        break;
      }
      default: {
        struct Term {
          double c, t, k;
          Point center;
        };
        std::vector<Term> terms(3);
        for (auto& term : terms) {
          term.c = 2.0 * u01(rng) - 1.0;
          term.k = u01(rng) * L / 4.0;
          term.t = log_uniform(t_lo, std::max((L - term.k) / std::sqrt(120.0), t_lo));
          term.center.assign(d, 0.0);
        }
        b.members.push_back(GridFunction::sample_real(grid, [&](std::span<const double> x) {
          double acc = 0.0;
          for (const auto& term : terms) acc += term.c * gaussian(x, term.t * term.t, term.center) * std::cos(term.k * x[0]);
          return acc;
        }));
        b.labels.push_back("mix#" + std::to_string(i));
        break;
      }
    }
  }
  return b;
}

namespace {

double battery_max_ratio(const TransformPlan& plan, const Symbol& m, double p, const TestBattery& battery,
                         std::vector<double>* ratios) {
  double best = 0.0;
  for (const GridFunction& f : battery.members) {
    const double den = norm(f, p);
    const double ratio = den > 0.0 ? norm(apply_multiplier(plan, m, f), p) / den : 0.0;
    if (ratios) ratios->push_back(ratio);
    best = std::max(best, ratio);
  }
  return best;
}

}  // namespace

EstimateReport lp_norm_probe(const TransformPlan& plan, const Symbol& m, double p, const TestBattery& battery,
                             const std::vector<int>& dilations, double dilation_tolerance) {
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("lp_norm_probe: p must lie in (1, inf)");
  if (battery.members.empty()) throw std::invalid_argument("lp_norm_probe: empty battery");
  EstimateReport r;
  r.name = "lp_norm_probe";
  r.provenance = "T_m bounded on L^p(X), 1 < p < inf";
  r.param("symbol", m.name()).param("p", p).param("battery_size", static_cast<std::int64_t>(battery.members.size()));
  r.note("probing gives lower bounds for the operator norm only");
  std::vector<double> ratios;
  const double best = battery_max_ratio(plan, m, p, battery, &ratios);
  for (std::size_t i = 0; i < ratios.size(); ++i) r.measure(battery.labels[i], ratios[i]);
  r.fit("max_ratio", best).fit("symbol_sup", m.sup_norm());
  bool ok = std::isfinite(best);
  if (p == 2.0) {
    const double excess = best / m.sup_norm() - 1.0;
    r.fit("plancherel_excess", excess);
    if (excess > 1e-6) {
      ok = false;
      r.note("L^2 ratio exceeds ||m||_inf");
    }
  }
  if (!dilations.empty()) {
    r.param("dilations", std::vector<double>(dilations.begin(), dilations.end()));
    r.lattice_columns = {"j", "max_ratio"};
    std::vector<double> maxima;
    for (int j : dilations) {
      const double v = j == 0 ? best : battery_max_ratio(plan, m.dilated(j), p, battery, nullptr);
      maxima.push_back(v);
      r.lattice_rows.push_back({static_cast<double>(j), v});
    }
    const double spread = spread_ratio(maxima);
    r.fit("dilation_spread", spread);
    if (!(spread <= 1.0 + dilation_tolerance)) {
      ok = false;
      r.note("maxima over dilated symbols differ by more than " + fmt(dilation_tolerance));
    }
  }
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  return r;
}

SpikeBattery spike_battery(const TransformPlan& plan, const std::vector<double>& centers) {
  const auto& grid = plan.spatial();
  const double L = min_radius(*plan.dual());
  const double R = min_radius(*grid);
  SpikeBattery s;
  for (double c : centers) {
    const Point center(plan.dims(), c);
    std::size_t kept = 0;
    for (double base : {32.0, 64.0}) {
      const double sigma = base / L;
      if ((c != 0.0 && c < 20.0 * sigma) || c + 9.0 * sigma > R) continue;
      ++kept;
      auto spike = [&](double sg) {
        GridFunction g = GridFunction::sample_real(
            grid, [&](std::span<const double> x) { return gaussian(x, 0.5 / (sg * sg), center); });
        g *= cplx(1.0 / norm(g, 1.0));
        return g;
      };
      s.base.push_back(spike(sigma));
      s.sharpened.push_back(spike(sigma / 4.0));
      s.labels.push_back("c=" + fmt(c) + ",sigma=" + fmt(sigma));
    }
    if (kept == 0) {
      throw std::invalid_argument("spike_battery: no resolvable spike width fits at center " + fmt(c));
    }
  }
  return s;
}

double weak_l1_quantity(const GridFunction& g) {
  const Grid& grid = g.grid();
  std::vector<std::pair<double, double>> vw(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) vw[i] = {std::abs(g[i]), grid.weight(i)};
  std::sort(vw.begin(), vw.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  double cum = 0.0, best = 0.0;
  for (const auto& [v, w] : vw) {
    cum += w;
    best = std::max(best, v * cum);
  }
  return best;
}

EstimateReport weak11_probe(const TransformPlan& plan, const Symbol& m, const SpikeBattery& spikes,
                            double stability) {
  if (spikes.base.empty()) throw std::invalid_argument("weak11_probe: empty spike battery");
  EstimateReport r;
  r.name = "weak11_probe";
  r.provenance = "T_m maps L^1(X) to L^{1,inf}(X)";
  r.param("symbol", m.name()).param("spikes", static_cast<std::int64_t>(spikes.base.size()));
  r.param("stability", stability);
  r.note("probing gives lower bounds for the weak-type norm only");
  r.lattice_columns = {"spike", "base", "sharpened"};
  double max_base = 0.0, max_sharp = 0.0;
  bool finite = true;
  for (std::size_t i = 0; i < spikes.base.size(); ++i) {
    const double qb = weak_l1_quantity(apply_multiplier(plan, m, spikes.base[i])) / norm(spikes.base[i], 1.0);
    const double qs =
        weak_l1_quantity(apply_multiplier(plan, m, spikes.sharpened[i])) / norm(spikes.sharpened[i], 1.0);
    finite = finite && std::isfinite(qb) && std::isfinite(qs);
    max_base = std::max(max_base, qb);
    max_sharp = std::max(max_sharp, qs);
    r.measure(spikes.labels[i], qb);
    r.measure(spikes.labels[i] + ",sharpened", qs);
    r.lattice_rows.push_back({static_cast<double>(i), qb, qs});
  }
  r.fit("max_base", max_base).fit("max_sharpened", max_sharp).fit("sharpening_ratio", max_sharp / max_base);
  r.verdict = (finite && max_sharp <= stability * max_base) ? Verdict::pass : Verdict::fail;
  return r;
}

// --------------------------------------------------------------------- H^1

std::vector<AtomSpec> default_atom_family() {
  std::vector<AtomSpec> out;
  for (int e = -4; e <= 4; ++e) {
    if (e == 0) continue;
    const double r = std::exp2(e);
    for (double c : {0.0, r, 1.0}) out.push_back({c, r});
  }
  return out;
}

namespace {

std::shared_ptr<const TransformPlan> scaled_plan(double alpha, double R, double Lambda) {
  return TransformPlan::make(MultiIndex({alpha}), R, Lambda, TransformPlan::minimal_nodes(R, Lambda));
}

double far_integral(const GridFunction& g, double y0, double r) {
  return abs_integral_1d(g, 0.0, y0 - r) + abs_integral_1d(g, y0 + r, g.grid().max_R());
}

}  // namespace

EstimateReport h1_atom_check(double alpha, const Symbol& m, const DyadicPartition& psi_squared,
                             const std::vector<AtomSpec>& atoms, const H1Options& o) {
  if (m.dims() != 1) throw std::invalid_argument("h1_atom_check: d = 1 symbols only");
  if (psi_squared.variant() != PartitionVariant::squared) {
    throw std::invalid_argument("h1_atom_check: expects the squared partition");
  }
  if (atoms.empty()) throw std::invalid_argument("h1_atom_check: empty atom family");
  EstimateReport r;
  r.name = "h1_atom_bound";
  r.provenance = "||M(T_m a)||_{L^1(X)} <= C for every atom a";
  r.param("symbol", m.name()).param("alpha", alpha).param("atoms", static_cast<std::int64_t>(atoms.size()));
  r.param("spatial_factor", o.spatial_factor).param("band_factor", o.band_factor);
  r.param("time_grid", std::vector<double>{o.time_grid.t_min(), o.time_grid.t_max(),
                                           static_cast<double>(o.time_grid.t.size())});
  r.param("j_span", static_cast<std::int64_t>(o.j_span));
  r.lattice_columns = {"atom", "center", "radius", "j", "total", "local", "far", "local_reference"};

  std::map<double, double> by_radius;
  double worst_local = 0.0;
  bool structure = true;
  for (std::size_t ia = 0; ia < atoms.size(); ++ia) {
    const double y0 = atoms[ia].center, rad = atoms[ia].radius;
    const auto plan = scaled_plan(alpha, y0 + o.spatial_factor * rad, o.band_factor / rad);
    const Atom atom = make_atom(plan->spatial(), {y0}, rad);
    const TimeGrid tg = o.time_grid.scaled(rad * rad);
    const GridFunction mf = maximal_function(*plan, tg, apply_multiplier(*plan, m, atom.values));
    const double total = abs_integral_1d(mf, 0.0, plan->spatial()->max_R());
    const double local = abs_integral_1d(mf, y0 - 2.0 * rad, y0 + 2.0 * rad);
    const double reference =
        std::sqrt(ball_measure(MultiIndex({alpha}), std::vector<double>{y0}, 2.0 * rad)) * norm(atom.values, 2.0) *
        m.sup_norm();
    worst_local = std::max(worst_local, local / reference);
    by_radius[rad] = std::max(by_radius[rad], total);
    r.lattice_rows.push_back({static_cast<double>(ia), y0, rad, std::nan(""), total, local, total - local, reference});
    r.measure("y0=" + fmt(y0) + ",r=" + fmt(rad), total);

    if (std::find(o.split_atoms.begin(), o.split_atoms.end(), ia) == o.split_atoms.end()) continue;
    // Far part piece by piece: m_j = psi^2(2^-j lambda^2) m on a plan scaled to j.
    const GridFunction ha = hankel_transform(*plan, atom.values);
    const int j_star = static_cast<int>(std::lround(-2.0 * std::log2(rad)));
    std::vector<double> far_j;
    for (int j = j_star - o.j_span; j <= j_star + o.j_span; ++j) {
      const double s = std::exp2(0.5 * j);
      const double Lj = 1.05 * std::sqrt(2.0) * s;
      const auto pj = scaled_plan(alpha, y0 + o.spatial_factor * std::max(rad, 1.0 / s), Lj);
      const GridFunction g = sample_dual(*pj, [&](std::span<const double> lam) -> cplx {
        const double ps = psi_squared(lam[0] * lam[0] / (s * s));
        if (ps == 0.0) return 0.0;
        return ps * ps * m.m(lam) * ha.evaluate(lam);
      });
      const GridFunction mj = maximal_function(*pj, tg, inverse_hankel(*pj, g));
      far_j.push_back(far_integral(mj, y0, 2.0 * rad));
      r.lattice_rows.push_back({static_cast<double>(ia), y0, rad, static_cast<double>(j), std::nan(""), std::nan(""),
                                far_j.back(), std::nan("")});
    }
    const double peak = *std::max_element(far_j.begin(), far_j.end());
    const double far_sum = std::accumulate(far_j.begin(), far_j.end(), 0.0);
    const std::string key = "atom" + std::to_string(ia);
    r.fit(key + ":far_end_lo_over_peak", far_j.front() / peak);
    r.fit(key + ":far_end_hi_over_peak", far_j.back() / peak);
    r.fit(key + ":far_sum_over_far_total", far_sum / (total - local));
    if (far_j.front() > 0.25 * peak || far_j.back() > 0.25 * peak) structure = false;
  }
  std::vector<double> radii, maxima;
  for (const auto& [rad, v] : by_radius) {
    radii.push_back(rad);
    maxima.push_back(v);
  }
  const FlatnessResult fl = flatness(radii, maxima, o.slope_tolerance, o.ratio_tolerance);
  r.fit("C", *std::max_element(maxima.begin(), maxima.end()));
  r.fit("slope", fl.slope).fit("max_over_min", fl.ratio).fit("max_local_over_reference", worst_local);
  if (!structure) r.note("the far part over j does not fall off on both sides of j* = -2 log2 r");
  if (!fl.flat) r.note("the per-radius maximum trends with r");
  r.verdict = (fl.flat && structure) ? Verdict::pass : Verdict::fail;
  return r;
}

EstimateReport mjt_kernel_checks(double alpha, const Symbol& m, const DyadicPartition& psi_squared,
                                 const std::vector<int>& j_set, const MjtOptions& o) {
  if (m.dims() != 1) throw std::invalid_argument("mjt_kernel_checks: d = 1 symbols only");
  if (psi_squared.variant() != PartitionVariant::squared) {
    throw std::invalid_argument("mjt_kernel_checks: expects the squared partition");
  }
  if (j_set.empty()) throw std::invalid_argument("mjt_kernel_checks: empty j set");
  EstimateReport r;
  r.name = "heat_damped_kernel_pieces";
  r.provenance =
      "int_{|x-y|>r} sup_t |M_{j,t}(x,y)| dnu <= C (2^{j/2} r)^{-delta}; "
      "int sup_t |M_{j,t}(x,y) - M_{j,t}(x,y')| dnu <= C 2^{j/2} |y-y'|";
  r.param("symbol", m.name()).param("alpha", alpha).param("j_set", std::vector<double>(j_set.begin(), j_set.end()));
  r.param("centers", o.centers).param("offsets", o.offsets).param("rho", o.rho).param("band", o.band);
  r.lattice_columns = {"j", "y", "kind", "parameter", "value"};

  std::vector<double> decay_c, lip_c;
  double worst_slope = -std::numeric_limits<double>::infinity();
  double truncation_change = 0.0;
  const double y_max = *std::max_element(o.centers.begin(), o.centers.end());
  const double h_max = *std::max_element(o.offsets.begin(), o.offsets.end());
  const double rho_max = *std::max_element(o.rho.begin(), o.rho.end());
  for (int j : j_set) {
    const double s = std::exp2(0.5 * j);
    const double Lj = 1.05 * std::sqrt(2.0) * s;
    const auto plan = scaled_plan(alpha, y_max + (h_max + 4.0 * rho_max) / s, Lj);
    const GridFunction mj = sample_dual(*plan, [&](std::span<const double> lam) -> cplx {
      const double ps = psi_squared(lam[0] * lam[0] / (s * s));
      return ps == 0.0 ? cplx(0.0) : ps * ps * m.m(lam);
    });
    double piece_sup = 0.0;
    for (const cplx& v : mj.values()) piece_sup = std::max(piece_sup, std::abs(v));
    const TimeGrid tg = o.time_grid.scaled(1.0 / (s * s));
    TimeGrid short_tg;
    for (double t : tg.t) {
      if (t <= tg.t_max() * o.truncation) short_tg.t.push_back(t);
    }
    auto kernel_at = [&](double y) {
      GridFunction g = mj;
      g *= e_kernel_on_dual(*plan, std::vector<double>{y});
      return inverse_hankel(*plan, g);
    };
    double c_j = 0.0, l_j = 0.0;
    for (double y : o.centers) {
      const GridFunction k = kernel_at(y);
      const GridFunction sup_full = maximal_function(*plan, tg, k);
      const GridFunction sup_short = maximal_function(*plan, short_tg, k);
      std::vector<double> tails;
      for (double rho : o.rho) {
        const double tail = far_integral(sup_full, y, rho / s);
        tails.push_back(tail);
        r.lattice_rows.push_back({static_cast<double>(j), y, 0.0, rho, tail});
        const double tail_short = far_integral(sup_short, y, rho / s);
        truncation_change = std::max(truncation_change, std::abs(tail - tail_short) / tail);
      }
      worst_slope = std::max(worst_slope, fit_loglog(o.rho, tails).slope);
      c_j = std::max(c_j, tails.front());
      for (double h : o.offsets) {
        const GridFunction diff = k - kernel_at(y + h / s);
        const double full = abs_integral_1d(maximal_function(*plan, tg, diff), 0.0, plan->spatial()->max_R());
        const double part = abs_integral_1d(maximal_function(*plan, short_tg, diff), 0.0, plan->spatial()->max_R());
        truncation_change = std::max(truncation_change, std::abs(full - part) / full);
        r.lattice_rows.push_back({static_cast<double>(j), y, 1.0, h, full / h});
        l_j = std::max(l_j, full / h);
      }
    }
    decay_c.push_back(c_j / piece_sup);
    lip_c.push_back(l_j / piece_sup);
    r.measure("j=" + std::to_string(j) + ":decay_constant", c_j);
    r.measure("j=" + std::to_string(j) + ":lipschitz_constant", l_j);
    r.measure("j=" + std::to_string(j) + ":piece_sup", piece_sup);
  }
  const double decay_spread = spread_ratio(decay_c);
  const double lip_spread = spread_ratio(lip_c);
  r.fit("max_decay_slope", worst_slope).fit("decay_constant_spread", decay_spread);
  r.fit("lipschitz_constant_spread", lip_spread).fit("time_truncation_change", truncation_change);
  const bool ok = worst_slope < 0.0 && decay_spread <= o.band && lip_spread <= o.band && truncation_change < 0.01;
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  return r;
}

// ------------------------------------------------------- negative controls

EstimateReport negative_control_check(double alpha, const std::vector<std::pair<double, double>>& pairs,
                                      const CzOptions& options) {
  EstimateReport r;
  r.name = "negative_controls";
  r.provenance = "a symbol with unbounded localized Sobolev norms must fail both kernel-side checks";
  const Symbol div = divergent_symbol(1);
  const EstimateReport h = hormander_check(div, {4.0}, -10, 10);
  const EstimateReport cz = cz_hormander_check(alpha, div, DyadicPartition(PartitionVariant::plain), pairs, options);
  const double spread = h.fitted_value("max_spread");
  const bool cz_flat = std::abs(cz.fitted_value("slope")) <= options.slope_tolerance &&
                       cz.fitted_value("max_over_min") <= options.ratio_tolerance;
  r.param("symbol", div.name()).param("alpha", alpha);
  r.fit("hormander_max_spread", spread);
  r.fit("cz_slope", cz.fitted_value("slope")).fit("cz_max_over_min", cz.fitted_value("max_over_min"));
  r.measure("hormander_check verdict is fail", h.verdict == Verdict::fail ? 1.0 : 0.0);
  r.measure("cz_hormander_check verdict is fail", cz.verdict == Verdict::fail ? 1.0 : 0.0);
  const bool detected = h.verdict == Verdict::fail && spread >= 10.0 && cz.verdict == Verdict::fail && !cz_flat;
  r.note(std::string("Hormander profile: ") + to_string(h.verdict) + ", kernel condition: " + to_string(cz.verdict));
  r.verdict = detected ? Verdict::pass : Verdict::fail;
  return r;
}

void apply_resolution_check(EstimateReport& coarse, const EstimateReport& fine, double tolerance) {
  static const char* const residual_suffixes[] = {"_residual", "_error", "_discrepancy", "_violation",
                                                   "_excess",   "_share", "_change"};
  auto is_residual = [](const std::string& key) {
    for (const char* suffix : residual_suffixes) {
      const std::string s(suffix);
      if (key.size() >= s.size() && key.compare(key.size() - s.size(), s.size(), s) == 0) return true;
    }
    return false;
  };
  for (const auto& [key, a] : coarse.fitted) {
    if (!fine.has_fitted(key) || is_residual(key)) continue;
    const double b = fine.fitted_value(key);
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale < 1e-12 || !std::isfinite(scale)) continue;
    const double change = std::abs(a - b) / scale;
    if (change > tolerance && coarse.verdict == Verdict::pass) {
      coarse.verdict = Verdict::inconclusive;
      coarse.note("fitted constant " + key + " moved by " + fmt(change) + " at doubled resolution");
    }
  }
}

}  // namespace hml
