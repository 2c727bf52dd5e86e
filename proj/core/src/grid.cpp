#include "hml/grid.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hml/log.hpp"
#include "hml/parallel.hpp"
#include "hml/quadrature.hpp"

namespace hml {

// ---------------------------------------------------------------- AxisGrid

AxisGrid::AxisGrid(double alpha, double R, std::size_t n, std::size_t order, std::size_t grading)
    : alpha_(alpha), R_(R), order_(order), grading_(grading) {
  if (!(alpha > -0.5) || !std::isfinite(alpha)) throw std::invalid_argument("AxisGrid: alpha must be > -1/2");
  if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("AxisGrid: R must be positive");
  if (order < 2) throw std::invalid_argument("AxisGrid: order must be at least 2");
  if (grading < 1) throw std::invalid_argument("AxisGrid: grading must be at least 1");
  if (n == 0 || n % order != 0)
    throw std::invalid_argument("AxisGrid: n must be a positive multiple of the panel order");
  const std::size_t panels = n / order;
  if (panels < grading) throw std::invalid_argument("AxisGrid: too few panels for the requested grading");

  const std::size_t uniform = panels - grading + 1;
  const double h = R / static_cast<double>(uniform);
  edges_.push_back(0.0);
  for (std::size_t g = grading; g-- > 1;) edges_.push_back(h * std::ldexp(1.0, -static_cast<int>(g)));
  for (std::size_t u = 1; u <= uniform; ++u) edges_.push_back(u == uniform ? R : h * static_cast<double>(u));

  const double beta = 2.0 * alpha;
  const QuadratureRule gl = gauss_legendre(order);
  nodes_.reserve(n);
  weights_.reserve(n);
  for (std::size_t p = 0; p + 1 < edges_.size(); ++p) {
    const double a = edges_[p], b = edges_[p + 1];
    if (p == 0) {
      const QuadratureRule gj = gauss_jacobi_origin(order, beta, b);
      nodes_.insert(nodes_.end(), gj.nodes.begin(), gj.nodes.end());
      weights_.insert(weights_.end(), gj.weights.begin(), gj.weights.end());
    } else {
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (std::size_t i = 0; i < order; ++i) {
        const double x = mid + half * gl.nodes[i];
        nodes_.push_back(x);
        weights_.push_back(gl.weights[i] * half * std::pow(x, beta));
      }
    }
  }

  bary_.resize(n);
  for (std::size_t p = 0; p < panels; ++p) {
    const double* x = nodes_.data() + p * order;
    // Scale differences by the panel width to keep the products in range.
    const double scale = 4.0 / (edges_[p + 1] - edges_[p]);
    for (std::size_t i = 0; i < order; ++i) {
      double prod = 1.0;
      for (std::size_t k = 0; k < order; ++k)
        if (k != i) prod *= (x[i] - x[k]) * scale;
      bary_[p * order + i] = 1.0 / prod;
    }
  }

  // Moments int_a^b x^{beta+m} dx, m = 0 .. 2*order-1.  Gauss-Jacobi is exact
  // for all of them; on the graded Gauss-Legendre panels x^beta is smooth
  // and the same degree range is resolved to round-off.
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = edges_[p], b = edges_[p + 1];
    for (std::size_t m = 0; m < 2 * order; ++m) {
      const double e = beta + static_cast<double>(m) + 1.0;
      // Normalize by b^e so every moment is O(1).
      const double exact = (1.0 - std::pow(a / b, e)) / e;
      double approx = 0.0;
      for (std::size_t i = 0; i < order; ++i) {
        const double x = nodes_[p * order + i] / b;
        approx += weights_[p * order + i] / std::pow(b, beta + 1.0) * std::pow(x, static_cast<double>(m));
      }
      self_test_error_ = std::max(self_test_error_, std::abs(approx - exact) / exact);
    }
  }
  if (self_test_error_ > 1e-12) {
    std::ostringstream msg;
    msg << "AxisGrid: quadrature self-test failed (relative moment error " << self_test_error_ << ")";
    throw std::runtime_error(msg.str());
  }
}

double AxisGrid::max_panel_width() const {
  double w = 0.0;
  for (std::size_t p = 0; p + 1 < edges_.size(); ++p) w = std::max(w, edges_[p + 1] - edges_[p]);
  return w;
}

std::size_t AxisGrid::panel_of(double z) const {
  auto it = std::upper_bound(edges_.begin(), edges_.end(), z);
  std::size_t p = static_cast<std::size_t>(it - edges_.begin());
  p = p == 0 ? 0 : p - 1;
  return std::min(p, panel_count() - 1);
}

std::size_t AxisGrid::interpolation_row(double z, std::span<double> coeffs) const {
  const std::size_t p = panel_of(z);
  const std::size_t first = p * order_;
  const double* x = nodes_.data() + first;
  const double* w = bary_.data() + first;
  for (std::size_t i = 0; i < order_; ++i) {
    if (z == x[i]) {
      std::fill(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(order_), 0.0);
      coeffs[i] = 1.0;
      return first;
    }
  }
  double denom = 0.0;
  for (std::size_t i = 0; i < order_; ++i) {
    coeffs[i] = w[i] / (z - x[i]);
    denom += coeffs[i];
  }
  for (std::size_t i = 0; i < order_; ++i) coeffs[i] /= denom;
  return first;
}

std::vector<double> AxisGrid::interpolation_matrix(std::span<const double> points) const {
  const std::size_t n = size();
  std::vector<double> m(points.size() * n, 0.0);
  std::vector<double> c(order_);
  for (std::size_t r = 0; r < points.size(); ++r) {
    const double z = points[r];
    if (!(z >= 0.0) || z > R_) continue;
    const std::size_t first = interpolation_row(z, c);
    for (std::size_t i = 0; i < order_; ++i) m[r * n + first + i] = c[i];
  }
  return m;
}

bool AxisGrid::operator==(const AxisGrid& o) const {
  return alpha_ == o.alpha_ && R_ == o.R_ && order_ == o.order_ && grading_ == o.grading_ &&
         nodes_.size() == o.nodes_.size();
}

// -------------------------------------------------------------------- Grid

Grid::Grid(MultiIndex alpha, std::vector<AxisGrid> axes) : alpha_(std::move(alpha)), axes_(std::move(axes)) {
  if (axes_.size() != alpha_.dims()) throw std::invalid_argument("Grid: axis count must match alpha");
  size_ = 1;
  for (std::size_t k = 0; k < axes_.size(); ++k) {
    if (axes_[k].alpha() != alpha_[k]) throw std::invalid_argument("Grid: axis alpha mismatch");
    size_ *= axes_[k].size();
  }
}

std::shared_ptr<const Grid> Grid::make(const MultiIndex& alpha, double R, std::size_t n, std::size_t order,
                                       std::size_t grading) {
  std::vector<AxisGrid> axes;
  for (std::size_t k = 0; k < alpha.dims(); ++k) axes.emplace_back(alpha[k], R, n, order, grading);
  return std::make_shared<const Grid>(alpha, std::move(axes));
}

std::vector<std::size_t> Grid::shape() const {
  std::vector<std::size_t> s;
  for (const auto& a : axes_) s.push_back(a.size());
  return s;
}

void Grid::unravel(std::size_t flat, std::span<std::size_t> idx) const {
  for (std::size_t k = axes_.size(); k-- > 0;) {
    idx[k] = flat % axes_[k].size();
    flat /= axes_[k].size();
  }
}

Point Grid::node(std::size_t flat) const {
  Point x(axes_.size());
  for (std::size_t k = axes_.size(); k-- > 0;) {
    x[k] = axes_[k].nodes()[flat % axes_[k].size()];
    flat /= axes_[k].size();
  }
  return x;
}

double Grid::weight(std::size_t flat) const {
  double w = 1.0;
  for (std::size_t k = axes_.size(); k-- > 0;) {
    w *= axes_[k].weights()[flat % axes_[k].size()];
    flat /= axes_[k].size();
  }
  return w;
}

double Grid::max_R() const {
  double r = 0.0;
  for (const auto& a : axes_) r = std::max(r, a.R());
  return r;
}

bool Grid::operator==(const Grid& o) const { return alpha_ == o.alpha_ && axes_ == o.axes_; }

// ------------------------------------------------------------ GridFunction

double polynomial_weight(std::span<const double> x) { return 1.0 + euclidean_norm(x); }

GridFunction::GridFunction(std::shared_ptr<const Grid> grid) : grid_(std::move(grid)) {
  if (!grid_) throw std::invalid_argument("GridFunction: null grid");
  values_.assign(grid_->size(), cplx(0.0, 0.0));
}

GridFunction::GridFunction(std::shared_ptr<const Grid> grid, std::vector<cplx> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("GridFunction: null grid");
  if (values_.size() != grid_->size()) throw std::invalid_argument("GridFunction: value count does not match grid");
}

GridFunction GridFunction::sample(std::shared_ptr<const Grid> grid,
                                  const std::function<cplx(std::span<const double>)>& f) {
  GridFunction g(std::move(grid));
  const Grid& gr = g.grid();
  parallel_for(g.size(), [&](std::size_t i) {
    const Point x = gr.node(i);
    g.values_[i] = f(x);
  });
  return g;
}

GridFunction GridFunction::sample_real(std::shared_ptr<const Grid> grid,
                                       const std::function<double(std::span<const double>)>& f) {
  return sample(std::move(grid), [&](std::span<const double> x) { return cplx(f(x), 0.0); });
}

bool GridFunction::same_grid(const GridFunction& o) const { return grid_ == o.grid_ || *grid_ == *o.grid_; }

GridFunction& GridFunction::operator+=(const GridFunction& o) {
  if (!same_grid(o)) throw std::invalid_argument("GridFunction: grid mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
  if (!same_grid(o)) throw std::invalid_argument("GridFunction: grid mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(cplx s) {
  for (auto& v : values_) v *= s;
  return *this;
}

GridFunction& GridFunction::operator*=(const GridFunction& o) {
  if (!same_grid(o)) throw std::invalid_argument("GridFunction: grid mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] *= o.values_[i];
  return *this;
}

GridFunction GridFunction::abs() const {
  GridFunction r(grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] = std::abs(values_[i]);
  return r;
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

double GridFunction::min_real() const {
  double m = values_.empty() ? 0.0 : values_[0].real();
  for (const auto& v : values_) m = std::min(m, v.real());
  return m;
}

double GridFunction::max_real() const {
  double m = values_.empty() ? 0.0 : values_[0].real();
  for (const auto& v : values_) m = std::max(m, v.real());
  return m;
}

cplx GridFunction::evaluate(std::span<const double> x) const {
  const Grid& g = *grid_;
  const std::size_t d = g.dims();
  if (x.size() != d) throw std::invalid_argument("GridFunction::evaluate: dimension mismatch");
  std::vector<std::vector<double>> coeffs(d);
  std::vector<std::size_t> first(d);
  for (std::size_t k = 0; k < d; ++k) {
    const AxisGrid& a = g.axis(k);
    if (!(x[k] >= 0.0) || x[k] > a.R()) return 0.0;
    coeffs[k].resize(a.order());
    first[k] = a.interpolation_row(x[k], coeffs[k]);
  }
  // Sum over the local order^d stencil.
  std::vector<std::size_t> it(d, 0);
  cplx acc = 0.0;
  while (true) {
    std::size_t flat = 0;
    double c = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
      flat = flat * g.axis(k).size() + first[k] + it[k];
      c *= coeffs[k][it[k]];
    }
    acc += c * values_[flat];
    std::size_t k = d;
    while (k-- > 0) {
      if (++it[k] < g.axis(k).order()) break;
      it[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return acc;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(GridFunction a, cplx s) { return a *= s; }
GridFunction operator*(cplx s, GridFunction a) { return a *= s; }

// -------------------------------------------------------------- integrals

cplx integrate(const GridFunction& f) {
  const Grid& g = f.grid();
  cplx acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += g.weight(i) * f[i];
  return acc;
}

double norm(const GridFunction& f, double p, const WeightSpec& weight) {
  if (!(p >= 1.0)) throw std::invalid_argument("norm: p must be >= 1");
  if (!std::isfinite(weight.s) || !std::isfinite(weight.delta) || weight.s < 0.0 || weight.delta < 0.0)
    throw std::invalid_argument("norm: weight exponents must be finite and nonnegative");
  const Grid& g = f.grid();
  const bool weighted = weight.s != 0.0 || weight.delta != 0.0;
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      double v = std::abs(f[i]);
      if (weight.s != 0.0) v *= std::pow(polynomial_weight(g.node(i)), weight.s);
      m = std::max(m, v);
    }
    return m;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double v = std::abs(f[i]);
    double w = g.weight(i);
    if (weighted) {
      const double pw = polynomial_weight(g.node(i));
      v *= std::pow(pw, weight.s);
      w *= std::pow(pw, weight.delta);
    }
    acc += w * (p == 1.0 ? v : p == 2.0 ? v * v : std::pow(v, p));
  }
  return p == 1.0 ? acc : p == 2.0 ? std::sqrt(acc) : std::pow(acc, 1.0 / p);
}

namespace {

double interval_measure(double alpha, double a, double b) {
  const double e = 2.0 * alpha + 1.0;
  a = std::max(a, 0.0);
  if (b <= a) return 0.0;
  return (std::pow(b, e) - std::pow(a, e)) / e;
}

// nu over the ball restricted to axes [k, d).
double ball_measure_from(const MultiIndex& alpha, std::span<const double> c, double r, std::size_t k) {
  if (r <= 0.0) return 0.0;
  if (k + 1 == alpha.dims()) return interval_measure(alpha[k], c[k] - r, c[k] + r);
  // x_k = c_k + r sin(theta); chord radius r cos(theta).
  const double beta = 2.0 * alpha[k];
  const double pi2 = 0.5 * std::numbers::pi;
  const bool clipped = c[k] < r;
  const double theta0 = clipped ? std::asin(-c[k] / r) : -pi2;
  const std::size_t q = 24;
  double total = 0.0;
  auto integrand = [&](double theta) {
    const double x = c[k] + r * std::sin(theta);
    const double rr = r * std::cos(theta);
    return std::pow(std::max(x, 0.0), beta) * rr * ball_measure_from(alpha, c, rr, k + 1);
  };
  // Grade toward theta0 when the ball is cut by the face x_k = 0.
  std::vector<double> edges;
  const double span = pi2 - theta0;
  if (clipped) {
    edges.push_back(theta0);
    for (int g = 10; g >= 1; --g) edges.push_back(theta0 + span * std::ldexp(1.0, -g));
    for (int u = 1; u <= 3; ++u) edges.push_back(theta0 + span * (0.5 + u / 6.0));
  } else {
    for (int u = 0; u <= 8; ++u) edges.push_back(theta0 + span * u / 8.0);
  }
  const QuadratureRule gl = gauss_legendre(q);
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double a = edges[p], b = edges[p + 1];
    if (clipped && p == 0) {
      // x_k^{beta} ~ (theta - theta0)^{beta}: integrate that factor exactly.
      const QuadratureRule gj = gauss_jacobi_origin(q, beta, b - a);
      for (std::size_t i = 0; i < q; ++i) {
        const double theta = a + gj.nodes[i];
        const double x = c[k] + r * std::sin(theta);
        const double rr = r * std::cos(theta);
        const double ratio = x > 0.0 ? std::pow(x / gj.nodes[i], beta) : std::pow(r * std::cos(theta0), beta);
        total += gj.weights[i] * ratio * rr * ball_measure_from(alpha, c, rr, k + 1);
      }
    } else {
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (std::size_t i = 0; i < q; ++i) total += gl.weights[i] * half * integrand(mid + half * gl.nodes[i]);
    }
  }
  return total;
}

}  // namespace

double ball_measure(const MultiIndex& alpha, std::span<const double> center, double r) {
  if (center.size() != alpha.dims()) throw std::invalid_argument("ball_measure: dimension mismatch");
  if (!(r > 0.0)) throw std::invalid_argument("ball_measure: r must be positive");
  return ball_measure_from(alpha, center, r, 0);
}

// ---------------------------------------------------------------- dilation

std::vector<cplx> apply_axis_maps(const std::vector<cplx>& values, const std::vector<std::size_t>& in_shape,
                                  const std::vector<const std::vector<double>*>& maps,
                                  const std::vector<std::size_t>& out_shape) {
  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const std::size_t d = in_shape.size();
  std::vector<std::size_t> shape = in_shape;
  std::vector<cplx> cur = values;
  for (std::size_t k = 0; k < d; ++k) {
    if (!maps[k]) continue;
    const std::size_t nin = shape[k], nout = out_shape[k];
    std::size_t outer = 1, inner = 1;
    for (std::size_t a = 0; a < k; ++a) outer *= shape[a];
    for (std::size_t a = k + 1; a < d; ++a) inner *= shape[a];
    std::vector<cplx> next(outer * nout * inner);
    Eigen::Map<const RowMat> M(maps[k]->data(), static_cast<Eigen::Index>(nout), static_cast<Eigen::Index>(nin));
    const auto cols = static_cast<Eigen::Index>(2 * inner);
    parallel_for(outer, [&](std::size_t o) {
      Eigen::Map<const RowMat> src(reinterpret_cast<const double*>(cur.data() + o * nin * inner),
                                   static_cast<Eigen::Index>(nin), cols);
      Eigen::Map<RowMat> dst(reinterpret_cast<double*>(next.data() + o * nout * inner),
                             static_cast<Eigen::Index>(nout), cols);
      dst.noalias() = M * src;
    });
    cur = std::move(next);
    shape[k] = nout;
  }
  return cur;
}

GridFunction dilate(const GridFunction& f, double t, double mass_tolerance) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("dilate: t must be positive");
  if (t == 1.0) return f;
  const Grid& g = f.grid();
  std::vector<std::vector<double>> mats(g.dims());
  std::vector<const std::vector<double>*> maps(g.dims());
  for (std::size_t k = 0; k < g.dims(); ++k) {
    std::vector<double> pts(g.axis(k).nodes());
    for (double& p : pts) p *= t;
    mats[k] = g.axis(k).interpolation_matrix(pts);
    maps[k] = &mats[k];
  }
  std::vector<cplx> v = apply_axis_maps(f.values(), g.shape(), maps, g.shape());
  const double scale = std::pow(t, g.alpha().homogeneous_dimension());
  for (auto& z : v) z *= scale;
  GridFunction out(f.grid_ptr(), std::move(v));
  const double before = norm(f, 1.0);
  if (before > 0.0) {
    const double deficit = (before - norm(out, 1.0)) / before;
    if (deficit > mass_tolerance) {
      std::ostringstream msg;
      msg << "dilate: relative L1 mass " << deficit << " lost beyond the truncation radius (t=" << t << ")";
      warn(msg.str());
    }
  }
  return out;
}

// ---------------------------------------------------------------------- I/O

void write_csv(const GridFunction& f, std::ostream& out) {
  const Grid& g = f.grid();
  out << std::setprecision(17);
  for (std::size_t k = 0; k < g.dims(); ++k) out << 'x' << (k + 1) << ',';
  out << "re,im\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Point x = g.node(i);
    for (double c : x) out << c << ',';
    out << f[i].real() << ',' << f[i].imag() << '\n';
  }
}

void write_csv(const GridFunction& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  write_csv(f, out);
}

GridFunction read_csv(std::shared_ptr<const Grid> grid, std::istream& in) {
  GridFunction f(grid);
  const std::size_t d = grid->dims();
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_csv: missing header");
  std::size_t i = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (i >= f.size()) throw std::runtime_error("read_csv: more rows than grid nodes");
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> cols;
    while (std::getline(ss, cell, ',')) cols.push_back(std::stod(cell));
    if (cols.size() != d + 2) throw std::runtime_error("read_csv: wrong column count");
    const Point x = grid->node(i);
    for (std::size_t k = 0; k < d; ++k)
      if (std::abs(cols[k] - x[k]) > 1e-12 * std::max(1.0, std::abs(x[k])))
        throw std::runtime_error("read_csv: node coordinates do not match the grid");
    f[i] = cplx(cols[d], cols[d + 1]);
    ++i;
  }
  if (i != f.size()) throw std::runtime_error("read_csv: fewer rows than grid nodes");
  return f;
}

GridFunction read_csv(std::shared_ptr<const Grid> grid, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_csv: cannot open " + path);
  return read_csv(std::move(grid), in);
}

namespace {

constexpr char kMagic[6] = {'H', 'M', 'L', 'G', 'F', '1'};

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("read_binary: truncated input");
  return v;
}

}  // namespace

void write_binary(const GridFunction& f, std::ostream& out) {
  const Grid& g = f.grid();
  out.write(kMagic, sizeof kMagic);
  put<std::uint64_t>(out, g.dims());
  for (const auto& a : g.axes()) put<std::uint64_t>(out, a.size());
  for (const auto& a : g.axes()) put<double>(out, a.alpha());
  for (const auto& a : g.axes()) put<double>(out, a.R());
  for (const auto& a : g.axes()) put<std::uint64_t>(out, a.order());
  for (const auto& a : g.axes()) put<std::uint64_t>(out, a.grading());
  out.write(reinterpret_cast<const char*>(f.values().data()),
            static_cast<std::streamsize>(f.size() * sizeof(cplx)));
}

void write_binary(const GridFunction& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_binary: cannot open " + path);
  write_binary(f, out);
}

GridFunction read_binary(std::istream& in) {
  char magic[6];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) throw std::runtime_error("read_binary: bad magic");
  const auto d = static_cast<std::size_t>(get<std::uint64_t>(in));
  if (d == 0 || d > 16) throw std::runtime_error("read_binary: implausible dimension");
  std::vector<std::uint64_t> n(d), order(d), grading(d);
  std::vector<double> alpha(d), R(d);
  for (auto& v : n) v = get<std::uint64_t>(in);
  for (auto& v : alpha) v = get<double>(in);
  for (auto& v : R) v = get<double>(in);
  for (auto& v : order) v = get<std::uint64_t>(in);
  for (auto& v : grading) v = get<std::uint64_t>(in);
  std::vector<AxisGrid> axes;
  for (std::size_t k = 0; k < d; ++k) axes.emplace_back(alpha[k], R[k], n[k], order[k], grading[k]);
  auto grid = std::make_shared<const Grid>(MultiIndex(alpha), std::move(axes));
  std::vector<cplx> values(grid->size());
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(cplx)));
  if (!in) throw std::runtime_error("read_binary: truncated values");
  return GridFunction(grid, std::move(values));
}

GridFunction read_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_binary: cannot open " + path);
  return read_binary(in);
}

}  // namespace hml
