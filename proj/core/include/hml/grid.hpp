#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hml/multi_index.hpp"

namespace hml {

using cplx = std::complex<double>;

/// Composite Gauss rule for integrals  int_0^R f(x) x^{2 alpha} dx.
///
/// The interval is cut into n / order panels.  The leftmost uniform piece
/// is subdivided geometrically into `grading` panels that halve toward the
/// origin; the panel touching 0 uses Gauss-Jacobi nodes for the weight
/// x^{2 alpha}, every other panel uses Gauss-Legendre nodes with the weight
/// folded in.  Construction verifies the monomial moments of every panel.
class AxisGrid {
 public:
  AxisGrid(double alpha, double R, std::size_t n, std::size_t order = 16, std::size_t grading = 3);

  double alpha() const noexcept { return alpha_; }
  double R() const noexcept { return R_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t order() const noexcept { return order_; }
  std::size_t grading() const noexcept { return grading_; }
  std::size_t panel_count() const noexcept { return edges_.size() - 1; }

  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  /// Panel edges 0 = e_0 < e_1 < ... < e_P = R.
  const std::vector<double>& edges() const noexcept { return edges_; }
  double max_panel_width() const;

  /// Panel containing z (z in [0, R]); the last panel for z = R.
  std::size_t panel_of(double z) const;

  /// Barycentric Lagrange weights of the nodes of panel p against z.
  /// Writes `order()` coefficients; returns the index of the first node.
  std::size_t interpolation_row(double z, std::span<double> coeffs) const;

  /// Dense n x m matrix mapping nodal values to values at `points`
  /// (rows for points outside [0, R] are zero).
  std::vector<double> interpolation_matrix(std::span<const double> points) const;

  /// Largest relative moment error found by the construction self-test.
  double self_test_error() const noexcept { return self_test_error_; }

  bool operator==(const AxisGrid& other) const;

 private:
  double alpha_;
  double R_;
  std::size_t order_;
  std::size_t grading_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> edges_;
  std::vector<double> bary_;  // barycentric weights, panel-major
  double self_test_error_ = 0.0;
};

/// Tensor product of axis grids.  Values of a GridFunction are stored
/// row-major with the last axis varying fastest.
class Grid {
 public:
  Grid(MultiIndex alpha, std::vector<AxisGrid> axes);

  /// d identical axes built from (alpha_k, R, n).
  static std::shared_ptr<const Grid> make(const MultiIndex& alpha, double R, std::size_t n,
                                          std::size_t order = 16, std::size_t grading = 3);

  const MultiIndex& alpha() const noexcept { return alpha_; }
  std::size_t dims() const noexcept { return axes_.size(); }
  const AxisGrid& axis(std::size_t k) const { return axes_[k]; }
  const std::vector<AxisGrid>& axes() const noexcept { return axes_; }
  std::size_t size() const noexcept { return size_; }
  std::vector<std::size_t> shape() const;

  /// Multi-index of a flat position.
  void unravel(std::size_t flat, std::span<std::size_t> idx) const;
  Point node(std::size_t flat) const;
  double weight(std::size_t flat) const;
  /// Largest truncation radius over the axes.
  double max_R() const;

  bool operator==(const Grid& other) const;

 private:
  MultiIndex alpha_;
  std::vector<AxisGrid> axes_;
  std::size_t size_;
};

struct WeightSpec {
  double s = 0.0;
  double delta = 0.0;
};

/// w(x) = 1 + |x|.
double polynomial_weight(std::span<const double> x);

class GridFunction {
 public:
  explicit GridFunction(std::shared_ptr<const Grid> grid);
  GridFunction(std::shared_ptr<const Grid> grid, std::vector<cplx> values);

  static GridFunction sample(std::shared_ptr<const Grid> grid,
                             const std::function<cplx(std::span<const double>)>& f);
  static GridFunction sample_real(std::shared_ptr<const Grid> grid,
                                  const std::function<double(std::span<const double>)>& f);

  const Grid& grid() const noexcept { return *grid_; }
  const std::shared_ptr<const Grid>& grid_ptr() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::vector<cplx>& values() noexcept { return values_; }
  const std::vector<cplx>& values() const noexcept { return values_; }
  cplx& operator[](std::size_t i) { return values_[i]; }
  const cplx& operator[](std::size_t i) const { return values_[i]; }

  bool same_grid(const GridFunction& other) const;

  GridFunction& operator+=(const GridFunction& o);
  GridFunction& operator-=(const GridFunction& o);
  GridFunction& operator*=(cplx s);
  /// Pointwise product.
  GridFunction& operator*=(const GridFunction& o);

  GridFunction abs() const;
  double max_abs() const;
  double min_real() const;
  double max_real() const;

  /// Interpolated value at an arbitrary point (0 outside the truncated box).
  cplx evaluate(std::span<const double> x) const;

 private:
  std::shared_ptr<const Grid> grid_;
  std::vector<cplx> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(GridFunction a, cplx s);
GridFunction operator*(cplx s, GridFunction a);

/// Quadrature value of int f dnu over the truncated domain.
cplx integrate(const GridFunction& f);

/// ( int |f w^s|^p w^delta dnu )^{1/p}; p = inf gives max |f w^s|.
double norm(const GridFunction& f, double p, const WeightSpec& weight = {});

/// nu(B(center, r) cap X) for dnu = prod x_k^{2 alpha_k} dx_k.
double ball_measure(const MultiIndex& alpha, std::span<const double> center, double r);

/// f_t(x) = t^Q f(t x) resampled on the grid of f.  Warns when the mass
/// pushed beyond the truncation exceeds `mass_tolerance` (relative L1).
GridFunction dilate(const GridFunction& f, double t, double mass_tolerance = 1e-6);

/// Applies a per-axis linear map (row-major m_k x n_k matrices) to the
/// values of f.  The result lives on `target`, whose axis sizes are m_k.
std::vector<cplx> apply_axis_maps(const std::vector<cplx>& values, const std::vector<std::size_t>& in_shape,
                                  const std::vector<const std::vector<double>*>& maps,
                                  const std::vector<std::size_t>& out_shape);

void write_csv(const GridFunction& f, std::ostream& out);
void write_csv(const GridFunction& f, const std::string& path);
/// Reads values for an existing grid; node coordinates must match to 1e-12.
GridFunction read_csv(std::shared_ptr<const Grid> grid, std::istream& in);
GridFunction read_csv(std::shared_ptr<const Grid> grid, const std::string& path);

/// Binary layout: "HMLGF1", u64 d, u64 n_k (d), f64 alpha_k (d), f64 R_k (d),
/// u64 order_k (d), u64 grading_k (d), then 2 * size f64 values (re, im).
void write_binary(const GridFunction& f, std::ostream& out);
void write_binary(const GridFunction& f, const std::string& path);
/// Rebuilds the grid from the header.
GridFunction read_binary(std::istream& in);
GridFunction read_binary(const std::string& path);

}  // namespace hml
