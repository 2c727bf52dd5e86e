#include "hml/multi_index.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hml {

MultiIndex::MultiIndex(std::vector<double> alpha) : alpha_(std::move(alpha)) {
  if (alpha_.empty()) throw std::invalid_argument("MultiIndex: at least one axis is required");
  for (double a : alpha_) {
    if (!std::isfinite(a) || !(a > -0.5))
      throw std::invalid_argument("MultiIndex: every alpha_k must be finite and > -1/2, got " +
                                  std::to_string(a));
    q_ += 2.0 * a + 1.0;
  }
}

MultiIndex MultiIndex::uniform(std::size_t dims, double alpha) {
  return MultiIndex(std::vector<double>(dims, alpha));
}

double euclidean_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double euclidean_distance(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += (x[k] - y[k]) * (x[k] - y[k]);
  return std::sqrt(s);
}

}  // namespace hml
