#include "vintage/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vintage/errors.hpp"

namespace vintage {

GridFunction::GridFunction(double s_bar, int n_cells, std::vector<double> values)
    : s_bar_(s_bar), n_cells_(n_cells), values_(std::move(values)) {
  if (!(s_bar > 0.0) || !std::isfinite(s_bar)) {
    throw ValidationError(ViolationKind::NonPositiveRate,
                          "grid end s_bar must be finite and > 0");
  }
  if (n_cells < 2) {
    throw ValidationError(ViolationKind::GridMismatch, "grid needs at least 2 cells");
  }
  if (values_.size() != static_cast<std::size_t>(n_cells) + 1) {
    throw ValidationError(ViolationKind::GridMismatch,
                          "expected " + std::to_string(n_cells + 1) + " samples, got " +
                              std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw ValidationError(ViolationKind::NonFiniteValue, "grid sample is not finite");
    }
  }
}

GridFunction GridFunction::zeros(double s_bar, int n_cells) {
  return constant(s_bar, n_cells, 0.0);
}

GridFunction GridFunction::constant(double s_bar, int n_cells, double value) {
  return GridFunction(s_bar, n_cells,
                      std::vector<double>(static_cast<std::size_t>(n_cells) + 1, value));
}

double GridFunction::at(double s) const {
  if (values_.empty() || s < 0.0 || s > s_bar_) return 0.0;
  const double p = s / h();
  auto j = static_cast<std::size_t>(std::floor(p));
  if (j >= static_cast<std::size_t>(n_cells_)) return values_.back();
  const double theta = p - static_cast<double>(j);
  return (1.0 - theta) * values_[j] + theta * values_[j + 1];
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

GridFunction& GridFunction::operator+=(const GridFunction& rhs) {
  require_same_grid(*this, rhs, "addition");
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += rhs.values_[j];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& rhs) {
  require_same_grid(*this, rhs, "subtraction");
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= rhs.values_[j];
  return *this;
}

GridFunction& GridFunction::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

GridFunction operator+(GridFunction lhs, const GridFunction& rhs) { return lhs += rhs; }
GridFunction operator-(GridFunction lhs, const GridFunction& rhs) { return lhs -= rhs; }
GridFunction operator*(double c, GridFunction f) { return f *= c; }
GridFunction operator*(GridFunction f, double c) { return f *= c; }
GridFunction operator-(GridFunction f) { return f *= -1.0; }

GridFunction pointwise_product(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a, b, "pointwise product");
  GridFunction out = a;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] *= b[j];
  return out;
}

GridFunction pointwise_quotient(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a, b, "pointwise quotient");
  GridFunction out = a;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] /= b[j];
  return out;
}

void require_same_grid(const GridFunction& a, const GridFunction& b, const char* what) {
  if (!a.same_grid(b)) {
    throw ValidationError(ViolationKind::GridMismatch,
                          std::string("grids differ in ") + what + " (" +
                              std::to_string(a.n_cells()) + " vs " +
                              std::to_string(b.n_cells()) + " cells)");
  }
}

GridFunction resample(const GridFunction& f, int n_cells) {
  if (n_cells == f.n_cells()) return f;
  return GridFunction::sample(f.s_bar(), n_cells, [&f](double s) {
    return f.at(std::min(s, f.s_bar()));
  });
}

}  // namespace vintage
