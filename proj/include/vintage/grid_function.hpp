#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vintage {

/// A real function of capital age sampled at the nodes s_j = j*h of a
/// uniform grid on [0, s_bar], h = s_bar / n_cells.
class GridFunction {
 public:
  GridFunction() = default;
  /// Throws ValidationError when n_cells < 2, s_bar is not a positive finite
  /// number, the sample count is not n_cells + 1, or a sample is not finite.
  GridFunction(double s_bar, int n_cells, std::vector<double> values);

  static GridFunction zeros(double s_bar, int n_cells);
  static GridFunction constant(double s_bar, int n_cells, double value);

  template <typename F>
  static GridFunction sample(double s_bar, int n_cells, F&& f) {
    std::vector<double> v(static_cast<std::size_t>(n_cells) + 1);
    const double h = s_bar / n_cells;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(static_cast<double>(j) * h);
    return GridFunction(s_bar, n_cells, std::move(v));
  }

  double s_bar() const { return s_bar_; }
  int n_cells() const { return n_cells_; }
  double h() const { return s_bar_ / n_cells_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  double node(std::size_t j) const { return static_cast<double>(j) * h(); }

  std::span<const double> values() const { return values_; }
  double operator[](std::size_t j) const { return values_[j]; }
  double& operator[](std::size_t j) { return values_[j]; }
  double front() const { return values_.front(); }
  double back() const { return values_.back(); }

  /// Linear interpolation between nodes; zero outside [0, s_bar].
  double at(double s) const;

  bool same_grid(const GridFunction& other) const {
    return n_cells_ == other.n_cells_ && s_bar_ == other.s_bar_;
  }

  template <typename F>
  GridFunction map(F&& f) const {
    GridFunction out = *this;
    for (double& v : out.values_) v = f(v);
    return out;
  }

  double max_abs() const;

  GridFunction& operator+=(const GridFunction& rhs);
  GridFunction& operator-=(const GridFunction& rhs);
  GridFunction& operator*=(double c);

 private:
  double s_bar_ = 0.0;
  int n_cells_ = 0;
  std::vector<double> values_;
};

GridFunction operator+(GridFunction lhs, const GridFunction& rhs);
GridFunction operator-(GridFunction lhs, const GridFunction& rhs);
GridFunction operator*(double c, GridFunction f);
GridFunction operator*(GridFunction f, double c);
GridFunction operator-(GridFunction f);

/// Pointwise a(s)*b(s) and a(s)/b(s). Grids must match exactly.
GridFunction pointwise_product(const GridFunction& a, const GridFunction& b);
GridFunction pointwise_quotient(const GridFunction& a, const GridFunction& b);

/// Throws ValidationError(GridMismatch) unless both grids are identical.
void require_same_grid(const GridFunction& a, const GridFunction& b, const char* what);

/// Linear resampling onto another uniform grid over the same [0, s_bar].
GridFunction resample(const GridFunction& f, int n_cells);

}  // namespace vintage
