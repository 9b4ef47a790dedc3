#include "vintage/operators.hpp"

#include <algorithm>
#include <cmath>

namespace vintage {

double integrate(const GridFunction& f) {
  const auto v = f.values();
  double sum = 0.5 * (v.front() + v.back());
  for (std::size_t j = 1; j + 1 < v.size(); ++j) sum += v[j];
  return sum * f.h();
}

double inner(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g, "inner product");
  const std::size_t n = f.size();
  double sum = 0.5 * (f[0] * g[0] + f[n - 1] * g[n - 1]);
  for (std::size_t j = 1; j + 1 < n; ++j) sum += f[j] * g[j];
  return sum * f.h();
}

double l2_norm(const GridFunction& f) { return std::sqrt(inner(f, f)); }

double pairing(const ControlPair& p, const ControlPair& u) {
  return p.u0 * u.u0 + inner(p.u1, u.u1);
}

double control_norm(const ControlPair& u) { return std::sqrt(pairing(u, u)); }

GridFunction semigroup_apply(const GridFunction& x, double t, double mu) {
  GridFunction out = GridFunction::zeros(x.s_bar(), x.n_cells());
  const double shift = t / x.h();
  // Nilpotent: everything has aged past s_bar.
  if (shift >= x.n_cells() - 1e-9) return out;
  const double decay = std::exp(-mu * t);
  for (std::size_t j = 0; j < x.size(); ++j) {
    double p = static_cast<double>(j) - shift;
    // Shifts by whole cells land on nodes up to a rounding error.
    if (std::abs(p - std::round(p)) < 1e-9) p = std::round(p);
    if (p < 0.0) continue;
    const auto i = static_cast<std::size_t>(p);
    const double frac = p - static_cast<double>(i);
    const double v = frac == 0.0 ? x[i] : (1.0 - frac) * x[i] + frac * x[i + 1];
    out[j] = decay * v;
  }
  return out;
}

namespace detail {

CellWeights exponential_cell_weights(double kappa, double h) {
  const double x = kappa * h;
  double phi1;  // int_0^1 e^{-x u} du
  double phi2;  // int_0^1 e^{-x u} u du
  if (std::abs(x) < 0.5) {
    phi1 = 0.0;
    phi2 = 0.0;
    double term = 1.0;  // (-x)^k / k!
    for (int k = 0; k < 30; ++k) {
      phi1 += term / (k + 1);
      phi2 += term / (k + 2);
      term *= -x / (k + 1);
    }
  } else {
    const double one_minus_decay = -std::expm1(-x);
    phi1 = one_minus_decay / x;
    phi2 = (one_minus_decay - x * std::exp(-x)) / (x * x);
  }
  return {h * (phi1 - phi2), h * phi2, std::exp(-x)};
}

GridFunction forward_convolution(const GridFunction& f, double kappa) {
  const auto w = exponential_cell_weights(kappa, f.h());
  GridFunction out = GridFunction::zeros(f.s_bar(), f.n_cells());
  for (std::size_t j = 1; j < f.size(); ++j) {
    out[j] = w.decay * out[j - 1] + w.near * f[j] + w.far * f[j - 1];
  }
  return out;
}

GridFunction backward_convolution(const GridFunction& f, double kappa) {
  const auto w = exponential_cell_weights(kappa, f.h());
  GridFunction out = GridFunction::zeros(f.s_bar(), f.n_cells());
  for (std::size_t j = f.size() - 1; j-- > 0;) {
    out[j] = w.decay * out[j + 1] + w.near * f[j] + w.far * f[j + 1];
  }
  return out;
}

}  // namespace detail

GridFunction a_inverse_apply(const GridFunction& f, double mu) {
  return -detail::forward_convolution(f, mu);
}

GridFunction a_inverse_delta(double s_bar, int n_cells, double mu) {
  return GridFunction::sample(s_bar, n_cells, [mu](double s) { return -std::exp(-mu * s); });
}

GridFunction adjoint_inverse_apply(const GridFunction& f, double mu) {
  return -detail::backward_convolution(f, mu);
}

GridFunction resolvent_apply(const GridFunction& f, double mu, double lambda) {
  return detail::backward_convolution(f, mu + lambda);
}

ControlPair b_star_apply(const GridFunction& v) { return {v.front(), v}; }

ControlPair multiplier_half_beta(const ControlPair& u, double beta0, const GridFunction& beta1) {
  return {u.u0 / (2.0 * beta0), pointwise_quotient(u.u1, 2.0 * beta1)};
}

double multiplier_half_beta_norm(double beta0, const GridFunction& beta1) {
  const auto b = beta1.values();
  const double min_beta1 = *std::min_element(b.begin(), b.end());
  return std::max(1.0 / (2.0 * beta0), 1.0 / (2.0 * min_beta1));
}

double conjugate_cost(const ControlPair& u, const QuadraticCost& c) {
  const double d0 = u.u0 - c.q0;
  GridFunction d1 = u.u1 - c.q1;
  GridFunction integrand = pointwise_quotient(pointwise_product(d1, d1), 4.0 * c.beta1);
  return d0 * d0 / (4.0 * c.beta0) + integrate(integrand);
}

double cost(const ControlPair& u, const QuadraticCost& c) {
  GridFunction integrand = pointwise_product(u.u1, pointwise_product(c.beta1, u.u1) + c.q1);
  return c.beta0 * u.u0 * u.u0 + c.q0 * u.u0 + integrate(integrand);
}

}  // namespace vintage
