#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "vintage/model.hpp"

namespace testing {

using vintage::GridFunction;
using vintage::ModelParams;
using vintage::RevenueSpec;

// mu = lambda = s_bar = 1, beta = 1/2, q = 0, R(Q) = -Q^2/2 + Q, given alpha.
inline ModelParams unit_model(GridFunction alpha, RevenueSpec revenue = RevenueSpec::quadratic(0.5, 1.0)) {
  const double s_bar = alpha.s_bar();
  const int n = alpha.n_cells();
  ModelParams p;
  p.mu = 1.0;
  p.lambda = 1.0;
  p.s_bar = s_bar;
  p.cost.beta0 = 0.5;
  p.cost.beta1 = GridFunction::constant(s_bar, n, 0.5);
  p.cost.q0 = 0.0;
  p.cost.q1 = GridFunction::zeros(s_bar, n);
  p.alpha = std::move(alpha);
  p.revenue = std::move(revenue);
  return p;
}

// alpha = 1
inline ModelParams model_a(int n = 1000) { return unit_model(GridFunction::constant(1.0, n, 1.0)); }

// alpha(s) = 1 - s
inline ModelParams model_b(int n = 1000) {
  return unit_model(GridFunction::sample(1.0, n, [](double s) { return 1.0 - s; }));
}

// Exact MODEL-A constants, from the closed-form antiderivatives.
inline double model_a_c1() {
  const double e = std::exp(1.0);
  return (-3.0 * e + 4.0 + 5.0 * e * e * e) * std::exp(-3.0) / 12.0;
}

inline double model_a_w1(double s) {
  const double alpha_bar0 = (1.0 - std::exp(-2.0)) / 2.0;
  return alpha_bar0 * std::exp(-s) + 0.5 * (1.0 - std::exp(-s)) -
         std::exp(-2.0) / 6.0 * (std::exp(2.0 * s) - std::exp(-s));
}

// Random valid model. alpha vanishes at s_bar when vanishing_alpha is set.
// family: 0 quadratic, 1 log, 2 power.
inline ModelParams random_model(std::mt19937_64& rng, int family, int n = 400,
                                bool vanishing_alpha = true) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double s_bar = 0.5 + 2.5 * u(rng);
  const double amp = 0.2 + 1.8 * u(rng);
  const double bend = 0.5 + 1.5 * u(rng);
  const double tilt = u(rng);
  const double b1 = 0.2 + 1.8 * u(rng);
  const double b1_slope = u(rng);
  const double q1a = -0.3 + 0.6 * u(rng);
  const double q1b = -0.2 + 0.4 * u(rng);

  ModelParams p;
  p.mu = 0.2 + 2.8 * u(rng);
  p.lambda = 0.2 + 2.8 * u(rng);
  p.s_bar = s_bar;
  p.alpha = GridFunction::sample(s_bar, n, [&](double s) {
    const double r = s / s_bar;
    const double shape = vanishing_alpha ? std::pow(std::max(0.0, 1.0 - r), bend) : 1.0 - 0.5 * r;
    return amp * shape * (1.0 + tilt * r);
  });
  p.cost.beta0 = 0.2 + 1.8 * u(rng);
  p.cost.beta1 = GridFunction::sample(s_bar, n, [&](double s) { return b1 + b1_slope * s; });
  p.cost.q0 = -0.5 + u(rng);
  p.cost.q1 = GridFunction::sample(s_bar, n, [&](double s) { return q1a + q1b * s; });
  switch (family % 3) {
    case 0: p.revenue = RevenueSpec::quadratic(0.1 + 1.9 * u(rng), 0.2 + 1.8 * u(rng)); break;
    case 1: p.revenue = RevenueSpec::log(); break;
    default: p.revenue = RevenueSpec::power(0.1 + 0.8 * u(rng)); break;
  }
  return p;
}

}  // namespace testing
