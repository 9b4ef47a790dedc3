#pragma once

#include <vector>

#include "vintage/errors.hpp"
#include "vintage/grid_function.hpp"
#include "vintage/revenue.hpp"

namespace vintage {

/// Quadratic-linear investment cost
///   h0(u) = beta0 u0^2 + q0 u0 + int (beta1(s) u1(s)^2 + q1(s) u1(s)) ds.
struct QuadraticCost {
  double beta0 = 0.0;
  GridFunction beta1;
  double q0 = 0.0;
  GridFunction q1;
};

struct ModelParams {
  double mu = 0.0;      ///< depreciation rate
  double lambda = 0.0;  ///< discount rate
  double s_bar = 0.0;   ///< maximal capital age
  GridFunction alpha;   ///< output weight alpha(s) >= 0
  QuadraticCost cost;
  RevenueSpec revenue = RevenueSpec::linear(0.0);
  /// Strict lower bound imposed on beta0 and beta1.
  double beta_floor = 1e-9;

  int n_cells() const { return alpha.n_cells(); }
  double h() const { return alpha.h(); }
};

/// Growth bound of the age-translation semigroup, |e^{tA0}| <= e^{-mu t}.
inline double semigroup_type(const ModelParams& p) { return -p.mu; }

/// Every violated invariant, in a fixed order. Empty when the model is valid.
std::vector<Violation> find_violations(const ModelParams& params);

/// Returns params unchanged or throws ValidationError listing all violations.
ModelParams validate(ModelParams params);

}  // namespace vintage
