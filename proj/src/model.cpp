#include "vintage/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vintage {

namespace {

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

void check_revenue(const RevenueSpec& r, std::vector<Violation>& out) {
  switch (r.family()) {
    case RevenueFamily::Quadratic:
      if (!(r.a() >= 0.0) || !std::isfinite(r.a()) || !std::isfinite(r.b())) {
        out.push_back({ViolationKind::InvalidRevenue,
                       "quadratic revenue needs finite a >= 0 and finite b"});
      }
      break;
    case RevenueFamily::Power:
      if (!(r.gamma() > 0.0 && r.gamma() < 1.0)) {
        out.push_back({ViolationKind::InvalidRevenue, "power revenue needs gamma in (0, 1)"});
      }
      break;
    case RevenueFamily::Log:
      break;
    case RevenueFamily::Custom:
      if (!(r.lipschitz_derivative() >= 0.0) || !std::isfinite(r.lipschitz_derivative())) {
        out.push_back({ViolationKind::InvalidRevenue,
                       "custom revenue needs a finite Lipschitz constant for R'"});
      }
      break;
  }
  if (!r.concave()) return;

  // Spot-check that R' is nonincreasing on a probe grid.
  constexpr int kProbes = 401;
  constexpr double kLo = -20.0;
  constexpr double kHi = 20.0;
  double prev = r.derivative(kLo);
  for (int k = 1; k < kProbes; ++k) {
    const double q = kLo + (kHi - kLo) * k / (kProbes - 1);
    const double d = r.derivative(q);
    if (!std::isfinite(d)) {
      out.push_back({ViolationKind::InvalidRevenue,
                     "R' is not finite at Q = " + std::to_string(q)});
      return;
    }
    if (d > prev + 1e-12 * (1.0 + std::abs(prev))) {
      out.push_back({ViolationKind::NonConcaveRevenue,
                     "R' increases near Q = " + std::to_string(q)});
      return;
    }
    prev = d;
  }
}

}  // namespace

std::vector<Violation> find_violations(const ModelParams& p) {
  std::vector<Violation> out;
  if (!positive_finite(p.mu)) out.push_back({ViolationKind::NonPositiveRate, "mu must be > 0"});
  if (!positive_finite(p.lambda)) {
    out.push_back({ViolationKind::NonPositiveRate, "lambda must be > 0"});
  }
  if (!positive_finite(p.s_bar)) {
    out.push_back({ViolationKind::NonPositiveRate, "s_bar must be finite and > 0"});
  }

  const GridFunction* grids[] = {&p.alpha, &p.cost.beta1, &p.cost.q1};
  const char* names[] = {"alpha", "beta1", "q1"};
  bool grids_ok = true;
  for (int i = 0; i < 3; ++i) {
    if (grids[i]->empty()) {
      out.push_back({ViolationKind::GridMismatch, std::string(names[i]) + " is not set"});
      grids_ok = false;
    } else if (grids[i]->s_bar() != p.s_bar) {
      out.push_back({ViolationKind::GridMismatch,
                     std::string(names[i]) + " grid does not end at s_bar"});
      grids_ok = false;
    }
  }
  if (grids_ok && (!p.alpha.same_grid(p.cost.beta1) || !p.alpha.same_grid(p.cost.q1))) {
    out.push_back({ViolationKind::GridMismatch, "alpha, beta1 and q1 grids differ"});
    grids_ok = false;
  }

  if (!(p.beta_floor > 0.0)) {
    out.push_back({ViolationKind::CostFloorViolated, "beta floor must be > 0"});
  }
  if (!(p.cost.beta0 >= p.beta_floor) || !std::isfinite(p.cost.beta0)) {
    out.push_back({ViolationKind::CostFloorViolated, "beta0 below floor"});
  }
  if (!p.cost.beta1.empty()) {
    const auto v = p.cost.beta1.values();
    if (*std::min_element(v.begin(), v.end()) < p.beta_floor) {
      out.push_back({ViolationKind::CostFloorViolated, "beta1 below floor somewhere on the grid"});
    }
  }
  if (!std::isfinite(p.cost.q0)) {
    out.push_back({ViolationKind::NonFiniteValue, "q0 is not finite"});
  }
  if (!p.alpha.empty()) {
    const auto v = p.alpha.values();
    if (*std::min_element(v.begin(), v.end()) < 0.0) {
      out.push_back({ViolationKind::NegativeOutputWeight, "alpha is negative somewhere"});
    }
  }
  check_revenue(p.revenue, out);
  return out;
}

ModelParams validate(ModelParams params) {
  auto violations = find_violations(params);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return params;
}

}  // namespace vintage
