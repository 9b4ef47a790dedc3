#include "vintage/equilibrium.hpp"

#include <algorithm>
#include <cmath>

namespace vintage {

namespace {

// w = -A^{-1} B M_{1/2beta} v for a control-space element v, with the boundary
// component routed through A^{-1} delta_0.
GridFunction minus_a_inverse_b_half_beta(const ControlPair& v, const ModelParams& p) {
  const ControlPair m = multiplier_half_beta(v, p.cost.beta0, p.cost.beta1);
  GridFunction out = m.u0 * a_inverse_delta(p.s_bar, p.n_cells(), p.mu);
  out += a_inverse_apply(m.u1, p.mu);
  return -out;
}

double scalar_gap(const RevenueSpec& r, double c1, double c2, double eta) {
  return eta - r.derivative(c2 + c1 * eta);
}

}  // namespace

GridFunction alpha_bar(const ModelParams& params) {
  return resolvent_apply(params.alpha, params.mu, params.lambda);
}

GridFunction compute_w1(const ModelParams& params) {
  return minus_a_inverse_b_half_beta(b_star_apply(alpha_bar(params)), params);
}

GridFunction compute_w2(const ModelParams& params) {
  return -minus_a_inverse_b_half_beta({params.cost.q0, params.cost.q1}, params);
}

double solve_eta_bisection(const RevenueSpec& revenue, double c1, double c2) {
  auto g = [&](double eta) { return scalar_gap(revenue, c1, c2, eta); };

  const double r0 = revenue.derivative(c2);
  if (!std::isfinite(r0)) {
    throw NumericalError(NumericalFailure::BracketFailure, "R'(c2) is not finite");
  }

  // For concave R and c1 >= 0 the root lies between 0 and R'(c2).
  double lo = std::min(0.0, r0);
  double hi = std::max(0.0, r0);
  double g_lo = g(lo);
  double g_hi = g(hi);
  if (!(g_lo <= 0.0 && g_hi >= 0.0)) {
    lo = -1.0;
    hi = 1.0;
    g_lo = g(lo);
    g_hi = g(hi);
    int doublings = 0;
    while (!(g_lo <= 0.0 && g_hi >= 0.0)) {
      if (++doublings > 60 || !std::isfinite(g_lo) || !std::isfinite(g_hi)) {
        throw NumericalError(NumericalFailure::BracketFailure,
                             "no sign change of eta - R'(c2 + c1 eta) found");
      }
      lo *= 2.0;
      hi *= 2.0;
      g_lo = g(lo);
      g_hi = g(hi);
    }
  }
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;

  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double g_mid = g(mid);
    if (g_mid == 0.0) return mid;
    if (g_mid < 0.0) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
      g_hi = g_mid;
    }
  }
  return std::abs(g_lo) <= std::abs(g_hi) ? lo : hi;
}

double solve_eta(const RevenueSpec& revenue, double c1, double c2) {
  switch (revenue.family()) {
    case RevenueFamily::Quadratic: {
      const double denom = 1.0 + 2.0 * revenue.a() * c1;
      if (!(denom > 0.0)) {
        throw NumericalError(NumericalFailure::BracketFailure,
                             "1 + 2 a c1 must be positive for the quadratic closed form");
      }
      return (revenue.b() - 2.0 * revenue.a() * c2) / denom;
    }
    case RevenueFamily::Log: {
      // On the linear branch Q < 0 we have R' = 1, so eta = 1 there.
      if (c2 + c1 < 0.0) return 1.0;
      // Positive root of c1 eta^2 + (1 + c2) eta - 1 = 0, written without the
      // cancellation of the textbook form; c1 -> 0 gives 1 / (1 + c2).
      const double b = 1.0 + c2;
      return 2.0 / (b + std::sqrt(b * b + 4.0 * c1));
    }
    case RevenueFamily::Power:
    case RevenueFamily::Custom:
      return solve_eta_bisection(revenue, c1, c2);
  }
  return 0.0;
}

EquilibriumResult assemble(const ModelParams& raw) {
  const ModelParams params = validate(raw);
  const QuadraticCost& c = params.cost;

  EquilibriumResult r;
  r.alpha_bar = alpha_bar(params);
  r.w1 = minus_a_inverse_b_half_beta(b_star_apply(r.alpha_bar), params);
  r.w2 = compute_w2(params);
  r.c1 = inner(params.alpha, r.w1);
  r.c2 = inner(params.alpha, r.w2);
  r.eta = solve_eta(params.revenue, r.c1, r.c2);
  r.x_bar = r.w2 + r.eta * r.w1;

  // u* = M_{1/2beta}(eta B* alpha_bar - q)
  r.u_star.u0 = (r.eta * r.alpha_bar.front() - c.q0) / (2.0 * c.beta0);
  r.u_star.u1 = pointwise_quotient(r.eta * r.alpha_bar - c.q1, 2.0 * c.beta1);
  r.p_bar = -r.eta * r.alpha_bar;
  r.output = inner(params.alpha, r.x_bar);

  r.residuals.scalar_equation =
      std::abs(scalar_gap(params.revenue, r.c1, r.c2, r.eta));
  r.residuals.stationarity = stationarity_residual(r, params);
  r.residuals.extremality = extremality_residual(r, params);
  return r;
}

double stationarity_residual(const EquilibriumResult& result, const ModelParams& params) {
  const GridFunction& x = result.x_bar;
  const GridFunction& u1 = result.u_star.u1;
  require_same_grid(x, u1, "stationarity residual");
  const double h = x.h();
  double worst = 0.0;
  for (std::size_t j = 1; j + 1 < x.size(); ++j) {
    const double dx = (x[j + 1] - x[j - 1]) / (2.0 * h);
    worst = std::max(worst, std::abs(dx + params.mu * x[j] - u1[j]));
  }
  return worst + std::abs(x.front() - result.u_star.u0);
}

double extremality_residual(const EquilibriumResult& result, const ModelParams& params) {
  const QuadraticCost& c = params.cost;

  // u* against M_{1/2beta}(-B* p - q).
  const ControlPair b_star_p = b_star_apply(result.p_bar);
  const ControlPair shifted{-b_star_p.u0 - c.q0, -b_star_p.u1 - c.q1};
  const ControlPair implied = multiplier_half_beta(shifted, c.beta0, c.beta1);
  const ControlPair gap{result.u_star.u0 - implied.u0, result.u_star.u1 - implied.u1};

  // p against (lambda - A0*)^{-1} g0'(x_bar), g0'(x) = -R'((alpha|x)) alpha.
  const double slope = params.revenue.derivative(inner(params.alpha, result.x_bar));
  const GridFunction costate =
      resolvent_apply(-slope * params.alpha, params.mu, params.lambda);

  return control_norm(gap) + l2_norm(result.p_bar - costate);
}

}  // namespace vintage
