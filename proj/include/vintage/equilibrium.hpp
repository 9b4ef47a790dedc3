#pragma once

#include "vintage/model.hpp"
#include "vintage/operators.hpp"

namespace vintage {

struct EquilibriumResiduals {
  double stationarity = 0.0;     ///< strong-form defect of x' + mu x = u1*, x(0) = u0*
  double scalar_equation = 0.0;  ///< |eta - R'(c2 + c1 eta)|
  double extremality = 0.0;      ///< defect of u* = M_{1/2beta}(-B* p - q)
};

/// Stationary state x_bar = w2 + eta w1 of the optimally controlled vintage
/// capital dynamics, with the control and co-state that support it.
struct EquilibriumResult {
  double eta = 0.0;
  GridFunction x_bar;
  GridFunction w1;
  GridFunction w2;
  GridFunction alpha_bar;
  double c1 = 0.0;  ///< (alpha|w1)
  double c2 = 0.0;  ///< (alpha|w2)
  ControlPair u_star;
  GridFunction p_bar;
  EquilibriumResiduals residuals;

  /// Output rate at the equilibrium, (alpha|x_bar).
  double output = 0.0;
};

/// Discounted return of a unit of capital by age: (lambda - A0*)^{-1} alpha.
GridFunction alpha_bar(const ModelParams& params);

/// w1 = -A^{-1} B M_{1/2beta} B* alpha_bar, with the boundary part taken
/// through a_inverse_delta.
GridFunction compute_w1(const ModelParams& params);

/// w2 = A^{-1} B M_{1/2beta} q
///    = -(q0 / 2beta0) e^{-mu s} - int_0^s e^{-mu(s - sigma)} q1 / (2 beta1) dsigma.
GridFunction compute_w2(const ModelParams& params);

/// Solves eta = R'(c2 + c1 eta). Closed forms for the quadratic and log
/// families, bisection otherwise. Throws NumericalError(BracketFailure).
double solve_eta(const RevenueSpec& revenue, double c1, double c2);

/// Bisection on g(eta) = eta - R'(c2 + c1 eta) for any family, to
/// |g| <= 1e-12 or until the bracket cannot shrink further.
double solve_eta_bisection(const RevenueSpec& revenue, double c1, double c2);

/// Full equilibrium with residuals filled in. Throws on invalid params.
EquilibriumResult assemble(const ModelParams& params);

/// max_j |D_h x_bar + mu x_bar - u1*| over interior nodes plus |x_bar(0) - u0*|.
double stationarity_residual(const EquilibriumResult& result, const ModelParams& params);

/// |u* - M(-B* p - q)|_U + |p - (lambda - A0*)^{-1} g0'(x_bar)|_H, with the
/// second co-state recomputed from x_bar through the resolvent.
double extremality_residual(const EquilibriumResult& result, const ModelParams& params);

}  // namespace vintage
