#pragma once

#include "vintage/grid_function.hpp"
#include "vintage/model.hpp"

namespace vintage {

/// Investment u = (u0, u1): u0 enters at age 0, u1(s) is distributed over ages.
struct ControlPair {
  double u0 = 0.0;
  GridFunction u1;
};

/// Composite trapezoid over [0, s_bar]. Exact for piecewise-linear samples.
double integrate(const GridFunction& f);

/// L2 pairing (f|g) by the trapezoid rule.
double inner(const GridFunction& f, const GridFunction& g);

/// Discrete L2 norm sqrt((f|f)).
double l2_norm(const GridFunction& f);

/// Pairing on U = R x L2: p0 u0 + (p1|u1).
double pairing(const ControlPair& p, const ControlPair& u);

/// Norm on U.
double control_norm(const ControlPair& u);

/// (e^{t A0} x)(s) = e^{-mu t} x(s - t) for s >= t, zero otherwise.
GridFunction semigroup_apply(const GridFunction& x, double t, double mu);

/// (A^{-1} f)(s) = -int_0^s e^{-mu (s - sigma)} f(sigma) dsigma.
GridFunction a_inverse_apply(const GridFunction& f, double mu);

/// A^{-1} applied to the Dirac mass at age 0: -e^{-mu s}.
GridFunction a_inverse_delta(double s_bar, int n_cells, double mu);

/// ((A0*)^{-1} f)(s) = -int_s^{s_bar} e^{-mu (sigma - s)} f(sigma) dsigma.
GridFunction adjoint_inverse_apply(const GridFunction& f, double mu);

/// ((lambda - A0*)^{-1} f)(s) = int_s^{s_bar} e^{-(mu + lambda)(sigma - s)} f(sigma) dsigma.
GridFunction resolvent_apply(const GridFunction& f, double mu, double lambda);

/// Adjoint of B(u0, u1) = u1 + u0 delta_0: B* v = (v(0), v).
ControlPair b_star_apply(const GridFunction& v);

/// M_{1/2beta} u = (u0 / (2 beta0), u1(s) / (2 beta1(s))).
ControlPair multiplier_half_beta(const ControlPair& u, double beta0, const GridFunction& beta1);

/// Exact operator norm of M_{1/2beta} on U.
double multiplier_half_beta_norm(double beta0, const GridFunction& beta1);

/// Convex conjugate of the quadratic-linear cost:
/// (u0 - q0)^2 / (4 beta0) + int (u1 - q1)^2 / (4 beta1).
double conjugate_cost(const ControlPair& u, const QuadraticCost& c);

/// h0(u) = beta0 u0^2 + q0 u0 + int (beta1 u1^2 + q1 u1).
double cost(const ControlPair& u, const QuadraticCost& c);

namespace detail {

/// Weights of the linear interpolant on one cell against e^{-kappa t},
/// t in [0, h] measured from the evaluation end of the cell:
///   near = int_0^h e^{-kappa t} (1 - t/h) dt,  far = int_0^h e^{-kappa t} t/h dt.
struct CellWeights {
  double near;
  double far;
  double decay;  ///< e^{-kappa h}
};

CellWeights exponential_cell_weights(double kappa, double h);

/// c_j = int_0^{s_j} e^{-kappa (s_j - sigma)} f(sigma) dsigma for the linear
/// interpolant of f.
GridFunction forward_convolution(const GridFunction& f, double kappa);

/// c_j = int_{s_j}^{s_bar} e^{-kappa (sigma - s_j)} f(sigma) dsigma.
GridFunction backward_convolution(const GridFunction& f, double kappa);

}  // namespace detail

}  // namespace vintage
