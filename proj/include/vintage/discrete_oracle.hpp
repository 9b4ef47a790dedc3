#pragma once

#include <vector>

#include <Eigen/Dense>

#include "vintage/grid_function.hpp"
#include "vintage/model.hpp"
#include "vintage/operators.hpp"

namespace vintage::oracle {

/// Dense-matrix realization of the model operators on an n-cell grid.
///
/// Kernel entries are assembled cell by cell with 5-point Gauss-Legendre
/// quadrature of kernel times hat function, directly from the kernels
/// e^{-mu (s - sigma)} and e^{-(mu + lambda)(sigma - s)}. Nothing here calls
/// into the operators module, so the two can arbitrate each other.
struct DiscreteOperators {
  int n = 0;
  double s_bar = 0.0;
  double h = 0.0;
  double mu = 0.0;
  double lambda = 0.0;

  Eigen::MatrixXd a_inverse;        ///< lower triangular
  Eigen::MatrixXd adjoint_inverse;  ///< upper triangular
  Eigen::MatrixXd resolvent;        ///< upper triangular
  Eigen::VectorXd weights;          ///< trapezoid weights, sum to s_bar
  Eigen::VectorXd delta_composition;  ///< A^{-1} delta_0 = -e^{-mu s_j}

  // Model data on this grid.
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta1;
  Eigen::VectorXd q1;
  double beta0 = 0.0;
  double q0 = 0.0;

  double l2_norm(const Eigen::VectorXd& v) const;
};

/// Requires n >= 8. Model grid functions are linearly resampled when their
/// resolution differs from n.
DiscreteOperators build(const ModelParams& params, int n);

/// Investment implied by the state x through the co-state
/// p = (lambda - A0*)^{-1} g0'(x): u = M_{1/2beta}(-B* p - q).
ControlPair feedback_control(const DiscreteOperators& ops, const RevenueSpec& revenue,
                             const GridFunction& x);

/// One application of Tx = -A^{-1} B (h0*)'(-B* (lambda - A0*)^{-1} g0'(x)),
/// with g0'(x) = -R'((alpha|x)) alpha and (h0*)'(v) = M_{1/2beta}(v - q).
Eigen::VectorXd apply_t(const DiscreteOperators& ops, const RevenueSpec& revenue,
                        const Eigen::VectorXd& x);

struct PicardResult {
  GridFunction fixed_point;
  /// Number of updates that moved the iterate by more than tol (at least 1).
  int iterations = 0;
  /// Geometric rate fitted to the last (up to 10) step norms above rounding.
  double fitted_rate = 0.0;
  std::vector<double> step_norms;
};

/// Picard iteration x_{k+1} = T x_k until the discrete L2 step is <= tol.
/// Throws NumericalError(NoConvergence) with the last step norms as trace.
PicardResult picard_fixed_point(const DiscreteOperators& ops, const ModelParams& params,
                                const GridFunction& x0, double tol, int max_iter);

/// Least-squares geometric rate of a decreasing sequence of step norms.
double fit_contraction_rate(const std::vector<double>& step_norms, double floor);

/// max over 16 test functions phi with phi(s_bar) = 0 of
/// |(x|phi' - mu phi) + (u1|phi) + u0 phi(0)|.
double residual_weak_form(const GridFunction& x, const ControlPair& u,
                          const ModelParams& params, const DiscreteOperators& ops);

/// Norm of K as an operator on the trapezoid-weighted L2 space, by power
/// iteration on W^{-1} K^T W K.
double discrete_operator_norm(const Eigen::MatrixXd& k, const Eigen::VectorXd& weights,
                              int iterations = 500);

Eigen::VectorXd to_vector(const GridFunction& f);
GridFunction to_grid(const Eigen::VectorXd& v, double s_bar);

}  // namespace vintage::oracle
