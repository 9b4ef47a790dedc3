#include "vintage/discrete_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "vintage/errors.hpp"

namespace vintage::oracle {

namespace {

constexpr std::array<double, 5> kGaussNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                               0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights = {0.2369268850561891, 0.4786286704993665,
                                                 0.5688888888888889, 0.4786286704993665,
                                                 0.2369268850561891};

enum class Range { UpToNode, FromNode };

// Row j holds the weights of int e^{-rate |s_j - sigma|} f(sigma) dsigma over
// [0, s_j] or [s_j, s_bar], f being the linear interpolant of its nodal values.
Eigen::MatrixXd kernel_matrix(int n, double h, double rate, double sign, Range range) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int j = 0; j <= n; ++j) {
    const double s = j * h;
    const int first = range == Range::UpToNode ? 0 : j;
    const int last = range == Range::UpToNode ? j : n;
    for (int i = first; i < last; ++i) {
      const double left = i * h;
      const double right = (i + 1) * h;
      double to_left = 0.0;
      double to_right = 0.0;
      for (std::size_t g = 0; g < kGaussNodes.size(); ++g) {
        const double sigma = 0.5 * (left + right) + 0.5 * h * kGaussNodes[g];
        const double w = 0.5 * h * kGaussWeights[g] * std::exp(-rate * std::abs(s - sigma));
        to_left += w * (right - sigma) / h;
        to_right += w * (sigma - left) / h;
      }
      m(j, i) += sign * to_left;
      m(j, i + 1) += sign * to_right;
    }
  }
  return m;
}

Eigen::VectorXd on_grid(const GridFunction& f, int n) { return to_vector(resample(f, n)); }

}  // namespace

Eigen::VectorXd to_vector(const GridFunction& f) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(f.size()));
  for (std::size_t j = 0; j < f.size(); ++j) v(static_cast<Eigen::Index>(j)) = f[j];
  return v;
}

GridFunction to_grid(const Eigen::VectorXd& v, double s_bar) {
  return GridFunction(s_bar, static_cast<int>(v.size()) - 1,
                      std::vector<double>(v.data(), v.data() + v.size()));
}

double DiscreteOperators::l2_norm(const Eigen::VectorXd& v) const {
  return std::sqrt(weights.dot(v.cwiseProduct(v)));
}

DiscreteOperators build(const ModelParams& raw, int n) {
  if (n < 8) {
    throw ValidationError(ViolationKind::InvalidInput,
                          "oracle resolution must be >= 8, got " + std::to_string(n));
  }
  const ModelParams params = validate(raw);

  DiscreteOperators ops;
  ops.n = n;
  ops.s_bar = params.s_bar;
  ops.h = params.s_bar / n;
  ops.mu = params.mu;
  ops.lambda = params.lambda;

  ops.a_inverse = kernel_matrix(n, ops.h, params.mu, -1.0, Range::UpToNode);
  ops.adjoint_inverse = kernel_matrix(n, ops.h, params.mu, -1.0, Range::FromNode);
  ops.resolvent =
      kernel_matrix(n, ops.h, params.mu + params.lambda, 1.0, Range::FromNode);

  ops.weights = Eigen::VectorXd::Constant(n + 1, ops.h);
  ops.weights(0) = 0.5 * ops.h;
  ops.weights(n) = 0.5 * ops.h;

  ops.delta_composition.resize(n + 1);
  for (int j = 0; j <= n; ++j) ops.delta_composition(j) = -std::exp(-params.mu * j * ops.h);

  ops.alpha = on_grid(params.alpha, n);
  ops.beta1 = on_grid(params.cost.beta1, n);
  ops.q1 = on_grid(params.cost.q1, n);
  ops.beta0 = params.cost.beta0;
  ops.q0 = params.cost.q0;
  return ops;
}

namespace {

struct Investment {
  double u0;
  Eigen::VectorXd u1;
};

Investment investment(const DiscreteOperators& ops, const RevenueSpec& revenue,
                      const Eigen::VectorXd& x) {
  const double output = ops.weights.dot(ops.alpha.cwiseProduct(x));
  const Eigen::VectorXd g0_prime = -revenue.derivative(output) * ops.alpha;
  const Eigen::VectorXd costate = ops.resolvent * g0_prime;

  // (h0*)'(-B* p) = M_{1/2beta}(-B* p - q), B* p = (p(0), p).
  const double v0 = -costate(0) - ops.q0;
  const Eigen::VectorXd v1 = -costate - ops.q1;
  return {v0 / (2.0 * ops.beta0), v1.cwiseQuotient(2.0 * ops.beta1)};
}

}  // namespace

ControlPair feedback_control(const DiscreteOperators& ops, const RevenueSpec& revenue,
                             const GridFunction& x) {
  const Investment u = investment(ops, revenue, to_vector(x));
  return {u.u0, to_grid(u.u1, ops.s_bar)};
}

Eigen::VectorXd apply_t(const DiscreteOperators& ops, const RevenueSpec& revenue,
                        const Eigen::VectorXd& x) {
  const Investment u = investment(ops, revenue, x);
  return -(ops.a_inverse * u.u1 + u.u0 * ops.delta_composition);
}

double fit_contraction_rate(const std::vector<double>& step_norms, double floor) {
  std::vector<double> usable;
  for (double s : step_norms) {
    if (s > floor) usable.push_back(s);
  }
  if (usable.size() > 10) usable.erase(usable.begin(), usable.end() - 10);
  if (usable.size() < 2) return 0.0;

  const double m = static_cast<double>(usable.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < usable.size(); ++k) {
    const double x = static_cast<double>(k);
    const double y = std::log(usable[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return std::exp(slope);
}

PicardResult picard_fixed_point(const DiscreteOperators& ops, const ModelParams& params,
                                const GridFunction& x0, double tol, int max_iter) {
  if (!(tol > 0.0)) throw ValidationError(ViolationKind::InvalidInput, "tol must be > 0");
  if (x0.n_cells() != ops.n || x0.s_bar() != ops.s_bar) {
    throw ValidationError(ViolationKind::GridMismatch, "initial guess is not on the oracle grid");
  }

  PicardResult result;
  Eigen::VectorXd x = to_vector(x0);
  int moving_updates = 0;
  for (int k = 0; k < max_iter; ++k) {
    Eigen::VectorXd next = apply_t(ops, params.revenue, x);
    const double step = ops.l2_norm(next - x);
    result.step_norms.push_back(step);
    x = std::move(next);
    if (step <= tol) {
      result.fixed_point = to_grid(x, ops.s_bar);
      result.iterations = std::max(1, moving_updates);
      result.fitted_rate = fit_contraction_rate(result.step_norms, 1e-13 * (1.0 + ops.l2_norm(x)));
      return result;
    }
    ++moving_updates;
  }

  const auto& s = result.step_norms;
  const std::vector<double> tail(s.end() - std::min<std::ptrdiff_t>(10, s.size()), s.end());
  const bool monotone = std::is_sorted(tail.rbegin(), tail.rend());
  throw NumericalError(NumericalFailure::NoConvergence,
                       "Picard iteration did not reach tol after " + std::to_string(max_iter) +
                           " steps (" + (monotone ? "monotone" : "nonmonotone") +
                           " step norms); the contraction condition likely fails",
                       tail);
}

double residual_weak_form(const GridFunction& x, const ControlPair& u, const ModelParams& params,
                          const DiscreteOperators& ops) {
  if (x.n_cells() != ops.n || u.u1.n_cells() != ops.n) {
    throw ValidationError(ViolationKind::GridMismatch, "weak-form inputs not on the oracle grid");
  }
  const Eigen::VectorXd xv = to_vector(x);
  const Eigen::VectorXd uv = to_vector(u.u1);
  const double s_bar = ops.s_bar;

  double worst = 0.0;
  Eigen::VectorXd phi(ops.n + 1), adj(ops.n + 1);
  for (int k = 0; k < 16; ++k) {
    // phi(s) = r^k (1 - r), r = s / s_bar
    for (int j = 0; j <= ops.n; ++j) {
      const double r = j * ops.h / s_bar;
      const double rk = std::pow(r, k);
      const double drk = k == 0 ? 0.0 : k * std::pow(r, k - 1);
      const double value = rk * (1.0 - r);
      const double slope = (drk * (1.0 - r) - rk) / s_bar;
      phi(j) = value;
      adj(j) = slope - params.mu * value;
    }
    const double defect = ops.weights.dot(xv.cwiseProduct(adj)) +
                          ops.weights.dot(uv.cwiseProduct(phi)) + u.u0 * phi(0);
    worst = std::max(worst, std::abs(defect));
  }
  return worst;
}

double discrete_operator_norm(const Eigen::MatrixXd& k, const Eigen::VectorXd& weights,
                              int iterations) {
  auto w_norm = [&](const Eigen::VectorXd& v) { return std::sqrt(weights.dot(v.cwiseProduct(v))); };
  Eigen::VectorXd v = Eigen::VectorXd::Ones(k.cols());
  v /= w_norm(v);
  double estimate = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const Eigen::VectorXd kv = k * v;
    const Eigen::VectorXd next =
        (k.transpose() * weights.cwiseProduct(kv)).cwiseQuotient(weights);
    const double len = w_norm(next);
    if (len == 0.0) return 0.0;
    estimate = std::sqrt(len);
    v = next / len;
  }
  return estimate;
}

}  // namespace vintage::oracle
