#include "vintage/conditions.hpp"

#include <algorithm>
#include <cmath>

#include "vintage/operators.hpp"

namespace vintage {

namespace {

constexpr double kAlphaEndTolerance = 1e-9;

GridFunction derivative(const GridFunction& f) {
  const double h = f.h();
  const std::size_t n = f.size() - 1;
  GridFunction d = GridFunction::zeros(f.s_bar(), f.n_cells());
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  for (std::size_t j = 1; j < n; ++j) d[j] = (f[j + 1] - f[j - 1]) / (2.0 * h);
  d[n] = (3.0 * f[n] - 4.0 * f[n - 1] + f[n - 2]) / (2.0 * h);
  return d;
}

ConditionEntry make_entry(std::string name, double lhs, double rhs) {
  return {std::move(name), lhs, rhs, lhs > rhs, lhs - rhs};
}

void require_alpha_in_v(const GridFunction& alpha) {
  if (std::abs(alpha.back()) > kAlphaEndTolerance) {
    throw ValidationError(ViolationKind::AlphaNotInV,
                          "alpha(s_bar) = " + std::to_string(alpha.back()) +
                              " must vanish for the contraction certificate");
  }
}

ConditionConstants base_constants(const ModelParams& p) {
  ConditionConstants k;
  k.adjoint_inverse_bound_hille_yosida = 1.0 / p.mu;
  k.adjoint_inverse_bound_holder = p.s_bar / std::sqrt(2.0);
  k.b_norm = 1.0;
  k.multiplier_norm = multiplier_half_beta_norm(p.cost.beta0, p.cost.beta1);
  k.multiplier_norm_loose = 0.5 * (1.0 + 1.0 / p.cost.beta0);
  k.loose_bound_valid = k.multiplier_norm_loose >= k.multiplier_norm;
  k.alpha_v_norm_sq = alpha_v_norm_squared(p.alpha, p.mu);
  k.alpha_alt_integral = alpha_alt_integral(p.alpha, p.mu);
  return k;
}

}  // namespace

const ConditionEntry& ConditionReport::best() const {
  return *std::max_element(entries.begin(), entries.end(),
                           [](const auto& a, const auto& b) { return a.margin < b.margin; });
}

bool ConditionReport::any_holds() const {
  return std::any_of(entries.begin(), entries.end(), [](const auto& e) { return e.holds; });
}

const ConditionEntry* ConditionReport::find(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

double alpha_v_norm_squared(const GridFunction& alpha, double mu) {
  const GridFunction adj = derivative(alpha) - mu * alpha;  // A0* alpha
  return inner(alpha, alpha) + inner(adj, adj);
}

double alpha_alt_integral(const GridFunction& alpha, double mu) {
  const GridFunction d = derivative(alpha);
  return inner(alpha, alpha) + inner(d, d) - mu * alpha.front() * alpha.front();
}

ConditionReport check_contraction(const ModelParams& raw) {
  const ModelParams p = validate(raw);
  require_alpha_in_v(p.alpha);

  ConditionReport report;
  ConditionConstants& k = report.constants;
  k = base_constants(p);
  k.revenue_prime_lipschitz = p.revenue.lipschitz_derivative();
  k.g0_prime_lipschitz = k.revenue_prime_lipschitz * k.alpha_v_norm_sq;

  const double lhs = p.lambda - semigroup_type(p);
  const double coupling = k.b_norm * k.b_norm * k.multiplier_norm * k.g0_prime_lipschitz;
  report.entries.push_back(
      make_entry("hille_yosida", lhs, k.adjoint_inverse_bound_hille_yosida * coupling));
  report.entries.push_back(
      make_entry("holder", lhs, k.adjoint_inverse_bound_holder * coupling));
  return report;
}

ConditionReport check_quadratic_revenue(const ModelParams& raw) {
  const ModelParams p = validate(raw);
  if (p.revenue.family() != RevenueFamily::Quadratic) {
    throw ValidationError(ViolationKind::WrongFamily,
                          std::string("quadratic revenue required, got ") +
                              to_string(p.revenue.family()));
  }
  require_alpha_in_v(p.alpha);

  ConditionReport report;
  ConditionConstants& k = report.constants;
  k = base_constants(p);
  k.revenue_prime_lipschitz = 2.0 * p.revenue.a();
  k.g0_prime_lipschitz = k.revenue_prime_lipschitz * k.alpha_v_norm_sq;

  const double lhs = p.lambda - semigroup_type(p);
  const double exact = k.multiplier_norm * k.g0_prime_lipschitz;
  const double loose = k.multiplier_norm_loose * k.g0_prime_lipschitz;
  report.entries.push_back(
      make_entry("hille_yosida_exact", lhs, k.adjoint_inverse_bound_hille_yosida * exact));
  report.entries.push_back(
      make_entry("holder_exact", lhs, k.adjoint_inverse_bound_holder * exact));
  report.entries.push_back(
      make_entry("hille_yosida_loose", lhs, k.adjoint_inverse_bound_hille_yosida * loose));
  report.entries.push_back(
      make_entry("holder_loose", lhs, k.adjoint_inverse_bound_holder * loose));
  return report;
}

}  // namespace vintage
