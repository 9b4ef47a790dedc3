#pragma once

#include <string>
#include <vector>

#include "vintage/model.hpp"

namespace vintage {

struct ConditionEntry {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  double margin = 0.0;  ///< lhs - rhs
};

/// Constants entering the contraction inequalities.
struct ConditionConstants {
  double adjoint_inverse_bound_hille_yosida = 0.0;  ///< 1/mu
  double adjoint_inverse_bound_holder = 0.0;        ///< s_bar / sqrt(2)
  double b_norm = 1.0;
  double multiplier_norm = 0.0;        ///< exact |M_{1/2beta}|
  double multiplier_norm_loose = 0.0;  ///< (1 + 1/beta0) / 2
  bool loose_bound_valid = false;      ///< loose >= exact
  double revenue_prime_lipschitz = 0.0;  ///< [R']
  double g0_prime_lipschitz = 0.0;       ///< [R'] |alpha|_V^2
  double alpha_v_norm_sq = 0.0;          ///< int alpha^2 + int (alpha' - mu alpha)^2
  double alpha_alt_integral = 0.0;       ///< int alpha^2 + int alpha'^2 - mu alpha(0)^2
};

/// Sufficient conditions for a unique equilibrium. A failing entry does not
/// mean there is no equilibrium, only that this certificate does not apply.
struct ConditionReport {
  std::vector<ConditionEntry> entries;
  ConditionConstants constants;

  /// Entry with the largest margin.
  const ConditionEntry& best() const;
  bool any_holds() const;
  const ConditionEntry* find(const std::string& name) const;
};

/// |alpha|_V^2 with alpha' from second-order finite differences.
double alpha_v_norm_squared(const GridFunction& alpha, double mu);

/// int alpha^2 + int alpha'^2 - mu alpha(0)^2.
double alpha_alt_integral(const GridFunction& alpha, double mu);

/// Contraction certificate lambda + mu > K |(A0*)^{-1}| [(h0*)'] [R'] |alpha|_V^2
/// with both available bounds on |(A0*)^{-1}|. Entries "hille_yosida" and
/// "holder". Throws ValidationError(AlphaNotInV) when |alpha(s_bar)| > 1e-9.
ConditionReport check_contraction(const ModelParams& params);

/// Quadratic-revenue variants with [R'] = 2a, evaluated with both the exact
/// multiplier norm and the loose (1 + 1/beta0)/2 bound. Entries
/// "hille_yosida_exact", "holder_exact", "hille_yosida_loose", "holder_loose".
/// Throws ValidationError(WrongFamily) for non-quadratic revenue.
ConditionReport check_quadratic_revenue(const ModelParams& params);

}  // namespace vintage
