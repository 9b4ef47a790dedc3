#include <doctest.h>

#include <cmath>
#include <random>

#include "models.hpp"
#include "vintage/conditions.hpp"

using namespace vintage;
using doctest::Approx;

TEST_CASE("MODEL-B certificate") {
  const auto r = check_contraction(testing::model_b(1000));
  CHECK(r.constants.alpha_v_norm_sq == Approx(8.0 / 3.0).epsilon(1e-6));
  CHECK(r.constants.alpha_alt_integral == Approx(1.0 / 3.0).epsilon(1e-6));
  CHECK(r.constants.b_norm == 1.0);
  CHECK(r.constants.multiplier_norm == 1.0);

  const auto* holder = r.find("holder");
  REQUIRE(holder != nullptr);
  CHECK(holder->lhs == 2.0);
  CHECK(holder->rhs == Approx(8.0 / 3.0 / std::sqrt(2.0)).epsilon(1e-6));
  CHECK(holder->holds);
  CHECK(std::abs(holder->margin - 0.11438755557398692) <= 1e-3);

  const auto* hy = r.find("hille_yosida");
  REQUIRE(hy != nullptr);
  CHECK_FALSE(hy->holds);
  CHECK(r.best().name == "holder");
  CHECK(r.any_holds());
}

TEST_CASE("smaller discount breaks the certificate") {
  auto p = testing::model_b(1000);
  p.lambda = 0.5;
  const auto r = check_contraction(p);
  CHECK(r.find("holder")->lhs == 1.5);
  CHECK_FALSE(r.find("holder")->holds);
  CHECK_FALSE(r.any_holds());
}

TEST_CASE("zero output weight always passes") {
  auto p = testing::model_b(100);
  p.alpha = GridFunction::zeros(1.0, 100);
  const auto r = check_contraction(p);
  for (const auto& e : r.entries) {
    CHECK(e.rhs == 0.0);
    CHECK(e.holds);
  }
}

TEST_CASE("alpha outside V is refused") {
  try {
    check_contraction(testing::model_a(100));
    FAIL("expected AlphaNotInV");
  } catch (const ValidationError& e) {
    CHECK(e.has(ViolationKind::AlphaNotInV));
  }
}

TEST_CASE("entries are internally consistent") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 40; ++k) {
    const auto r = check_contraction(testing::random_model(rng, k, 200));
    for (const auto& e : r.entries) {
      CHECK(e.margin == e.lhs - e.rhs);
      CHECK(e.holds == (e.lhs > e.rhs));
    }
    CHECK(r.best().margin >= r.entries.front().margin);
    CHECK(r.best().margin >= r.entries.back().margin);
  }
}

TEST_CASE("quadratic-revenue variants") {
  const auto p = testing::model_b(1000);
  const auto base = check_contraction(p);
  const auto r = check_quadratic_revenue(p);
  CHECK(r.constants.multiplier_norm_loose == 1.5);
  CHECK(r.constants.multiplier_norm == 1.0);
  CHECK(r.constants.loose_bound_valid);
  // [R'] = 2a = 1, so the exact variants coincide with the certificate.
  CHECK(r.find("holder_exact")->margin == Approx(base.find("holder")->margin).epsilon(1e-14));
  CHECK(r.find("holder_loose")->margin <= r.find("holder_exact")->margin);
  CHECK(r.find("hille_yosida_loose")->margin <= r.find("hille_yosida_exact")->margin);

  auto flat = p;
  flat.revenue = RevenueSpec::quadratic(0.0, 1.0);
  for (const auto& e : check_quadratic_revenue(flat).entries) {
    CHECK(e.rhs == 0.0);
    CHECK(e.holds);
  }

  auto log = p;
  log.revenue = RevenueSpec::log();
  try {
    check_quadratic_revenue(log);
    FAIL("expected WrongFamily");
  } catch (const ValidationError& e) {
    CHECK(e.has(ViolationKind::WrongFamily));
  }
}

TEST_CASE("loose multiplier bound validity flag") {
  auto p = testing::model_b(100);
  // min beta1 >= beta0 / (1 + beta0) keeps the loose bound above the exact norm.
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.05, 3.0);
  for (int k = 0; k < 50; ++k) {
    p.cost.beta0 = u(rng);
    p.cost.beta1 = GridFunction::constant(1.0, 100, u(rng));
    const auto c = check_quadratic_revenue(p).constants;
    const bool expected = p.cost.beta1[0] >= p.cost.beta0 / (1.0 + p.cost.beta0);
    CHECK(c.loose_bound_valid == expected);
    CHECK(c.loose_bound_valid == (c.multiplier_norm_loose >= c.multiplier_norm));
  }
}
