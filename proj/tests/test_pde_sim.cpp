#include <doctest.h>

#include <cmath>
#include <complex>
#include <sstream>

#include "models.hpp"
#include "vintage/equilibrium.hpp"
#include "vintage/errors.hpp"
#include "vintage/operators.hpp"
#include "vintage/pde_sim.hpp"

using namespace vintage;
using doctest::Approx;

namespace {

ControlPair zero_control(const ModelParams& p) { return {0.0, GridFunction::zeros(p.s_bar, p.n_cells())}; }

}  // namespace

TEST_CASE("one step without investment is decay and translation") {
  const auto p = testing::model_a(10);
  const auto next = sim::step(GridFunction::constant(1.0, 10, 1.0), zero_control(p), p);
  CHECK(next[0] == 0.0);
  for (std::size_t j = 1; j < next.size(); ++j) CHECK(next[j] == Approx(std::exp(-0.1)).epsilon(1e-15));

  const auto boundary = sim::step(GridFunction::zeros(1.0, 10), {1.0, GridFunction::zeros(1.0, 10)}, p);
  CHECK(boundary[0] == 1.0);
}

TEST_CASE("the equilibrium is a fixed point of the step") {
  const auto p = testing::model_a(500);
  const auto eq = assemble(p);
  const auto next = sim::step(eq.x_bar, eq.u_star, p);
  CHECK((next - eq.x_bar).max_abs() <= p.h() * p.h());
}

TEST_CASE("initial cohort output follows the exact transport") {
  const auto p = testing::model_a(1000);
  const auto traj = sim::simulate(GridFunction::constant(1.0, 1000, 1.0),
                                  sim::OpenLoopConstant{zero_control(p)}, 2.0, p);
  REQUIRE(traj.output.size() == 2001);
  for (std::size_t k = 0; k < traj.output.size(); ++k) {
    const double tau = traj.times[k];
    const double exact = tau <= 1.0 ? std::exp(-tau) * (1.0 - tau) : 0.0;
    CHECK(std::abs(traj.output[k] - exact) <= 1e-10);
  }
}

TEST_CASE("transport without investment is exact and nilpotent") {
  const auto p = testing::model_a(50);
  const auto x0 = GridFunction::sample(1.0, 50, [](double s) { return 1.0 + std::sin(5 * s); });
  auto y = x0;
  for (int k = 1; k < 50; ++k) {
    y = sim::step(y, zero_control(p), p);
    const auto shifted = semigroup_apply(x0, k * p.h(), p.mu);
    for (std::size_t j = static_cast<std::size_t>(k); j < y.size(); ++j) {
      CHECK(y[j] == Approx(shifted[j]).epsilon(1e-13));
    }
  }
  // After s_bar / h steps only the one-sided value at age s_bar is left,
  // and the output sees nothing.
  y = sim::step(y, zero_control(p), p);
  for (std::size_t j = 0; j + 1 < y.size(); ++j) CHECK(y[j] == 0.0);
  const auto traj = sim::simulate(x0, sim::OpenLoopConstant{zero_control(p)}, 1.0, p);
  CHECK(traj.output.back() == 0.0);
}

TEST_CASE("mass moves one cell per step when nothing decays") {
  auto p = testing::model_a(40);
  p.mu = 1e-300;  // validation needs mu > 0; the decay factor is exactly one
  const auto x0 = GridFunction::sample(1.0, 40, [](double s) { return 2.0 + std::cos(3 * s); });
  const auto y = sim::step(x0, zero_control(p), p);
  double before = 0.0, after = 0.0;
  for (int j = 0; j < 40; ++j) before += x0[j];
  for (int j = 1; j <= 40; ++j) after += y[j];
  CHECK(after == before);
}

TEST_CASE("boundary injection settles on the exponential profile") {
  const auto p = testing::model_a(100);
  const auto traj = sim::simulate(GridFunction::zeros(1.0, 100),
                                  sim::OpenLoopConstant{{1.0, GridFunction::zeros(1.0, 100)}}, 3.0, p);
  for (std::size_t j = 0; j < traj.final_state.size(); ++j) {
    CHECK(traj.final_state[j] == Approx(std::exp(-traj.final_state.node(j))).epsilon(1e-13));
  }
}

TEST_CASE("constant control agrees with the mild formula") {
  const int n = 400;
  auto p = testing::model_a(n);
  p.mu = 0.8;
  const auto x0 = GridFunction::sample(1.0, n, [](double s) { return 1.0 - s * s; });
  const ControlPair u{0.5, GridFunction::sample(1.0, n, [](double s) { return std::cos(s); })};
  const auto traj = sim::simulate(x0, sim::OpenLoopConstant{u}, 1.5, p);
  using C = std::complex<double>;
  // int_0^m e^{-mu r} cos(s - r) dr
  auto conv = [&](double s, double m) {
    const C k(p.mu, 1.0);
    return std::real(std::exp(C(0.0, s)) * (1.0 - std::exp(-k * m)) / k);
  };
  for (int probe : {60, 200, 400, 480, 600}) {
    const double t = probe * p.h();
    const auto free = semigroup_apply(x0, t, p.mu);
    const auto& y = traj.snapshots[static_cast<std::size_t>(probe)];
    double worst = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
      const double s = y.node(j);
      const double forced = s >= t ? conv(s, t) : u.u0 * std::exp(-p.mu * s) + conv(s, s);
      if (std::abs(s - t) < 1e-12) continue;  // jump of the mild solution
      worst = std::max(worst, std::abs(y[j] - free[j] - forced));
    }
    CHECK(worst <= p.h() * p.h());
  }
}

TEST_CASE("equilibrium feedback stays put") {
  const auto p = testing::model_a(1000);
  const auto eq = assemble(p);
  sim::SimulationOptions opt;
  opt.snapshot_every = 0;
  opt.reference = eq.x_bar;
  const auto traj = sim::simulate(eq.x_bar, sim::StationaryEquilibriumFeedback{eq}, 5.0, p, opt);
  CHECK(traj.max_drift <= 1e-3);
  CHECK(traj.snapshots.size() == 2);
  CHECK(traj.output.back() == Approx(eq.output).epsilon(1e-12));
}

TEST_CASE("drift from the continuous equilibrium grows at most linearly at order h^2") {
  // Exact continuous equilibrium of MODEL-A, started on the grid.
  const double eta = 0.71457739696297014;
  for (int n : {200, 400}) {
    const auto p = testing::model_a(n);
    const auto eq = assemble(p);
    const auto x0 = GridFunction::sample(1.0, n, [&](double s) { return eta * testing::model_a_w1(s); });
    double previous_drift = 0.0;
    for (double horizon : {0.5, 1.0, 2.0}) {
      sim::SimulationOptions opt;
      opt.snapshot_every = 0;
      opt.reference = x0;
      const auto traj = sim::simulate(x0, sim::StationaryEquilibriumFeedback{eq}, horizon, p, opt);
      const double steps = horizon / p.h();
      CHECK(traj.max_drift <= 10.0 * steps * p.h() * p.h() * p.h());
      CHECK(traj.max_drift >= previous_drift);
      previous_drift = traj.max_drift;
    }
  }
}

TEST_CASE("profit of the stationary run matches the constant integrand") {
  const auto p = testing::model_a(1000);
  const auto eq = assemble(p);
  const auto traj = sim::simulate(eq.x_bar, sim::StationaryEquilibriumFeedback{eq}, 5.0, p);
  const auto pr = sim::profit(traj, p);
  const double flow = p.revenue.value(eq.output) - cost(eq.u_star, p.cost);
  // Continuous MODEL-A flow R(Q) - h0(u*) from the exact constants.
  CHECK(std::abs(flow - (0.24468957187481290 - 0.072023164064363156)) <= 1e-6);
  const double exact = (1.0 - std::exp(-5.0)) * flow;
  CHECK(pr.value == Approx(exact).epsilon(1e-6));
  CHECK(pr.value == traj.profit_to_date.back());
  CHECK(pr.tail_bound == Approx(std::exp(-5.0) * std::abs(flow)).epsilon(1e-12));

  const auto longer = sim::profit(sim::simulate(eq.x_bar, sim::StationaryEquilibriumFeedback{eq}, 10.0, p), p);
  CHECK(std::abs(longer.value - pr.value) <= pr.tail_bound);
}

TEST_CASE("no capital and no investment earns nothing") {
  for (auto r : {RevenueSpec::quadratic(0.5, 1.0), RevenueSpec::log(), RevenueSpec::power(0.5)}) {
    auto p = testing::model_a(50);
    p.revenue = r;
    const auto traj = sim::simulate(GridFunction::zeros(1.0, 50), sim::OpenLoopConstant{zero_control(p)}, 2.0, p);
    CHECK(sim::profit(traj, p).value == 0.0);
  }
}

TEST_CASE("invalid simulations are rejected") {
  const auto p = testing::model_a(100);
  const auto x0 = GridFunction::zeros(1.0, 100);
  CHECK_THROWS_AS(sim::simulate(x0, sim::OpenLoopConstant{zero_control(p)}, 0.0105, p), ValidationError);
  CHECK_THROWS_AS(sim::simulate(x0, sim::OpenLoopConstant{zero_control(p)}, -1.0, p), ValidationError);
  sim::OpenLoopTimeTable table;
  table.controls.assign(5, zero_control(p));
  CHECK_THROWS_AS(sim::simulate(x0, table, 0.1, p), ValidationError);
  CHECK_NOTHROW(sim::simulate(x0, table, 0.05, p));
  CHECK_THROWS_AS(sim::simulate(GridFunction::zeros(1.0, 50), sim::OpenLoopConstant{zero_control(p)}, 0.1, p),
                  ValidationError);
}

TEST_CASE("trajectory bookkeeping and CSV export") {
  const auto p = testing::model_a(10);
  sim::SimulationOptions opt;
  opt.snapshot_every = 2;
  const auto traj = sim::simulate(GridFunction::constant(1.0, 10, 1.0),
                                  sim::OpenLoopConstant{zero_control(p)}, 0.5, p, opt);
  CHECK(traj.dt == 0.1);
  CHECK(traj.times.size() == 6);
  CHECK(traj.snapshot_steps == std::vector<int>{0, 2, 4, 5});

  std::ostringstream plain, full;
  sim::write_trajectory_csv(plain, traj, false);
  sim::write_trajectory_csv(full, traj, true);
  const std::string text = plain.str();
  CHECK(text.rfind("tau,Q,profit\r\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 7);
  const std::string wide = full.str();
  CHECK(wide.rfind("tau,Q,profit,y0,", 0) == 0);
  // Row for step 1 has no snapshot: eleven empty profile cells.
  const auto second_row = wide.find("\r\n", wide.find("\r\n") + 2) + 2;
  const auto row = wide.substr(second_row, wide.find("\r\n", second_row) - second_row);
  CHECK(row.substr(row.size() - 11) == ",,,,,,,,,,,");
}
