// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>

#include <json.hpp>

#include "models.hpp"
#include "vintage/commands.hpp"
#include "vintage/conditions.hpp"
#include "vintage/config.hpp"
#include "vintage/discrete_oracle.hpp"
#include "vintage/equilibrium.hpp"
#include "vintage/operators.hpp"
#include "vintage/pde_sim.hpp"

using namespace vintage;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// MODEL-A reference constants recomputed from the exact antiderivatives.
double exact_c1() { return testing::model_a_c1(); }
double exact_eta() { return 1.0 / (1.0 + exact_c1()); }

Outcome closed_form_vs_oracle() {
  const int n = 2000;
  const auto p = testing::model_a(n);
  const auto eq = assemble(p);
  const auto ops = oracle::build(p, n);
  const auto r = oracle::picard_fixed_point(ops, p, GridFunction::zeros(1.0, n), 1e-12, 10000);
  const double dist = l2_norm(eq.x_bar - r.fixed_point);
  const double eta_oracle = p.revenue.derivative(inner(p.alpha, r.fixed_point));
  const double gap = std::abs(eq.eta - eta_oracle);
  return {dist <= 1e-4 && gap <= 1e-6,
          fmt("|x_closed - x_oracle| = %.3g, |eta - R'(<alpha,x_fix>)| = %.3g", dist, gap)};
}

Outcome derived_constants() {
  const auto eq = assemble(testing::model_a(1000));
  const double dc = std::abs(eq.c1 - exact_c1());
  const double de = std::abs(eq.eta - exact_eta());
  // Frozen values must agree with the recomputation before they are used.
  const bool frozen = std::abs(exact_c1() - 0.39942853531346814) <= 1e-15 &&
                      std::abs(exact_eta() - 0.71457739696297014) <= 1e-15;
  return {frozen && dc <= 1e-4 && de <= 1e-4,
          fmt("c1 = %.9f (err %.2g), eta = %.9f", eq.c1, dc, eq.eta) + fmt(" (err %.2g)", de)};
}

double stationary_drift(int n, double* discrete_drift) {
  const auto p = testing::model_a(n);
  const auto eq = assemble(p);
  const double eta = exact_eta();
  const auto x_exact =
      GridFunction::sample(1.0, n, [&](double s) { return eta * testing::model_a_w1(s); });
  sim::SimulationOptions opt;
  opt.snapshot_every = 0;
  opt.reference = x_exact;
  const auto traj = sim::simulate(x_exact, sim::StationaryEquilibriumFeedback{eq}, 5.0, p, opt);

  opt.reference = eq.x_bar;
  *discrete_drift =
      sim::simulate(eq.x_bar, sim::StationaryEquilibriumFeedback{eq}, 5.0, p, opt).max_drift;
  return traj.max_drift;
}

Outcome stationarity() {
  double discrete_coarse = 0.0, discrete_fine = 0.0;
  const double coarse = stationary_drift(1000, &discrete_coarse);
  const double fine = stationary_drift(2000, &discrete_fine);
  const double ratio = coarse / fine;
  return {coarse <= 1e-3 && discrete_coarse <= 1e-3 && ratio >= 3.5 && ratio <= 4.5,
          fmt("drift %.3g at n=1000, %.3g at n=2000, ratio %.3f", coarse, fine, ratio) +
              fmt("; from the discrete profile %.2g", discrete_coarse)};
}

Outcome certificate() {
  const auto p = testing::model_b(1000);
  const auto report = check_contraction(p);
  const auto* holder = report.find("holder");
  const double expected = 2.0 - (8.0 / 3.0) / std::sqrt(2.0);
  const auto ops = oracle::build(p, 1000);
  const auto r = oracle::picard_fixed_point(ops, p, GridFunction::zeros(1.0, 1000), 1e-12, 10000);
  const double bound = holder->rhs / holder->lhs + 0.05;
  return {holder->holds && std::abs(holder->margin - expected) <= 1e-3 && r.fitted_rate <= bound,
          fmt("margin %.6f (derived %.6f), fitted rate %.4f", holder->margin, expected,
              r.fitted_rate) +
              fmt(" <= %.4f", bound)};
}

Outcome operator_norm() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> mu_d(0.1, 5.0), s_d(0.2, 3.0);
  double worst_excess = -INFINITY;
  for (int k = 0; k < 20; ++k) {
    const double mu = mu_d(rng), s_bar = s_d(rng);
    ModelParams p;
    p.mu = mu;
    p.lambda = 1.0;
    p.s_bar = s_bar;
    p.alpha = GridFunction::constant(s_bar, 400, 1.0);
    p.cost = {0.5, GridFunction::constant(s_bar, 400, 0.5), 0.0, GridFunction::zeros(s_bar, 400)};
    const auto ops = oracle::build(p, 400);
    const double norm = oracle::discrete_operator_norm(ops.adjoint_inverse, ops.weights);
    worst_excess = std::max(worst_excess, norm - std::min(1.0 / mu, s_bar / std::sqrt(2.0)));
  }
  return {worst_excess <= 1e-3, fmt("max(norm - bound) over 20 pairs = %.3g", worst_excess)};
}

struct SuiteStats {
  double scalar = 0.0;
  double log_gap = 0.0;
  double power_residual = 0.0;
  double extremality = 0.0;
  double models = 0;
};

const SuiteStats& model_suite() {
  static const SuiteStats stats = [] {
    SuiteStats s;
    std::mt19937_64 rng(99);
    for (int k = 0; k < 200; ++k) {
      const auto p = testing::random_model(rng, k, 300, k % 2 == 0);
      const auto eq = assemble(p);
      ++s.models;
      s.scalar = std::max(s.scalar, eq.residuals.scalar_equation);
      s.extremality = std::max(s.extremality, extremality_residual(eq, p));
      if (p.revenue.family() == RevenueFamily::Log) {
        s.log_gap = std::max(s.log_gap,
                             std::abs(eq.eta - solve_eta_bisection(p.revenue, eq.c1, eq.c2)));
      }
      if (p.revenue.family() == RevenueFamily::Power) {
        s.power_residual = std::max(
            s.power_residual, std::abs(eq.eta - p.revenue.derivative(eq.c2 + eq.c1 * eq.eta)));
      }
    }
    return s;
  }();
  return stats;
}

Outcome scalar_solver() {
  const auto& s = model_suite();
  return {s.scalar <= 1e-10 && s.log_gap <= 1e-9 && s.power_residual <= 1e-12,
          fmt("%.0f models: max residual %.2g, log closed vs bisection %.2g", s.models, s.scalar,
              s.log_gap) +
              fmt(", power residual %.2g", s.power_residual)};
}

Outcome extremality() {
  const auto& s = model_suite();
  return {s.extremality <= 1e-10, fmt("max residual over %.0f models %.2g", s.models, s.extremality)};
}

Outcome exact_transport() {
  const auto p = testing::model_a(1000);
  const auto traj = sim::simulate(GridFunction::constant(1.0, 1000, 1.0),
                                  sim::OpenLoopConstant{{0.0, GridFunction::zeros(1.0, 1000)}},
                                  3.0, p);
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.output.size(); ++k) {
    const double tau = traj.times[k];
    const double exact = tau <= 1.0 ? std::exp(-tau) * (1.0 - tau) : 0.0;
    worst = std::max(worst, std::abs(traj.output[k] - exact));
  }
  return {worst <= 1e-10, fmt("max |Q - e^-tau (1 - tau)| over %.0f steps = %.2g",
                              static_cast<double>(traj.output.size()), worst)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const fs::path base =
      fs::temp_directory_path() / ("vintage-eq-acceptance-" + std::to_string(::getpid()));
  nlohmann::json doc = {
      {"model",
       {{"mu", 1}, {"lambda", 1}, {"s_bar", 1}, {"alpha", "linear 1 -1"}, {"beta0", 0.5},
        {"beta1", 0.5}, {"revenue", {{"family", "quadratic"}, {"a", 0.5}, {"b", 1}}}}},
      {"n_cells", 500},
      {"sweep", {{"parameter", "lambda"}, {"from", 0.25}, {"to", 4}, {"count", 64}, {"threads", 1}}}};
  std::ostringstream err;
  const int seq = cli::cmd_sweep(cli::parse_config(doc), base / "sequential", err);
  doc["sweep"]["threads"] = 8;
  const int par = cli::cmd_sweep(cli::parse_config(doc), base / "parallel", err);
  const std::string a = slurp(base / "sequential" / "sweep.csv");
  const std::string b = slurp(base / "parallel" / "sweep.csv");
  fs::remove_all(base);
  const bool same = !a.empty() && a == b;
  return {seq == 0 && par == 0 && same,
          std::string("64 lambda values, 8 threads vs 1: ") + (same ? "byte-identical" : "differ")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_seconds;
  };
  const Criterion criteria[] = {
      {"closed form vs oracle", closed_form_vs_oracle, 10.0},
      {"derived constants", derived_constants, 0.0},
      {"stationarity", stationarity, 30.0},
      {"contraction certificate", certificate, 0.0},
      {"operator norm bound", operator_norm, 0.0},
      {"scalar solver suite", scalar_solver, 0.0},
      {"extremality", extremality, 0.0},
      {"exact transport", exact_transport, 0.0},
      {"sweep determinism", determinism, 0.0},
  };

  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0.0 && seconds > c.budget_seconds) {
      o.pass = false;
      o.detail += fmt("; over the %.0f s budget", c.budget_seconds);
    }
    if (!o.pass) ++failed;
    std::printf("%s [%d] %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", index, c.name,
                o.detail.c_str(), seconds);
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
