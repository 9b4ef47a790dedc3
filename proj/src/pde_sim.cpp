#include "vintage/pde_sim.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace vintage::sim {

namespace {

// A jump in the state travelling along a characteristic. The node it sits on
// stores the value on the older-capital side.
struct TravellingJump {
  std::size_t node;
  double size;  ///< older-side value minus newer-side value
};

const ControlPair& control_at(const ControlPolicy& policy, std::size_t k) {
  if (const auto* c = std::get_if<OpenLoopConstant>(&policy)) return c->control;
  if (const auto* t = std::get_if<OpenLoopTimeTable>(&policy)) {
    return t->controls[std::min(k, t->controls.size() - 1)];
  }
  return std::get<StationaryEquilibriumFeedback>(policy).equilibrium.u_star;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

GridFunction step(const GridFunction& y, const ControlPair& u, const ModelParams& params) {
  require_same_grid(y, u.u1, "transport step");
  const auto w = detail::exponential_cell_weights(params.mu, y.h());
  GridFunction next = GridFunction::zeros(y.s_bar(), y.n_cells());
  next[0] = u.u0;
  for (std::size_t j = 1; j < y.size(); ++j) {
    next[j] = w.decay * y[j - 1] + w.near * u.u1[j] + w.far * u.u1[j - 1];
  }
  return next;
}

Trajectory simulate(const GridFunction& x0, const ControlPolicy& policy, double horizon,
                    const ModelParams& params, const SimulationOptions& options) {
  require_same_grid(x0, params.alpha, "simulation initial state");
  const double h = x0.h();
  const double steps_real = horizon / h;
  const double steps_rounded = std::round(steps_real);
  if (!(horizon >= 0.0) || std::abs(steps_real - steps_rounded) > 1e-9 * std::max(1.0, steps_real)) {
    throw ValidationError(ViolationKind::InvalidInput,
                          "horizon " + format_number(horizon) +
                              " is not a nonnegative multiple of h = " + format_number(h));
  }
  const auto steps = static_cast<std::size_t>(steps_rounded);

  if (const auto* t = std::get_if<OpenLoopTimeTable>(&policy)) {
    if (t->controls.size() < std::max<std::size_t>(steps, 1)) {
      throw ValidationError(ViolationKind::InvalidInput,
                            "time table has " + std::to_string(t->controls.size()) +
                                " controls for " + std::to_string(steps) + " steps");
    }
    for (const auto& c : t->controls) require_same_grid(x0, c.u1, "time table control");
  } else {
    require_same_grid(x0, control_at(policy, 0).u1, "policy control");
  }

  Trajectory traj;
  traj.dt = h;
  const double decay = std::exp(-params.mu * h);
  std::vector<TravellingJump> jumps;

  auto record = [&](std::size_t k, const GridFunction& y) {
    const double tau = static_cast<double>(k) * h;
    double q = inner(params.alpha, y);
    // The trapezoid sees the older-side value at a jump node; the exact
    // integral uses the mean of both one-sided values there.
    for (const auto& jump : jumps) q -= 0.5 * h * params.alpha[jump.node] * jump.size;
    const double c = cost(control_at(policy, k), params.cost);
    const double integrand = std::exp(-params.lambda * tau) * (params.revenue.value(q) - c);

    double acc = 0.0;
    if (k > 0) {
      const double prev_tau = tau - h;
      const double prev = std::exp(-params.lambda * prev_tau) *
                          (params.revenue.value(traj.output.back()) - traj.investment_cost.back());
      acc = traj.profit_to_date.back() + 0.5 * h * (prev + integrand);
    }
    traj.times.push_back(tau);
    traj.output.push_back(q);
    traj.investment_cost.push_back(c);
    traj.profit_to_date.push_back(acc);

    const bool snapshot = k == 0 || k == steps ||
                          (options.snapshot_every > 0 && k % options.snapshot_every == 0);
    if (snapshot) {
      traj.snapshot_steps.push_back(static_cast<int>(k));
      traj.snapshots.push_back(y);
    }
    if (options.reference) {
      traj.max_drift = std::max(traj.max_drift, l2_norm(y - *options.reference));
    }
  };

  GridFunction y = x0;
  record(0, y);
  for (std::size_t k = 0; k < steps; ++k) {
    const ControlPair& u = control_at(policy, k);

    std::vector<TravellingJump> moved;
    for (const auto& jump : jumps) {
      if (jump.node + 1 < y.size()) moved.push_back({jump.node + 1, jump.size * decay});
    }
    const double created = decay * (y[0] - u.u0);
    if (created != 0.0) moved.push_back({1, created});
    jumps = std::move(moved);

    y = step(y, u, params);
    record(k + 1, y);
  }
  traj.final_state = std::move(y);
  return traj;
}

ProfitReport profit(const Trajectory& traj, const ModelParams& params) {
  ProfitReport report;
  const std::size_t m = traj.times.size();
  double acc = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double v = std::exp(-params.lambda * traj.times[k]) *
                     (params.revenue.value(traj.output[k]) - traj.investment_cost[k]);
    if (k > 0) acc += 0.5 * traj.dt * (prev + v);
    prev = v;
  }
  report.value = acc;
  report.tail_bound = m == 0 ? 0.0 : std::abs(prev) / params.lambda;
  return report;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, bool include_profiles) {
  const std::size_t nodes = traj.final_state.size();
  out << "tau,Q,profit";
  if (include_profiles) {
    for (std::size_t j = 0; j < nodes; ++j) out << ",y" << j;
  }
  out << "\r\n";

  std::size_t next_snapshot = 0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    out << format_number(traj.times[k]) << ',' << format_number(traj.output[k]) << ','
        << format_number(traj.profit_to_date[k]);
    if (include_profiles) {
      const bool has = next_snapshot < traj.snapshot_steps.size() &&
                       traj.snapshot_steps[next_snapshot] == static_cast<int>(k);
      for (std::size_t j = 0; j < nodes; ++j) {
        out << ',';
        if (has) out << format_number(traj.snapshots[next_snapshot][j]);
      }
      if (has) ++next_snapshot;
    }
    out << "\r\n";
  }
}

}  // namespace vintage::sim
