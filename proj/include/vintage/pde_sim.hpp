#pragma once

#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

#include "vintage/equilibrium.hpp"
#include "vintage/grid_function.hpp"
#include "vintage/model.hpp"
#include "vintage/operators.hpp"

namespace vintage::sim {

struct OpenLoopConstant {
  ControlPair control;
};

/// One control per time step; must cover the whole horizon.
struct OpenLoopTimeTable {
  std::vector<ControlPair> controls;
};

/// Applies the equilibrium investment u* at every step.
struct StationaryEquilibriumFeedback {
  EquilibriumResult equilibrium;
};

using ControlPolicy =
    std::variant<OpenLoopConstant, OpenLoopTimeTable, StationaryEquilibriumFeedback>;

struct SimulationOptions {
  /// Record every k-th state; 0 keeps only the initial and final states.
  int snapshot_every = 1;
  /// When set, the largest L2 distance of any state to this profile is tracked.
  std::optional<GridFunction> reference;
};

/// Time series of the age-structured transport with dt = h.
struct Trajectory {
  double dt = 0.0;
  std::vector<double> times;
  std::vector<double> output;           ///< Q(tau_k) = (alpha | y_k)
  std::vector<double> investment_cost;  ///< h0(u(tau_k))
  std::vector<double> profit_to_date;
  std::vector<int> snapshot_steps;
  std::vector<GridFunction> snapshots;
  GridFunction final_state;
  double max_drift = 0.0;  ///< only meaningful with a reference profile
};

/// One characteristic step of length h:
///   y+(s_j) = e^{-mu h} y(s_{j-1}) + int_0^h e^{-mu(h - r)} u1(s_{j-1} + r) dr,
///   y+(0)   = u0.
GridFunction step(const GridFunction& y, const ControlPair& u, const ModelParams& params);

/// Throws ValidationError when the horizon is not a multiple of h, the
/// control grids differ from the state grid, or a time table is too short.
Trajectory simulate(const GridFunction& x0, const ControlPolicy& policy, double horizon,
                    const ModelParams& params, const SimulationOptions& options = {});

struct ProfitReport {
  double value = 0.0;
  /// e^{-lambda T} |R(Q(T)) - h0(u(T))| / lambda
  double tail_bound = 0.0;
};

/// Trapezoid-in-time discounted profit of a finished trajectory.
ProfitReport profit(const Trajectory& trajectory, const ModelParams& params);

/// Columns tau, Q, profit; with include_profiles, one y_j column per node
/// (left empty on rows without a snapshot).
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory,
                          bool include_profiles);

}  // namespace vintage::sim
