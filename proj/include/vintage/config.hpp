#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vintage/grid_function.hpp"
#include "vintage/model.hpp"

namespace vintage::cli {

/// A grid function given by expression, resolved once the grid is known.
///   "const c"              c
///   "linear a b"           a + b s
///   "samples v0 v1 ..."    node values on their own uniform grid over
///                          [0, s_bar], linearly resampled when needed
/// A bare JSON number means "const", a JSON array means "samples".
struct GridExpr {
  enum class Kind { Const, Linear, Samples };
  Kind kind = Kind::Const;
  double a = 0.0;
  double b = 0.0;
  std::vector<double> samples;

  static GridExpr constant(double c) { return {Kind::Const, c, 0.0, {}}; }
  static GridExpr parse(const nlohmann::json& j);
  GridFunction resolve(double s_bar, int n_cells) const;
};

struct RevenueConfig {
  std::string family = "quadratic";  ///< quadratic | log | power | linear
  double a = 0.0;
  double b = 0.0;
  double gamma = 0.0;

  RevenueSpec build() const;
};

struct ModelSpec {
  double mu = 0.0;
  double lambda = 0.0;
  double s_bar = 0.0;
  GridExpr alpha;
  double beta0 = 0.0;
  GridExpr beta1;
  double q0 = 0.0;
  GridExpr q1;
  RevenueConfig revenue;
  double beta_floor = 1e-9;

  /// Resolves the expressions on an n-cell grid. Does not validate.
  ModelParams resolve(int n_cells) const;
};

struct PolicyConfig {
  enum class Mode { Equilibrium, Constant, Table };
  struct Entry {
    double u0 = 0.0;
    GridExpr u1;
  };
  Mode mode = Mode::Equilibrium;
  Entry constant;
  std::vector<Entry> table;
};

struct SimulateConfig {
  double horizon = 0.0;
  PolicyConfig policy;
  /// Initial state; empty means the equilibrium profile.
  std::optional<GridExpr> initial;
  bool write_profiles = false;
};

struct SweepConfig {
  std::string parameter;
  double from = 0.0;
  double to = 0.0;
  int count = 0;
  int threads = 1;

  std::vector<double> values() const;
};

struct OracleConfig {
  std::vector<int> resolutions;
  double tol = 1e-12;
  int max_iter = 10000;
};

struct RunConfig {
  ModelSpec model;
  int n_cells = 1000;
  std::optional<SimulateConfig> simulate;
  std::optional<SweepConfig> sweep;
  std::optional<OracleConfig> oracle;
};

/// Throws ValidationError(InvalidInput) on malformed documents.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace vintage::cli
