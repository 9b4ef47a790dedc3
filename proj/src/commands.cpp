#include "vintage/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "vintage/conditions.hpp"
#include "vintage/discrete_oracle.hpp"
#include "vintage/equilibrium.hpp"
#include "vintage/errors.hpp"
#include "vintage/json_writer.hpp"
#include "vintage/pde_sim.hpp"

namespace vintage::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kSufficientNote =
    "sufficient conditions only: a failing entry does not rule out existence or uniqueness";

std::ofstream open_output(const fs::path& dir, const char* name) {
  fs::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) {
    throw ValidationError(ViolationKind::InvalidInput,
                          "cannot write " + (dir / name).string());
  }
  return out;
}

void write_json_file(const fs::path& dir, const char* name, const json& doc) {
  auto out = open_output(dir, name);
  write_json(out, doc);
}

json entry_json(const ConditionEntry& e) {
  return {{"lhs", e.lhs}, {"rhs", e.rhs}, {"holds", e.holds}, {"margin", e.margin}};
}

json report_json(const ConditionReport& r) {
  json entries = json::object();
  for (const auto& e : r.entries) entries[e.name] = entry_json(e);
  const auto& c = r.constants;
  return {
      {"entries", entries},
      {"holds", r.any_holds()},
      {"best", r.best().name},
      {"constants",
       {{"adjoint_inverse_bound_hille_yosida", c.adjoint_inverse_bound_hille_yosida},
        {"adjoint_inverse_bound_holder", c.adjoint_inverse_bound_holder},
        {"b_norm", c.b_norm},
        {"multiplier_norm", c.multiplier_norm},
        {"multiplier_norm_loose", c.multiplier_norm_loose},
        {"loose_bound_valid", c.loose_bound_valid},
        {"revenue_prime_lipschitz", c.revenue_prime_lipschitz},
        {"g0_prime_lipschitz", c.g0_prime_lipschitz},
        {"alpha_v_norm_sq", c.alpha_v_norm_sq},
        {"alpha_alt_integral", c.alpha_alt_integral}}},
  };
}

// Smallest rhs / lhs over the certificate variants: the contraction factor
// the certificate promises for T.
double promised_rate(const ConditionReport& r) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : r.entries) best = std::min(best, e.rhs / e.lhs);
  return best;
}

std::optional<ConditionReport> try_contraction(const ModelParams& params) {
  try {
    return check_contraction(params);
  } catch (const ValidationError& e) {
    if (e.has(ViolationKind::AlphaNotInV)) return std::nullopt;
    throw;
  }
}

ModelParams resolved(const RunConfig& cfg, int n) { return validate(cfg.model.resolve(n)); }

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << "\r\n";
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    err << "vintage-eq: invalid input: " << e.what() << '\n';
    return kInputError;
  } catch (const NumericalError& e) {
    err << "vintage-eq: numerical failure: " << e.what() << '\n';
    if (!e.trace().empty()) {
      err << "last step norms:";
      for (double v : e.trace()) err << ' ' << format_double(v);
      err << '\n';
    }
    return kNumericalError;
  } catch (const fs::filesystem_error& e) {
    err << "vintage-eq: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "vintage-eq: numerical failure: " << e.what() << '\n';
    return kNumericalError;
  }
}

ControlPair resolve_entry(const PolicyConfig::Entry& e, double s_bar, int n) {
  return {e.u0, e.u1.resolve(s_bar, n)};
}

}  // namespace

json conditions_summary(const ModelParams& params) {
  json out;
  if (auto report = try_contraction(params)) {
    out = report_json(*report);
    out["applicable"] = true;
  } else {
    out["applicable"] = false;
    out["reason"] = "alpha(s_bar) != 0, so alpha is outside V and the certificate does not apply";
  }
  out["note"] = kSufficientNote;
  return out;
}

int cmd_equilibrium(const RunConfig& cfg, const fs::path& out_dir, std::ostream& err) {
  return guarded(err, [&] {
    const ModelParams params = resolved(cfg, cfg.n_cells);
    const EquilibriumResult eq = assemble(params);

    json doc = {
        {"eta", eq.eta},
        {"c1", eq.c1},
        {"c2", eq.c2},
        {"output", eq.output},
        {"u0_star", eq.u_star.u0},
        {"n_cells", params.n_cells()},
        {"revenue", to_string(params.revenue.family())},
        {"residuals",
         {{"stationarity", eq.residuals.stationarity},
          {"scalar_equation", eq.residuals.scalar_equation},
          {"extremality", eq.residuals.extremality}}},
        {"conditions", conditions_summary(params)},
    };
    write_json_file(out_dir, "equilibrium.json", doc);

    auto csv = open_output(out_dir, "profiles.csv");
    write_csv_row(csv, {"s", "x_bar", "w1", "w2", "alpha_bar", "u1_star", "p_bar"});
    for (std::size_t j = 0; j < eq.x_bar.size(); ++j) {
      write_csv_row(csv, {format_double(eq.x_bar.node(j)), format_double(eq.x_bar[j]),
                          format_double(eq.w1[j]), format_double(eq.w2[j]),
                          format_double(eq.alpha_bar[j]), format_double(eq.u_star.u1[j]),
                          format_double(eq.p_bar[j])});
    }
    return int{kSuccess};
  });
}

int cmd_check(const RunConfig& cfg, const fs::path& out_dir, std::ostream& err) {
  return guarded(err, [&] {
    const ModelParams params = resolved(cfg, cfg.n_cells);
    json doc = {{"contraction", report_json(check_contraction(params))},
                {"note", kSufficientNote}};
    if (params.revenue.family() == RevenueFamily::Quadratic) {
      doc["quadratic_revenue"] = report_json(check_quadratic_revenue(params));
    }
    write_json_file(out_dir, "conditions.json", doc);
    return int{kSuccess};
  });
}

int cmd_simulate(const RunConfig& cfg, const fs::path& out_dir, std::ostream& err) {
  return guarded(err, [&] {
    if (!cfg.simulate) {
      throw ValidationError(ViolationKind::InvalidInput, "config has no 'simulate' block");
    }
    const SimulateConfig& sc = *cfg.simulate;
    const ModelParams params = resolved(cfg, cfg.n_cells);
    const int n = params.n_cells();
    const bool feedback = sc.policy.mode == PolicyConfig::Mode::Equilibrium;

    std::optional<EquilibriumResult> eq;
    if (feedback || !sc.initial) eq = assemble(params);
    const GridFunction x0 = sc.initial ? sc.initial->resolve(params.s_bar, n) : eq->x_bar;

    sim::ControlPolicy policy;
    switch (sc.policy.mode) {
      case PolicyConfig::Mode::Equilibrium:
        policy = sim::StationaryEquilibriumFeedback{*eq};
        break;
      case PolicyConfig::Mode::Constant:
        policy = sim::OpenLoopConstant{resolve_entry(sc.policy.constant, params.s_bar, n)};
        break;
      case PolicyConfig::Mode::Table: {
        sim::OpenLoopTimeTable table;
        for (const auto& e : sc.policy.table) {
          table.controls.push_back(resolve_entry(e, params.s_bar, n));
        }
        policy = std::move(table);
        break;
      }
    }

    sim::SimulationOptions options;
    options.snapshot_every = sc.write_profiles ? 1 : 0;
    if (feedback) options.reference = eq->x_bar;

    const sim::Trajectory traj = sim::simulate(x0, policy, sc.horizon, params, options);
    const sim::ProfitReport pr = sim::profit(traj, params);

    {
      auto csv = open_output(out_dir, "trajectory.csv");
      sim::write_trajectory_csv(csv, traj, sc.write_profiles);
    }
    json doc = {
        {"horizon", sc.horizon},
        {"dt", traj.dt},
        {"steps", static_cast<int>(traj.times.size()) - 1},
        {"final_output", traj.output.back()},
        {"profit", pr.value},
        {"tail_bound", pr.tail_bound},
    };
    if (feedback) doc["max_drift"] = traj.max_drift;
    write_json_file(out_dir, "summary.json", doc);
    return int{kSuccess};
  });
}

namespace {

struct SweepRow {
  double value = 0.0;
  EquilibriumResult eq;
  std::optional<ConditionReport> conditions;
};

void apply_parameter(ModelSpec& spec, const std::string& name, double v) {
  const std::string& family = spec.revenue.family;
  auto needs = [&](bool ok) {
    if (!ok) {
      throw ValidationError(ViolationKind::InvalidInput,
                            "sweep parameter '" + name + "' does not apply to revenue family " +
                                family);
    }
  };
  if (name == "lambda") {
    spec.lambda = v;
  } else if (name == "mu") {
    spec.mu = v;
  } else if (name == "s_bar") {
    spec.s_bar = v;
  } else if (name == "a") {
    needs(family == "quadratic");
    spec.revenue.a = v;
  } else if (name == "b") {
    needs(family == "quadratic" || family == "linear");
    spec.revenue.b = v;
  } else if (name == "gamma") {
    needs(family == "power");
    spec.revenue.gamma = v;
  } else {
    throw ValidationError(ViolationKind::InvalidInput,
                          "unknown sweep parameter '" + name +
                              "' (expected lambda, mu, s_bar, a, b or gamma)");
  }
}

std::string margin_cell(const std::optional<ConditionReport>& r, const char* name) {
  if (!r) return "";
  const ConditionEntry* e = r->find(name);
  return e ? format_double(e->margin) : "";
}

}  // namespace

int cmd_sweep(const RunConfig& cfg, const fs::path& out_dir, std::ostream& err) {
  return guarded(err, [&] {
    if (!cfg.sweep) throw ValidationError(ViolationKind::InvalidInput, "config has no 'sweep' block");
    const SweepConfig& sw = *cfg.sweep;
    const std::vector<double> values = sw.values();

    // Reject bad parameter names before spawning anything.
    {
      ModelSpec probe = cfg.model;
      apply_parameter(probe, sw.parameter, values.front());
    }

    std::vector<std::optional<SweepRow>> rows(values.size());
    std::vector<std::exception_ptr> failures(values.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < values.size(); i = next++) {
        try {
          ModelSpec spec = cfg.model;
          apply_parameter(spec, sw.parameter, values[i]);
          const ModelParams params = validate(spec.resolve(cfg.n_cells));
          rows[i] = SweepRow{values[i], assemble(params), try_contraction(params)};
        } catch (...) {
          failures[i] = std::current_exception();
        }
      }
    };

    const int threads = std::min<int>(sw.threads, static_cast<int>(values.size()));
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    // The first failure in sweep order decides, whatever the scheduling was.
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }

    auto csv = open_output(out_dir, "sweep.csv");
    write_csv_row(csv, {sw.parameter, "eta", "c1", "c2", "output", "margin_hille_yosida",
                        "margin_holder"});
    for (const auto& row : rows) {
      write_csv_row(csv, {format_double(row->value), format_double(row->eq.eta),
                          format_double(row->eq.c1), format_double(row->eq.c2),
                          format_double(row->eq.output), margin_cell(row->conditions, "hille_yosida"),
                          margin_cell(row->conditions, "holder")});
    }
    return int{kSuccess};
  });
}

int cmd_oracle(const RunConfig& cfg, const fs::path& out_dir, std::ostream& err) {
  return guarded(err, [&] {
    if (!cfg.oracle) throw ValidationError(ViolationKind::InvalidInput, "config has no 'oracle' block");
    const OracleConfig& oc = *cfg.oracle;

    json levels = json::array();
    std::vector<GridFunction> fixed_points;
    std::vector<double> weak_residuals;
    std::optional<ConditionReport> conditions;
    int max_iterations = 0;
    for (int n : oc.resolutions) {
      const ModelParams params = resolved(cfg, n);
      const EquilibriumResult closed = assemble(params);
      const oracle::DiscreteOperators ops = oracle::build(params, n);
      const oracle::PicardResult pr = oracle::picard_fixed_point(
          ops, params, GridFunction::zeros(params.s_bar, n), oc.tol, oc.max_iter);
      if (!conditions) conditions = try_contraction(params);
      max_iterations = std::max(max_iterations, pr.iterations);

      const Eigen::VectorXd fixed = oracle::to_vector(pr.fixed_point);
      const double output = ops.weights.dot(ops.alpha.cwiseProduct(fixed));
      const double eta_oracle = params.revenue.derivative(output);
      const double weak_fixed = oracle::residual_weak_form(
          pr.fixed_point, oracle::feedback_control(ops, params.revenue, pr.fixed_point), params,
          ops);
      const double weak_closed =
          oracle::residual_weak_form(closed.x_bar, closed.u_star, params, ops);

      levels.push_back({
          {"n", n},
          {"iterations", pr.iterations},
          {"fitted_rate", pr.fitted_rate},
          {"distance_to_closed_form", ops.l2_norm(fixed - oracle::to_vector(closed.x_bar))},
          {"weak_form_residual_fixed_point", weak_fixed},
          {"weak_form_residual_closed_form", weak_closed},
          {"output", output},
          {"eta_oracle", eta_oracle},
          {"eta_closed_form", closed.eta},
      });
      fixed_points.push_back(pr.fixed_point);
      weak_residuals.push_back(weak_closed);
    }

    // Differences of successive fixed points, measured on the coarser grid.
    json differences = json::array();
    std::vector<double> diffs;
    for (std::size_t k = 0; k + 1 < fixed_points.size(); ++k) {
      const GridFunction fine_on_coarse = resample(fixed_points[k + 1], fixed_points[k].n_cells());
      diffs.push_back(l2_norm(fine_on_coarse - fixed_points[k]));
      differences.push_back(diffs.back());
    }
    json orders = json::array();
    for (std::size_t k = 0; k + 1 < diffs.size(); ++k) {
      const double ratio = static_cast<double>(oc.resolutions[k + 1]) / oc.resolutions[k];
      orders.push_back(std::log(diffs[k] / diffs[k + 1]) / std::log(ratio));
    }
    json weak_orders = json::array();
    for (std::size_t k = 0; k + 1 < weak_residuals.size(); ++k) {
      const double ratio = static_cast<double>(oc.resolutions[k + 1]) / oc.resolutions[k];
      weak_orders.push_back(std::log(weak_residuals[k] / weak_residuals[k + 1]) /
                            std::log(ratio));
    }

    json cond = {{"applicable", conditions.has_value()}, {"note", kSufficientNote}};
    bool not_necessary = false;
    if (conditions) {
      cond["holds"] = conditions->any_holds();
      cond["promised_rate"] = promised_rate(*conditions);
      not_necessary = !conditions->any_holds();
    }

    json doc = {
        {"levels", levels},
        {"refinement_differences", differences},
        {"convergence_orders", orders},
        {"convergence_order", orders.empty() ? json(nullptr) : orders.back()},
        {"weak_form_orders", weak_orders},
        {"condition", cond},
        {"condition_not_necessary", not_necessary},
        {"max_iterations", max_iterations},
        {"tol", oc.tol},
        {"max_iter", oc.max_iter},
    };
    write_json_file(out_dir, "oracle.json", doc);
    return int{kSuccess};
  });
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equilibria of the vintage capital investment problem", "vintage-eq"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<int> n_cells;

  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const RunConfig&, const fs::path&, std::ostream&);
  };
  const Command commands[] = {
      {"equilibrium", "solve for the stationary equilibrium", cmd_equilibrium},
      {"check", "evaluate the sufficient uniqueness conditions", cmd_check},
      {"simulate", "run the transport dynamics under a policy", cmd_simulate},
      {"sweep", "equilibria over a range of one parameter", cmd_sweep},
      {"oracle", "cross-check against the matrix Picard iteration", cmd_oracle},
  };
  std::vector<CLI::App*> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out-dir", out_dir, "directory for result files");
    sub->add_option("--n-cells", n_cells, "grid resolution, overrides the config");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "vintage-eq: " << e.what() << '\n';
    return kInputError;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    return guarded(err, [&] {
      RunConfig cfg = load_config(config_path);
      if (n_cells) {
        if (*n_cells < 2) throw ValidationError(ViolationKind::InvalidInput, "--n-cells must be >= 2");
        cfg.n_cells = *n_cells;
      }
      return commands[i].fn(cfg, out_dir, err);
    });
  }
  return kInputError;
}

}  // namespace vintage::cli
