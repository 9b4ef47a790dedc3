#include "vintage/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "vintage/errors.hpp"

namespace vintage::cli {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& message) {
  throw ValidationError(ViolationKind::InvalidInput, message);
}

double number(const json& obj, const char* key) {
  if (!obj.contains(key)) bad(std::string("missing key '") + key + "'");
  if (!obj.at(key).is_number()) bad(std::string("key '") + key + "' must be a number");
  return obj.at(key).get<double>();
}

double number_or(const json& obj, const char* key, double fallback) {
  return obj.contains(key) ? number(obj, key) : fallback;
}

GridExpr grid_or(const json& obj, const char* key, double fallback) {
  return obj.contains(key) ? GridExpr::parse(obj.at(key)) : GridExpr::constant(fallback);
}

PolicyConfig::Entry parse_entry(const json& j) {
  PolicyConfig::Entry e;
  e.u0 = number_or(j, "u0", 0.0);
  e.u1 = grid_or(j, "u1", 0.0);
  return e;
}

ModelSpec parse_model(const json& m) {
  if (!m.is_object()) bad("'model' must be an object");
  ModelSpec spec;
  spec.mu = number(m, "mu");
  spec.lambda = number(m, "lambda");
  spec.s_bar = number(m, "s_bar");
  if (!m.contains("alpha")) bad("missing key 'alpha'");
  spec.alpha = GridExpr::parse(m.at("alpha"));
  spec.beta0 = number(m, "beta0");
  if (!m.contains("beta1")) bad("missing key 'beta1'");
  spec.beta1 = GridExpr::parse(m.at("beta1"));
  spec.q0 = number_or(m, "q0", 0.0);
  spec.q1 = grid_or(m, "q1", 0.0);
  spec.beta_floor = number_or(m, "beta_floor", 1e-9);

  if (!m.contains("revenue") || !m.at("revenue").is_object()) bad("missing object 'revenue'");
  const json& r = m.at("revenue");
  if (!r.contains("family") || !r.at("family").is_string()) bad("revenue needs a 'family'");
  spec.revenue.family = r.at("family").get<std::string>();
  if (spec.revenue.family == "quadratic") {
    spec.revenue.a = number(r, "a");
    spec.revenue.b = number(r, "b");
  } else if (spec.revenue.family == "power") {
    spec.revenue.gamma = number(r, "gamma");
  } else if (spec.revenue.family == "linear") {
    spec.revenue.b = number(r, "b");
  } else if (spec.revenue.family != "log") {
    bad("unknown revenue family '" + spec.revenue.family + "'");
  }
  return spec;
}

SimulateConfig parse_simulate(const json& s) {
  SimulateConfig cfg;
  cfg.horizon = number(s, "horizon");
  if (!s.contains("policy") || !s.at("policy").is_object()) bad("simulate needs a 'policy' block");
  const json& p = s.at("policy");
  const std::string mode = p.value("mode", "");
  if (mode == "equilibrium") {
    cfg.policy.mode = PolicyConfig::Mode::Equilibrium;
  } else if (mode == "constant") {
    cfg.policy.mode = PolicyConfig::Mode::Constant;
    cfg.policy.constant = parse_entry(p);
  } else if (mode == "table") {
    cfg.policy.mode = PolicyConfig::Mode::Table;
    if (!p.contains("steps") || !p.at("steps").is_array()) bad("table policy needs 'steps'");
    for (const auto& e : p.at("steps")) cfg.policy.table.push_back(parse_entry(e));
  } else {
    bad("policy mode must be equilibrium, constant or table");
  }
  if (s.contains("initial")) {
    const json& init = s.at("initial");
    if (!(init.is_string() && init.get<std::string>() == "equilibrium")) {
      cfg.initial = GridExpr::parse(init);
    }
  } else if (cfg.policy.mode != PolicyConfig::Mode::Equilibrium) {
    cfg.initial = GridExpr::constant(0.0);
  }
  cfg.write_profiles = s.value("write_profiles", false);
  return cfg;
}

SweepConfig parse_sweep(const json& s) {
  SweepConfig cfg;
  if (!s.contains("parameter") || !s.at("parameter").is_string()) bad("sweep needs 'parameter'");
  cfg.parameter = s.at("parameter").get<std::string>();
  cfg.from = number(s, "from");
  cfg.to = number(s, "to");
  cfg.count = static_cast<int>(number(s, "count"));
  cfg.threads = static_cast<int>(number_or(s, "threads", 1));
  if (cfg.count < 1) bad("sweep range is empty (count < 1)");
  if (cfg.to < cfg.from) bad("sweep range is empty (to < from)");
  if (cfg.count == 1 && cfg.to != cfg.from) bad("a single-point sweep needs from == to");
  if (cfg.threads < 1) bad("sweep threads must be >= 1");
  return cfg;
}

OracleConfig parse_oracle(const json& o) {
  OracleConfig cfg;
  if (!o.contains("resolutions") || !o.at("resolutions").is_array()) {
    bad("oracle needs 'resolutions'");
  }
  for (const auto& r : o.at("resolutions")) {
    if (!r.is_number_integer()) bad("oracle resolutions must be integers");
    cfg.resolutions.push_back(r.get<int>());
  }
  if (cfg.resolutions.empty()) bad("oracle resolutions are empty");
  if (!std::is_sorted(cfg.resolutions.begin(), cfg.resolutions.end()) ||
      std::adjacent_find(cfg.resolutions.begin(), cfg.resolutions.end()) !=
          cfg.resolutions.end()) {
    bad("oracle resolutions must be strictly ascending");
  }
  cfg.tol = number_or(o, "tol", 1e-12);
  cfg.max_iter = static_cast<int>(number_or(o, "max_iter", 10000));
  return cfg;
}

}  // namespace

GridExpr GridExpr::parse(const json& j) {
  GridExpr e;
  if (j.is_number()) return constant(j.get<double>());
  if (j.is_array()) {
    e.kind = Kind::Samples;
    for (const auto& v : j) {
      if (!v.is_number()) bad("samples must be numbers");
      e.samples.push_back(v.get<double>());
    }
  } else if (j.is_string()) {
    std::string text = j.get<std::string>();
    std::replace_if(text.begin(), text.end(),
                    [](char c) { return c == '[' || c == ']' || c == ','; }, ' ');
    std::istringstream in(text);
    std::string tag;
    in >> tag;
    std::vector<double> args;
    double v;
    while (in >> v) args.push_back(v);
    if (!in.eof()) bad("cannot parse grid expression '" + j.get<std::string>() + "'");
    if (tag == "const" && args.size() == 1) {
      e = constant(args[0]);
    } else if (tag == "linear" && args.size() == 2) {
      e.kind = Kind::Linear;
      e.a = args[0];
      e.b = args[1];
    } else if (tag == "samples") {
      e.kind = Kind::Samples;
      e.samples = std::move(args);
    } else {
      bad("cannot parse grid expression '" + j.get<std::string>() + "'");
    }
  } else {
    bad("grid expression must be a number, array or string");
  }
  if (e.kind == Kind::Samples && e.samples.size() < 3) bad("samples need at least 3 values");
  return e;
}

GridFunction GridExpr::resolve(double s_bar, int n_cells) const {
  switch (kind) {
    case Kind::Const:
      return GridFunction::constant(s_bar, n_cells, a);
    case Kind::Linear:
      return GridFunction::sample(s_bar, n_cells, [this](double s) { return a + b * s; });
    case Kind::Samples: {
      const GridFunction own(s_bar, static_cast<int>(samples.size()) - 1, samples);
      return resample(own, n_cells);
    }
  }
  return {};
}

RevenueSpec RevenueConfig::build() const {
  if (family == "quadratic") return RevenueSpec::quadratic(a, b);
  if (family == "log") return RevenueSpec::log();
  if (family == "power") return RevenueSpec::power(gamma);
  if (family == "linear") return RevenueSpec::linear(b);
  bad("unknown revenue family '" + family + "'");
}

ModelParams ModelSpec::resolve(int n_cells) const {
  if (n_cells < 2) bad("n_cells must be >= 2");
  if (!(s_bar > 0.0)) {
    throw ValidationError(ViolationKind::NonPositiveRate, "s_bar must be finite and > 0");
  }
  ModelParams p;
  p.mu = mu;
  p.lambda = lambda;
  p.s_bar = s_bar;
  p.alpha = alpha.resolve(s_bar, n_cells);
  p.cost.beta0 = beta0;
  p.cost.beta1 = beta1.resolve(s_bar, n_cells);
  p.cost.q0 = q0;
  p.cost.q1 = q1.resolve(s_bar, n_cells);
  p.revenue = revenue.build();
  p.beta_floor = beta_floor;
  return p;
}

std::vector<double> SweepConfig::values() const {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(count == 1 ? from : from + (to - from) * i / (count - 1));
  }
  return out;
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) bad("config must be a JSON object");
  if (!doc.contains("model")) bad("config needs a 'model' block");
  try {
    RunConfig cfg;
    cfg.model = parse_model(doc.at("model"));
    cfg.n_cells = static_cast<int>(number_or(doc, "n_cells", 1000));
    if (cfg.n_cells < 2) bad("n_cells must be >= 2");
    if (doc.contains("simulate")) cfg.simulate = parse_simulate(doc.at("simulate"));
    if (doc.contains("sweep")) cfg.sweep = parse_sweep(doc.at("sweep"));
    if (doc.contains("oracle")) cfg.oracle = parse_oracle(doc.at("oracle"));
    return cfg;
  } catch (const json::exception& e) {
    bad(std::string("malformed config: ") + e.what());
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open config " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    bad("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

}  // namespace vintage::cli
