#pragma once

#include <filesystem>
#include <iosfwd>

#include <json.hpp>

#include "vintage/config.hpp"
#include "vintage/model.hpp"

namespace vintage::cli {

/// Process exit codes. Nothing else is ever returned.
enum ExitCode : int { kSuccess = 0, kInputError = 2, kNumericalError = 3 };

// Each command writes its files into out_dir (created if needed) and reports
// problems on err. Library exceptions are mapped onto exit codes.
int cmd_equilibrium(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& err);
int cmd_check(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& err);
int cmd_simulate(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& err);
int cmd_oracle(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& err);

/// Summary of the sufficient uniqueness conditions; reports "applicable":
/// false instead of throwing when alpha is not admissible for them.
nlohmann::json conditions_summary(const ModelParams& params);

/// vintage-eq <equilibrium|check|simulate|sweep|oracle> --config <path>
///            [--out-dir <path>] [--n-cells <int>]
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace vintage::cli
