#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

namespace vintage::cli {

/// Deterministic JSON: keys sorted, floats with 17 significant digits,
/// non-finite numbers as null, two-space indentation.
void write_json(std::ostream& out, const nlohmann::json& value);
std::string to_json_text(const nlohmann::json& value);

/// 17 significant digits, as used in every CSV and JSON file.
std::string format_double(double v);

}  // namespace vintage::cli
