#include "vintage/json_writer.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace vintage::cli {

namespace {

void write_value(std::ostream& out, const nlohmann::json& v, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close_pad(2 * depth, ' ');
  switch (v.type()) {
    case nlohmann::json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << pad << nlohmann::json(it.key()).dump() << ": ";
        write_value(out, it.value(), depth + 1);
      }
      out << '\n' << close_pad << '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out << ",\n";
        out << pad;
        write_value(out, v[i], depth + 1);
      }
      out << '\n' << close_pad << ']';
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double d = v.get<double>();
      if (std::isfinite(d)) {
        out << format_double(d);
      } else {
        out << "null";
      }
      return;
    }
    default:
      out << v.dump();
  }
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // no "-0" in output files
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_json(std::ostream& out, const nlohmann::json& value) {
  write_value(out, value, 0);
  out << '\n';
}

std::string to_json_text(const nlohmann::json& value) {
  std::ostringstream out;
  write_json(out, value);
  return out.str();
}

}  // namespace vintage::cli
