#include "vintage/errors.hpp"

#include <algorithm>

namespace vintage {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NonPositiveRate: return "NonPositiveRate";
    case ViolationKind::CostFloorViolated: return "CostFloorViolated";
    case ViolationKind::GridMismatch: return "GridMismatch";
    case ViolationKind::NonConcaveRevenue: return "NonConcaveRevenue";
    case ViolationKind::NegativeOutputWeight: return "NegativeOutputWeight";
    case ViolationKind::NonFiniteValue: return "NonFiniteValue";
    case ViolationKind::InvalidRevenue: return "InvalidRevenue";
    case ViolationKind::AlphaNotInV: return "AlphaNotInV";
    case ViolationKind::WrongFamily: return "WrongFamily";
    case ViolationKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

namespace {

std::string join_messages(const std::vector<Violation>& violations) {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += to_string(v.kind);
    out += ": ";
    out += v.message;
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(join_messages(violations)), violations_(std::move(violations)) {}

ValidationError::ValidationError(ViolationKind kind, const std::string& message)
    : ValidationError(std::vector<Violation>{{kind, message}}) {}

bool ValidationError::has(ViolationKind kind) const {
  return std::any_of(violations_.begin(), violations_.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

NumericalError::NumericalError(NumericalFailure kind, const std::string& message,
                               std::vector<double> trace)
    : std::runtime_error(message), kind_(kind), trace_(std::move(trace)) {}

}  // namespace vintage
