#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace vintage {

enum class ViolationKind {
  NonPositiveRate,
  CostFloorViolated,
  GridMismatch,
  NonConcaveRevenue,
  NegativeOutputWeight,
  NonFiniteValue,
  InvalidRevenue,
  AlphaNotInV,
  WrongFamily,
  InvalidInput,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string message;
};

/// Bad input: model data, grids or run configuration. Carries every
/// violation found, not just the first one.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  ValidationError(ViolationKind kind, const std::string& message);

  const std::vector<Violation>& violations() const { return violations_; }
  bool has(ViolationKind kind) const;

 private:
  std::vector<Violation> violations_;
};

enum class NumericalFailure { BracketFailure, NoConvergence };

/// A well-posed computation that did not produce an answer.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(NumericalFailure kind, const std::string& message,
                 std::vector<double> trace = {});

  NumericalFailure kind() const { return kind_; }
  /// Solver-specific history, e.g. the last Picard step norms.
  const std::vector<double>& trace() const { return trace_; }

 private:
  NumericalFailure kind_;
  std::vector<double> trace_;
};

}  // namespace vintage
