#pragma once

#include <functional>
#include <string>

namespace vintage {

enum class RevenueFamily { Quadratic, Log, Power, Custom };

const char* to_string(RevenueFamily family);

/// Revenue R(Q) as a function of the output rate, with its derivative and
/// the Lipschitz constant of R' that the uniqueness conditions consume.
///
/// Built-in families:
///   Quadratic{a, b}:  R(Q) = -a Q^2 + b Q
///   Log:              R(Q) = ln(1 + Q) for Q >= 0, Q otherwise
///   Power{gamma}:     R(Q) = (1 + Q)^gamma - 1 for Q >= 0, gamma Q otherwise
/// Custom revenue is supplied as callables; nothing is differentiated
/// numerically.
class RevenueSpec {
 public:
  using Fn = std::function<double(double)>;

  static RevenueSpec quadratic(double a, double b);
  static RevenueSpec log();
  static RevenueSpec power(double gamma);
  static RevenueSpec custom(Fn value, Fn derivative, double lipschitz_derivative,
                            bool concave, std::string label = "custom");
  /// R(Q) = b Q, expressed as a Custom family with R'' = 0.
  static RevenueSpec linear(double b);

  RevenueFamily family() const { return family_; }
  const std::string& label() const { return label_; }

  double value(double q) const;
  double derivative(double q) const;

  /// Lipschitz constant [R'] of the derivative.
  double lipschitz_derivative() const { return lipschitz_; }
  bool concave() const { return concave_; }

  // Family parameters; zero when not applicable.
  double a() const { return a_; }
  double b() const { return b_; }
  double gamma() const { return gamma_; }

 private:
  RevenueSpec() = default;

  RevenueFamily family_ = RevenueFamily::Custom;
  std::string label_;
  double a_ = 0.0;
  double b_ = 0.0;
  double gamma_ = 0.0;
  double lipschitz_ = 0.0;
  bool concave_ = true;
  Fn value_;
  Fn derivative_;
};

/// R'(Q) for the given family.
double revenue_prime(const RevenueSpec& spec, double q);

}  // namespace vintage
