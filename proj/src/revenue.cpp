#include "vintage/revenue.hpp"

#include <cmath>

namespace vintage {

const char* to_string(RevenueFamily family) {
  switch (family) {
    case RevenueFamily::Quadratic: return "quadratic";
    case RevenueFamily::Log: return "log";
    case RevenueFamily::Power: return "power";
    case RevenueFamily::Custom: return "custom";
  }
  return "unknown";
}

RevenueSpec RevenueSpec::quadratic(double a, double b) {
  RevenueSpec r;
  r.family_ = RevenueFamily::Quadratic;
  r.label_ = "quadratic";
  r.a_ = a;
  r.b_ = b;
  r.lipschitz_ = 2.0 * a;
  r.concave_ = true;
  return r;
}

RevenueSpec RevenueSpec::log() {
  RevenueSpec r;
  r.family_ = RevenueFamily::Log;
  r.label_ = "log";
  // |R''| = 1/(1+Q)^2 peaks at Q = 0; R'' = 0 on the linear branch.
  r.lipschitz_ = 1.0;
  r.concave_ = true;
  return r;
}

RevenueSpec RevenueSpec::power(double gamma) {
  RevenueSpec r;
  r.family_ = RevenueFamily::Power;
  r.label_ = "power";
  r.gamma_ = gamma;
  r.lipschitz_ = gamma * (1.0 - gamma);
  r.concave_ = true;
  return r;
}

RevenueSpec RevenueSpec::custom(Fn value, Fn derivative, double lipschitz_derivative,
                                bool concave, std::string label) {
  RevenueSpec r;
  r.family_ = RevenueFamily::Custom;
  r.label_ = std::move(label);
  r.value_ = std::move(value);
  r.derivative_ = std::move(derivative);
  r.lipschitz_ = lipschitz_derivative;
  r.concave_ = concave;
  return r;
}

RevenueSpec RevenueSpec::linear(double b) {
  RevenueSpec r = custom([b](double q) { return b * q; }, [b](double) { return b; }, 0.0,
                         true, "linear");
  r.b_ = b;
  return r;
}

double RevenueSpec::value(double q) const {
  switch (family_) {
    case RevenueFamily::Quadratic:
      return -a_ * q * q + b_ * q;
    case RevenueFamily::Log:
      return q >= 0.0 ? std::log1p(q) : q;
    case RevenueFamily::Power:
      return q >= 0.0 ? std::expm1(gamma_ * std::log1p(q)) : gamma_ * q;
    case RevenueFamily::Custom:
      return value_(q);
  }
  return 0.0;
}

double RevenueSpec::derivative(double q) const {
  switch (family_) {
    case RevenueFamily::Quadratic:
      return b_ - 2.0 * a_ * q;
    case RevenueFamily::Log:
      return q >= 0.0 ? 1.0 / (1.0 + q) : 1.0;
    case RevenueFamily::Power:
      return q >= 0.0 ? gamma_ * std::pow(1.0 + q, gamma_ - 1.0) : gamma_;
    case RevenueFamily::Custom:
      return derivative_(q);
  }
  return 0.0;
}

double revenue_prime(const RevenueSpec& spec, double q) { return spec.derivative(q); }

}  // namespace vintage
