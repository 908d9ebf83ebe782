#pragma once

#include <utility>

namespace heunkit {

// Parameters of the general Heun equation
//   y'' + (gamma/x + delta/(x-1) + epsilon/(x-a)) y' + (alpha*beta*x - q)/(x(x-1)(x-a)) y = 0.
// epsilon is always derived from the other four exponents.
struct HeunParams {
  double a = 1.0;
  double q = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 1.0;
  double delta = 1.0;

  double epsilon() const { return alpha + beta - gamma - delta + 1.0; }
};

// Throws ZeroSingularity / NonFinite.
HeunParams make_params(double a, double q, double alpha, double beta, double gamma, double delta);

enum class RootKind { FirstKind, SecondKind };

struct IndicialRoot {
  RootKind kind = RootKind::FirstKind;
  double lambda = 0.0;
  // Set when the two exponents at x=0 differ by an integer (including zero).
  bool degenerate = false;
};

// (FirstKind, lambda=0) then (SecondKind, lambda=1-gamma).
std::pair<IndicialRoot, IndicialRoot> indicial_roots(const HeunParams& p);

IndicialRoot root_of_kind(const HeunParams& p, RootKind kind);

struct Normalization {
  double c0 = 1.0;
};

// 1 for FirstKind, ((1+a)/a)^(1-gamma) for SecondKind.
Normalization default_normalization(const IndicialRoot& r, const HeunParams& p);

bool is_integer(double x, double tol = 1e-12);

}  // namespace heunkit
