#include "heunkit/params.hpp"

#include <cmath>
#include <string>

#include "heunkit/errors.hpp"

namespace heunkit {

HeunParams make_params(double a, double q, double alpha, double beta, double gamma, double delta) {
  for (double v : {a, q, alpha, beta, gamma, delta})
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "params", "all parameters must be finite");
  if (a == 0.0) throw Error(ErrorCode::ZeroSingularity, "params", "a must be nonzero");
  HeunParams p;
  p.a = a;
  p.q = q;
  p.alpha = alpha;
  p.beta = beta;
  p.gamma = gamma;
  p.delta = delta;
  return p;
}

bool is_integer(double x, double tol) { return std::fabs(x - std::round(x)) <= tol * std::max(1.0, std::fabs(x)); }

std::pair<IndicialRoot, IndicialRoot> indicial_roots(const HeunParams& p) {
  const bool degen = is_integer(1.0 - p.gamma);
  IndicialRoot first{RootKind::FirstKind, 0.0, degen};
  IndicialRoot second{RootKind::SecondKind, 1.0 - p.gamma, degen};
  return {first, second};
}

IndicialRoot root_of_kind(const HeunParams& p, RootKind kind) {
  auto roots = indicial_roots(p);
  return kind == RootKind::FirstKind ? roots.first : roots.second;
}

Normalization default_normalization(const IndicialRoot& r, const HeunParams& p) {
  if (r.kind == RootKind::FirstKind) return {1.0};
  const double base = (1.0 + p.a) / p.a;
  const double e = 1.0 - p.gamma;
  if (base < 0.0 && !is_integer(e))
    throw Error(ErrorCode::NegativeBase, "params",
                "(1+a)/a = " + std::to_string(base) + " raised to non-integer power");
  if (base == 0.0) throw Error(ErrorCode::NegativeBase, "params", "(1+a)/a = 0 gives a vanishing c0");
  return {std::pow(base, e)};
}

}  // namespace heunkit
