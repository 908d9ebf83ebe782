#pragma once

#include <string>
#include <vector>

#include "heunkit/expr.hpp"
#include "heunkit/params.hpp"
#include "heunkit/recurrence.hpp"
#include "heunkit/series3trf.hpp"

namespace heunkit {

// One local solution written as
//   prod_i base_i(x)^{exp_i} * Hl(a', q'; alpha', beta', gamma', delta'; xi(x)).
// Expressions use the names a, q, alpha, beta, gamma, delta, epsilon and x.
struct PrefactorTerm {
  Expr base;
  Expr exponent;
};

struct LocalTransform {
  std::string id;
  std::string label;
  std::vector<PrefactorTerm> prefactor;
  Expr a, q, alpha, beta, gamma, delta;  // parameter map
  Expr xi;                               // variable map
  Expr epsilon;                          // expected epsilon' of the mapped equation (optional)
  // c_1/c_0 kept by the a' ~ -1 closed form of this row.
  double odd_branch = 0.0;
};

Env param_env(const HeunParams& p);

HeunParams map_params(const LocalTransform& t, const HeunParams& p);
double map_variable(const LocalTransform& t, const HeunParams& p, double x);
Jet2 map_variable_jet(const LocalTransform& t, const HeunParams& p, double x);
Jet2 prefactor_jet(const LocalTransform& t, const HeunParams& p, double x);

enum class Engine { Recurrence, TRF3 };

struct EngineOptions {
  Engine engine = Engine::Recurrence;
  int N = 200;  // recurrence order; for TRF3 the outer depth is min(N, 30)
  // Optional B-terminated evaluation of the mapped series with TRF3.
  std::vector<int> caps;
  std::vector<int> beta_caps;
  TrfVariant variant = TrfVariant::InfiniteSeries;
};

struct TransformValue {
  double value = 0.0;
  double prefactor = 0.0;
  double series = 0.0;
  double xi = 0.0;
  double tail_estimate = 0.0;
  HeunParams mapped;
};

// Errors: OutsideMappedRegion, NegativeBase and any engine error.
TransformValue apply_transform(const LocalTransform& t, const HeunParams& p, double x, const EngineOptions& opt = {});

enum class AsymptoticBranch { Infinite, NearMinusOne, LargeA };
const char* to_string(AsymptoticBranch b);

// Frozen-coefficient closed form of the mapped series, from the asymptotics
// module evaluated at (a', xi). Errors: OutsideMappedRegion.
double transform_asymptotic(const LocalTransform& t, const HeunParams& p, double x,
                            AsymptoticBranch branch = AsymptoticBranch::Infinite);

struct ResidualReport {
  std::vector<double> xs;
  std::vector<double> residuals;  // NaN where the sample failed
  std::vector<std::string> errors;
  double max_residual = 0.0;
  double tol = 0.0;
  bool passed = false;
};

// Residual of the original equation for prefactor * series at each sample; never throws.
ResidualReport residual_verify(const LocalTransform& t, const HeunParams& p, const std::vector<double>& xs, int N,
                               double tol, Engine engine = Engine::Recurrence);

// Series of the mapped parameters with the coefficients reassembled from the nested sums.
SeriesSolution trf3_series(const HeunParams& p, const IndicialRoot& r, Normalization c0, int N);

// Registry text format: blocks of "key = value" lines headed by "[id]".
//   label, prefactor (repeatable, "base ; exponent"), a, q, alpha, beta, gamma,
//   delta, xi, epsilon, odd_branch. '#' starts a comment line.
std::vector<LocalTransform> parse_registry(const std::string& text);
std::string serialize_registry(const std::vector<LocalTransform>& ts);
const std::string& builtin_registry_text();
const std::vector<LocalTransform>& builtin_transforms();
const LocalTransform& find_transform(const std::vector<LocalTransform>& ts, const std::string& id);

}  // namespace heunkit
