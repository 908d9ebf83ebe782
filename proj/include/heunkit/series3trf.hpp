#pragma once

#include <utility>
#include <vector>

#include "heunkit/params.hpp"

namespace heunkit {

// Regrouping of the Frobenius series by the number m of A-type steps:
//   y(x) = sum_m y_m(x),  y_m = c0 x^lambda eta^m sum_j D_m(j) z^j,
// with z = -x^2/a and eta = (1+a)x/a.
enum class TrfVariant { InfiniteSeries, PolyBTerm_S, PolyBTerm_B };

struct SubSeriesSpec {
  int m = 0;
  std::vector<int> index_caps;  // alpha_0..alpha_m for the polynomial variants
  std::vector<int> beta_caps;   // beta_0..beta_m, variant PolyBTerm_B only
  int I_max = 60;               // uniform cap, InfiniteSeries only
  TrfVariant variant = TrfVariant::InfiniteSeries;
};

struct TrfWeights {
  double Gamma_k = 0.0;
  double Q = 0.0;
};

// One level of the nested sums.
//   B-step ratio at this level:  (j+p1)(j+p2) / ((j+d1)(j+d2))        (times z)
//   A-step weight leaving it:    ((i+s)(i+Gamma)+Q) / ((i+s+1/2)(i+e))  (times eta)
struct TrfLevel {
  long double p1 = 0, p2 = 0, d1 = 0, d2 = 0;
  long double s = 0, Gamma = 0, e = 0;
  int cap = 0;
};

struct TrfModel {
  TrfVariant variant = TrfVariant::InfiniteSeries;
  double lambda = 0.0;
  long double Q = 0;
  std::vector<TrfLevel> levels;  // levels 0..M
  // Parameters of the level-0 sum, which is always a Gauss series in z.
  double f0_a = 0, f0_b = 0, f0_c = 1;
};

// Builds the per-level data; validates the polynomial parameterization.
// Errors: DegenerateA, DegenerateSecondKind, CapsNotMonotone, InconsistentParameterization.
TrfModel make_trf_model(const HeunParams& p, const IndicialRoot& r, const SubSeriesSpec& spec);

TrfWeights trf_weights(const TrfModel& model, int k);

// Ratio and weight of the model, exposed for the integral kernels and tests.
long double trf_b_ratio(const TrfLevel& L, long j);
long double trf_a_weight(const TrfLevel& L, long double Q, long i);
// Numerator (i+s)(i+Gamma)+Q of the A-step weight.
long double trf_a_numerator(const TrfLevel& L, long double Q, long double i);

// D[m][j] for m = 0..M, j = 0..cap_m.
std::vector<std::vector<long double>> sub_series_coeffs(const TrfModel& model);

std::pair<double, double> zeta_eta(const HeunParams& p, double x);

struct TrfResult {
  double value = 0.0;
  std::vector<double> partials;  // y_0..y_M
  bool converged = false;        // last two blocks below tol * |value|
};

TrfResult build_3trf_infinite(const HeunParams& p, const IndicialRoot& r, Normalization c0, int M, int I_max, double x);

// Truncation picked by block size: stops once two consecutive blocks fall under tol*|sum|.
TrfResult build_3trf_adaptive(const HeunParams& p, const IndicialRoot& r, Normalization c0, double x,
                              double tol = 1e-14, int M_max = 30, int I_max = 60);

// B-terminated polynomial forms. caps = alpha_0..alpha_M; beta_caps only for PolyBTerm_B.
TrfResult build_3trf_poly_Bterm(const HeunParams& p, const IndicialRoot& r, Normalization c0,
                                const std::vector<int>& caps, double x, TrfVariant variant,
                                const std::vector<int>& beta_caps = {});

// Coefficient of x^{lambda+k} reassembled from all (m, j) with m + 2j = k.
double coefficient_of_order(const HeunParams& p, const IndicialRoot& r, Normalization c0, int k, int M, int I_max);
long double coefficient_of_order(const TrfModel& model, const HeunParams& p, Normalization c0, int k);

// Evaluates y_m for a prepared model at x.
double trf_sub_term(const TrfModel& model, const HeunParams& p, Normalization c0, int m, double x);

// Both exponents needed for the poly parameterization: alpha = -2 alpha_0 - lambda.
double bterm_alpha(int cap0, double lambda);

}  // namespace heunkit
