#pragma once

#include <vector>

#include "heunkit/params.hpp"

namespace heunkit {

struct RecurrenceCoeffs {
  int n = 0;
  double A = 0.0;
  double B = 0.0;
};

// c_{n+1} = A_n c_n + B_n c_{n-1}, c_1 = A_0 c_0.
double coeff_A(const HeunParams& p, const IndicialRoot& r, int n);
double coeff_B(const HeunParams& p, const IndicialRoot& r, int n);
long double coeff_A_ext(const HeunParams& p, const IndicialRoot& r, long n);
long double coeff_B_ext(const HeunParams& p, const IndicialRoot& r, long n);
RecurrenceCoeffs recurrence_coeffs(const HeunParams& p, const IndicialRoot& r, int n);

struct SeriesSolution {
  IndicialRoot root;
  double c0 = 1.0;
  std::vector<double> coeffs;            // c_0..c_N
  std::vector<long double> coeffs_ext;   // same values, extended precision
  int truncation_order = 0;
};

SeriesSolution build_series(const HeunParams& p, const IndicialRoot& r, Normalization c0, int N);

struct SeriesValue {
  double value = 0.0;
  double last_term = 0.0;  // |c_N x^{N+lambda}|, a truncation indicator
};

SeriesValue eval_series(const SeriesSolution& s, double x);

// y, y', y'' from term-wise differentiation.
struct Derivs {
  long double y = 0, y1 = 0, y2 = 0;
};
Derivs eval_series_derivs(const SeriesSolution& s, double x);

// |LHS of the Heun equation| at x using analytic derivatives.
double ode_residual(const HeunParams& p, const SeriesSolution& s, double x, double h = 0.0);

// Same residual with central differences of step h on the series value.
double ode_residual_fd(const HeunParams& p, const SeriesSolution& s, double x, double h);

// Residual of the Heun equation for arbitrary y, y', y'' at x.
long double heun_lhs(const HeunParams& p, long double x, const Derivs& d);

}  // namespace heunkit
