#pragma once

#include <string>
#include <vector>

#include "heunkit/params.hpp"

namespace heunkit {

// Limits of the recurrence coefficients as n -> infinity.
struct AsymptoticLimit {
  double A_inf = 0.0;  // (1+a)/a
  double B_inf = 0.0;  // -1/a
};

AsymptoticLimit limit_coeffs(const HeunParams& p);

// f(x) = -x^2/a + (1+a)x/a, the ratio variable of the frozen-coefficient model.
double region_f(double a, double x);

// The frozen-coefficient tails below are model asymptotics of the series
// (A_n, B_n replaced by their limits), not values of the Heun function.
// All throw OutsideRegion when their convergence condition fails.

// 1/(1 - f(x)), valid for |f(x)| < 1.
double geometric_tail(const HeunParams& p, double x);
double geometric_tail(double a, double x);

// Branch a ~ -1 where the A_n drop out: (1 + c1*x)/(1 + x^2/a), valid for |x^2/a| < 1.
// c1 is the ratio c_1/c_0 kept in the odd part; the usual choice is 0.
double tail_near_minus_one(const HeunParams& p, double x, double c1 = 0.0);
double tail_near_minus_one(double a, double x, double c1 = 0.0);

// Branch |a| >> 1 (or |a| << 1) where the B_n drop out: 1/(1 - (1+a)x/a).
double tail_large_a(const HeunParams& p, double x);
double tail_large_a(double a, double x);

// Partial sum over n < terms of (Ax + Bx^2)^n, each power expanded binomially.
double frozen_partial_sum(double a, double x, int terms);

enum class RegionRow {
  NoSolution,       // a = 0
  AEqualsOne,       // a = 1
  ZeroToOne,        // 0 < a < 1
  AboveOne,         // a > 1
  LowerSpecial,     // a = -3 - 2 sqrt 2
  UpperSpecial,     // a = -3 + 2 sqrt 2
  BetweenSpecial,   // -3 - 2 sqrt 2 < a < -3 + 2 sqrt 2
  OuterNegative,    // -3 + 2 sqrt 2 < a < 0  or  a < -3 - 2 sqrt 2
};

const char* to_string(RegionRow row);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo < x && x < hi; }
};

struct RegionReport {
  RegionRow a_branch = RegionRow::NoSolution;
  std::vector<Interval> intervals;
  bool contains_x = false;   // from the row formulas
  bool raw_contains = false; // from |f(x)| < 1 directly
};

// Picks the row by a, builds its open intervals and tests x against them.
RegionReport classify_region(double a, double x);

// Roots of f(x) = -1, smaller first: ((1+a) -+ sqrt(a^2+6a+1))/2. Empty when complex.
std::vector<double> minus_one_roots(double a);

}  // namespace heunkit
