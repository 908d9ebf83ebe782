#include "heunkit/asymptotics.hpp"

#include <cmath>
#include <string>

#include "heunkit/errors.hpp"

namespace heunkit {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kLowerSpecial = -3.0 - 2.0 * kSqrt2;
const double kUpperSpecial = -3.0 + 2.0 * kSqrt2;
constexpr double kRowMatch = 1e-12;

void require_nonzero(double a, const char* fn) {
  if (a == 0.0) throw Error(ErrorCode::ZeroSingularity, "asymptotics", std::string(fn) + ": a = 0");
}

void outside(const char* fn, double v) {
  throw Error(ErrorCode::OutsideRegion, "asymptotics",
              std::string(fn) + ": convergence variable has modulus " + std::to_string(std::fabs(v)));
}

}  // namespace

AsymptoticLimit limit_coeffs(const HeunParams& p) { return {(1.0 + p.a) / p.a, -1.0 / p.a}; }

double region_f(double a, double x) { return -x * x / a + (1.0 + a) * x / a; }

double geometric_tail(double a, double x) {
  require_nonzero(a, "geometric_tail");
  const double f = region_f(a, x);
  if (!(std::fabs(f) < 1.0)) outside("geometric_tail", f);
  return 1.0 / (1.0 - f);
}

double geometric_tail(const HeunParams& p, double x) { return geometric_tail(p.a, x); }

double tail_near_minus_one(double a, double x, double c1) {
  require_nonzero(a, "tail_near_minus_one");
  const double v = -x * x / a;
  if (!(std::fabs(v) < 1.0)) outside("tail_near_minus_one", v);
  return (1.0 + c1 * x) / (1.0 + x * x / a);
}

double tail_near_minus_one(const HeunParams& p, double x, double c1) { return tail_near_minus_one(p.a, x, c1); }

double tail_large_a(double a, double x) {
  require_nonzero(a, "tail_large_a");
  const double v = (1.0 + a) * x / a;
  if (!(std::fabs(v) < 1.0)) outside("tail_large_a", v);
  return 1.0 / (1.0 - v);
}

double tail_large_a(const HeunParams& p, double x) { return tail_large_a(p.a, x); }

double frozen_partial_sum(double a, double x, int terms) {
  require_nonzero(a, "frozen_partial_sum");
  const long double xt = (1.0L + a) / a * x;
  const long double yt = -1.0L / a * x * x;
  long double total = 0.0L;
  for (int n = 0; n < terms; ++n) {
    // (xt + yt)^n = sum_k C(n,k) xt^(n-k) yt^k
    long double binom = 1.0L, s = 0.0L;
    for (int k = 0; k <= n; ++k) {
      s += binom * std::pow(xt, n - k) * std::pow(yt, k);
      binom = binom * (n - k) / (k + 1);
    }
    total += s;
  }
  return static_cast<double>(total);
}

const char* to_string(RegionRow row) {
  switch (row) {
    case RegionRow::NoSolution: return "a=0";
    case RegionRow::AEqualsOne: return "a=1";
    case RegionRow::ZeroToOne: return "0<a<1";
    case RegionRow::AboveOne: return "a>1";
    case RegionRow::LowerSpecial: return "a=-3-2sqrt2";
    case RegionRow::UpperSpecial: return "a=-3+2sqrt2";
    case RegionRow::BetweenSpecial: return "-3-2sqrt2<a<-3+2sqrt2";
    case RegionRow::OuterNegative: return "-3+2sqrt2<a<0 or a<-3-2sqrt2";
  }
  return "?";
}

std::vector<double> minus_one_roots(double a) {
  const double disc = a * a + 6.0 * a + 1.0;
  if (disc < 0.0) return {};
  const double s = 1.0 + a;
  const double sq = std::sqrt(disc);
  // Roots have sum 1+a and product -a; take the large one without cancellation.
  const double big = 0.5 * (s + std::copysign(sq, s));
  const double small = big != 0.0 ? -a / big : 0.0;
  return big < small ? std::vector<double>{big, small} : std::vector<double>{small, big};
}

RegionReport classify_region(double a, double x) {
  RegionReport rep;
  if (a == 0.0) {
    rep.a_branch = RegionRow::NoSolution;
    return rep;
  }
  rep.raw_contains = std::fabs(region_f(a, x)) < 1.0;
  if (a > 0.0) {
    const auto r = minus_one_roots(a);
    if (a == 1.0) {
      rep.a_branch = RegionRow::AEqualsOne;
      rep.intervals = {{1.0 - kSqrt2, 1.0}, {1.0, 1.0 + kSqrt2}};
    } else if (a < 1.0) {
      rep.a_branch = RegionRow::ZeroToOne;
      rep.intervals = {{r[0], a}, {1.0, r[1]}};
    } else {
      rep.a_branch = RegionRow::AboveOne;
      rep.intervals = {{r[0], 1.0}, {a, r[1]}};
    }
  } else if (std::fabs(a - kLowerSpecial) <= kRowMatch) {
    rep.a_branch = RegionRow::LowerSpecial;
    rep.intervals = {{a, -1.0 - kSqrt2}, {-1.0 - kSqrt2, 1.0}};
  } else if (std::fabs(a - kUpperSpecial) <= kRowMatch) {
    rep.a_branch = RegionRow::UpperSpecial;
    rep.intervals = {{a, -1.0 + kSqrt2}, {-1.0 + kSqrt2, 1.0}};
  } else if (a > kLowerSpecial && a < kUpperSpecial) {
    rep.a_branch = RegionRow::BetweenSpecial;
    rep.intervals = {{a, 1.0}};
  } else {
    const auto r = minus_one_roots(a);
    rep.a_branch = RegionRow::OuterNegative;
    rep.intervals = {{a, r[0]}, {r[1], 1.0}};
  }
  for (const auto& iv : rep.intervals)
    if (iv.contains(x)) rep.contains_x = true;
  return rep;
}

}  // namespace heunkit
