#include "heunkit/recurrence.hpp"

#include <cmath>
#include <string>

#include "heunkit/errors.hpp"
#include "internal.hpp"

namespace heunkit {

using detail::snap_zero;

namespace {

long double denominator(const HeunParams& p, const IndicialRoot& r, long n) {
  const long double lam = r.lambda;
  const long double f1 = snap_zero(n + 1 + lam, n + 1 + std::fabs(lam));
  const long double f2 = snap_zero(n + p.gamma + lam, n + std::fabs(p.gamma) + std::fabs(lam));
  if (f1 == 0.0L)
    throw Error(ErrorCode::SingularDenominator, "recurrence", "factor (n+1+lambda) vanishes at n=" + std::to_string(n));
  if (f2 == 0.0L)
    throw Error(ErrorCode::SingularDenominator, "recurrence",
                "factor (n+gamma+lambda) vanishes at n=" + std::to_string(n));
  return static_cast<long double>(p.a) * f1 * f2;
}

}  // namespace

long double coeff_A_ext(const HeunParams& p, const IndicialRoot& r, long n) {
  const long double den = denominator(p, r, n);
  const long double lam = r.lambda, a = p.a;
  const long double nl = n + lam;
  const long double inner = n - 1 + p.gamma + p.epsilon() + lam + a * (n - 1 + p.gamma + lam + p.delta);
  return (nl * inner + p.q) / den;
}

long double coeff_B_ext(const HeunParams& p, const IndicialRoot& r, long n) {
  const long double den = denominator(p, r, n);
  const long double lam = r.lambda;
  const long double fa = snap_zero(n - 1 + lam + p.alpha, std::fabs(n - 1.0L) + std::fabs(lam) + std::fabs(p.alpha));
  const long double fb = snap_zero(n - 1 + lam + p.beta, std::fabs(n - 1.0L) + std::fabs(lam) + std::fabs(p.beta));
  if (fa == 0.0L || fb == 0.0L) return 0.0L;
  return -(fa * fb) / den;
}

double coeff_A(const HeunParams& p, const IndicialRoot& r, int n) { return static_cast<double>(coeff_A_ext(p, r, n)); }

double coeff_B(const HeunParams& p, const IndicialRoot& r, int n) { return static_cast<double>(coeff_B_ext(p, r, n)); }

RecurrenceCoeffs recurrence_coeffs(const HeunParams& p, const IndicialRoot& r, int n) {
  return {n, coeff_A(p, r, n), coeff_B(p, r, n)};
}

SeriesSolution build_series(const HeunParams& p, const IndicialRoot& r, Normalization c0, int N) {
  if (c0.c0 == 0.0) throw Error(ErrorCode::NonFinite, "recurrence", "c0 must be nonzero");
  if (r.kind == RootKind::SecondKind && is_integer(r.lambda))
    throw Error(ErrorCode::DegenerateSecondKind, "recurrence",
                "1-gamma = " + std::to_string(r.lambda) + " is an integer");
  if (N < 0) N = 0;
  SeriesSolution s;
  s.root = r;
  s.c0 = c0.c0;
  s.truncation_order = N;
  s.coeffs_ext.resize(N + 1);
  s.coeffs_ext[0] = c0.c0;
  if (N >= 1) s.coeffs_ext[1] = coeff_A_ext(p, r, 0) * s.coeffs_ext[0];
  for (int n = 1; n < N; ++n)
    s.coeffs_ext[n + 1] = coeff_A_ext(p, r, n) * s.coeffs_ext[n] + coeff_B_ext(p, r, n) * s.coeffs_ext[n - 1];
  s.coeffs.assign(s.coeffs_ext.begin(), s.coeffs_ext.end());
  return s;
}

namespace {

void check_point(const SeriesSolution& s, double x) {
  const double lam = s.root.lambda;
  if (x < 0.0 && !is_integer(lam))
    throw Error(ErrorCode::NegativeBase, "recurrence", "x < 0 with non-integer lambda");
  if (x == 0.0 && lam < 0.0) throw Error(ErrorCode::SingularPoint, "recurrence", "x = 0 with negative lambda");
}

long double xpow(long double x, double lam) {
  if (lam == 0.0) return 1.0L;
  if (is_integer(lam)) return std::pow(x, std::round(lam));
  return std::pow(x, static_cast<long double>(lam));
}

}  // namespace

SeriesValue eval_series(const SeriesSolution& s, double x) {
  check_point(s, x);
  const auto& c = s.coeffs_ext;
  long double acc = 0.0L;
  for (std::size_t n = c.size(); n-- > 0;) acc = acc * x + c[n];
  const long double xl = xpow(x, s.root.lambda);
  SeriesValue out;
  out.value = static_cast<double>(acc * xl);
  out.last_term = static_cast<double>(std::fabs(c.back() * std::pow(static_cast<long double>(x), c.size() - 1) * xl));
  return out;
}

Derivs eval_series_derivs(const SeriesSolution& s, double x) {
  check_point(s, x);
  const auto& c = s.coeffs_ext;
  const long double X = x;
  long double S = 0, S1 = 0, S2 = 0;
  for (std::size_t n = c.size(); n-- > 0;) {
    S2 = S2 * X + 2 * S1;
    S1 = S1 * X + S;
    S = S * X + c[n];
  }
  const double lam = s.root.lambda;
  Derivs d;
  if (lam == 0.0) {
    d.y = S;
    d.y1 = S1;
    d.y2 = S2;
    return d;
  }
  if (x == 0.0) throw Error(ErrorCode::SingularPoint, "recurrence", "derivatives at x = 0 with lambda != 0");
  const long double xl = xpow(x, lam);
  d.y = xl * S;
  d.y1 = xl * (lam * S / X + S1);
  d.y2 = xl * (lam * (lam - 1) * S / (X * X) + 2 * lam * S1 / X + S2);
  return d;
}

long double heun_lhs(const HeunParams& p, long double x, const Derivs& d) {
  const long double a = p.a;
  const long double pcoef = p.gamma / x + p.delta / (x - 1) + p.epsilon() / (x - a);
  const long double qcoef = (static_cast<long double>(p.alpha) * p.beta * x - p.q) / (x * (x - 1) * (x - a));
  return d.y2 + pcoef * d.y1 + qcoef * d.y;
}

namespace {

void check_regular(const HeunParams& p, double x) {
  if (x == 0.0 || x == 1.0 || x == p.a)
    throw Error(ErrorCode::SingularPoint, "recurrence", "x = " + std::to_string(x) + " is a singular point");
}

}  // namespace

double ode_residual(const HeunParams& p, const SeriesSolution& s, double x, double /*h*/) {
  check_regular(p, x);
  return static_cast<double>(std::fabs(heun_lhs(p, x, eval_series_derivs(s, x))));
}

double ode_residual_fd(const HeunParams& p, const SeriesSolution& s, double x, double h) {
  check_regular(p, x);
  const long double ym = eval_series(s, x - h).value;
  const long double y0 = eval_series(s, x).value;
  const long double yp = eval_series(s, x + h).value;
  Derivs d;
  d.y = y0;
  d.y1 = (yp - ym) / (2 * h);
  d.y2 = (yp - 2 * y0 + ym) / (static_cast<long double>(h) * h);
  return static_cast<double>(std::fabs(heun_lhs(p, x, d)));
}

}  // namespace heunkit
