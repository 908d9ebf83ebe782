#include "heunkit/hyper2f1.hpp"

#include <algorithm>
#include <string>

#include "heunkit/errors.hpp"
#include "heunkit/params.hpp"
#include "internal.hpp"

namespace heunkit {

using detail::snap_zero;

long double pochhammer_ext(long double x, int n) {
  long double p = 1.0L;
  for (int k = 0; k < n; ++k) {
    const long double f = snap_zero(x + k, std::fabs(x) + k);
    if (f == 0.0L) return 0.0L;
    p *= f;
  }
  return p;
}

double pochhammer(double x, int n) { return static_cast<double>(pochhammer_ext(x, n)); }

int terminating_degree(double a, double b) {
  int deg = -1;
  for (double v : {a, b})
    if (v <= 0.0 && is_integer(v)) {
      const int d = static_cast<int>(std::lround(-v));
      deg = deg < 0 ? d : std::min(deg, d);
    }
  return deg;
}

namespace {

void check_pole(double a, double b, double c) {
  if (!(c <= 0.0 && is_integer(c))) return;
  const int cdeg = static_cast<int>(std::lround(-c));
  const int tdeg = terminating_degree(a, b);
  // (c)_k vanishes for k > -c; the numerator must die at or before that.
  if (tdeg < 0 || tdeg > cdeg)
    throw Error(ErrorCode::PoleAtC, "hyper2f1", "c = " + std::to_string(c) + " is a nonpositive integer");
}

template <class T>
T sum_series(double a, double b, double c, T z, double tol, int max_terms) {
  check_pole(a, b, c);
  const int tdeg = terminating_degree(a, b);
  const double az = std::abs(z);
  if (tdeg >= 0) {
    T sum = 1.0, term = 1.0;
    for (int k = 0; k < tdeg; ++k) {
      term *= T((a + k) * (b + k) / ((c + k) * (k + 1.0))) * z;
      sum += term;
    }
    return sum;
  }
  if (az >= 1.0)
    throw Error(ErrorCode::NoConvergence, "hyper2f1", "|z| = " + std::to_string(az) + " >= 1 for a non-terminating series");
  if (az == 0.0) return T(1.0);
  T sum = 1.0, term = 1.0;
  for (int k = 0; k < max_terms; ++k) {
    const double ratio = (a + k) * (b + k) / ((c + k) * (k + 1.0));
    term *= T(ratio) * z;
    sum += term;
    const double rk = std::fabs((a + k + 1) * (b + k + 1) / ((c + k + 1) * (k + 2.0))) * az;
    const double rhat = std::max(rk, az);
    if (rhat < 1.0 && std::abs(term) * rhat / (1.0 - rhat) <= tol * std::abs(sum)) return sum;
    if (term == T(0.0)) return sum;
  }
  throw Error(ErrorCode::MaxTermsExceeded, "hyper2f1", "no convergence within " + std::to_string(max_terms) + " terms");
}

}  // namespace

double gauss_2f1(double a, double b, double c, double z, double tol, int max_terms) {
  return sum_series<double>(a, b, c, z, tol, max_terms);
}

std::complex<double> gauss_2f1_complex(double a, double b, double c, std::complex<double> z, double tol,
                                       int max_terms) {
  return sum_series<std::complex<double>>(a, b, c, z, tol, max_terms);
}

std::vector<double> gauss_2f1_terms(double a, double b, double c, int K) {
  check_pole(a, b, c);
  std::vector<double> e(K + 1, 0.0);
  const int tdeg = terminating_degree(a, b);
  const int last = tdeg >= 0 ? std::min(K, tdeg) : K;
  long double t = 1.0L;
  e[0] = 1.0;
  for (int k = 0; k < last; ++k) {
    t *= static_cast<long double>(a + k) * (b + k) / ((static_cast<long double>(c) + k) * (k + 1));
    e[k + 1] = static_cast<double>(t);
  }
  return e;
}

}  // namespace heunkit
