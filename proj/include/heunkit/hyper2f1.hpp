#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace heunkit {

// Rising factorial (x)_n. Exactly zero once a factor x+k vanishes.
double pochhammer(double x, int n);
long double pochhammer_ext(long double x, int n);

// Gauss series 2F1(a,b;c;z) for real z.
// Terminating series (a or b a nonpositive integer) are summed exactly for any z.
// Errors: PoleAtC, NoConvergence (|z| >= 1 and not terminating), MaxTermsExceeded.
double gauss_2f1(double a, double b, double c, double z, double tol = 1e-14, int max_terms = 10000);

// Taylor coefficients e_0..e_K of 2F1(a,b;c;.), zero past a termination.
std::vector<double> gauss_2f1_terms(double a, double b, double c, int K);

// Polynomial degree when a or b is a nonpositive integer, else -1.
int terminating_degree(double a, double b);

// Same series at a complex argument, used by the integral kernels.
std::complex<double> gauss_2f1_complex(double a, double b, double c, std::complex<double> z, double tol = 1e-15,
                                       int max_terms = 10000);

}  // namespace heunkit
