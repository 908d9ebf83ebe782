#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "heunkit/errors.hpp"
#include "heunkit/params.hpp"
#include "heunkit/transforms192.hpp"

namespace testsupport {

// Code of the heunkit::Error thrown by f, or nullopt if it returns normally.
template <class F>
std::optional<heunkit::ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const heunkit::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

std::mt19937_64& rng();
double uniform(double lo, double hi);
int uniform_int(int lo, int hi);

double rel_err(double got, double want);

// Parameters with a in [-5,5] away from 0 and -1, the rest in [-3,3],
// gamma kept off the nonpositive integers and 1-gamma off the integers.
heunkit::HeunParams random_params();

// Brute-force enumeration of the nested sums for sub-series m, written
// directly from the Pochhammer form (independent of the library's DP).
// variant: 0 infinite (uniform cap I_max), 1 alpha-capped, 2 alpha/beta-capped.
long double nested_sum_bruteforce(const heunkit::HeunParams& p, double lambda, int m, int variant,
                                  const std::vector<int>& caps, const std::vector<int>& bcaps, int I_max, double z);

// A point x with |x| < frac*min(1,|a|) that lies in the frozen-coefficient region of a.
// Returns NaN if none was found.
double region_point(double a, double frac, bool positive_only);

// x as a function of the mapped variable for the built-in transforms.
double transform_inverse(const std::string& id, double a, double xi);

// Moderate parameters for transform checks at a given a.
heunkit::HeunParams base_transform_params(double a);

// Parameters whose mapped series is a linear polynomial (alpha' = -1 with the
// matching accessory value), starting from random draws at the given a.
heunkit::HeunParams linear_instance(const heunkit::LocalTransform& t, double a);

// Up to count points x whose mapped variable lies well inside the mapped disc and
// region, away from 0, 1, a, with a real prefactor.
std::vector<double> transform_samples(const heunkit::LocalTransform& t, const heunkit::HeunParams& p, int count);

// Closed forms of the frozen-coefficient asymptotics of each transformed series,
// written directly in (a, x).
double printed_asymptotic(const std::string& id, heunkit::AsymptoticBranch branch, double a, double x);

}  // namespace testsupport
