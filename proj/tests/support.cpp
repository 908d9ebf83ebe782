#include "support.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "heunkit/asymptotics.hpp"
#include "heunkit/errors.hpp"

namespace testsupport {

std::mt19937_64& rng() {
  static std::mt19937_64 g(20240917ULL);
  return g;
}

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

double rel_err(double got, double want) {
  const double d = std::fabs(got - want);
  return want == 0.0 ? d : d / std::fabs(want);
}

static bool near_int(double v, double gap) { return std::fabs(v - std::round(v)) < gap; }

heunkit::HeunParams random_params() {
  for (;;) {
    const double a = uniform(-5, 5);
    if (std::fabs(a) < 0.05 || std::fabs(a + 1) < 0.05) continue;
    const double g = uniform(-3, 3);
    if (near_int(g, 0.05)) continue;
    return heunkit::make_params(a, uniform(-3, 3), uniform(-3, 3), uniform(-3, 3), g, uniform(-3, 3));
  }
}

namespace {

long double poch(long double x, int n) {
  long double r = 1.0L;
  for (int k = 0; k < n; ++k) r *= x + k;
  return r;
}

struct Enum {
  const heunkit::HeunParams& p;
  double lam;
  int m, variant;
  const std::vector<int>& caps;
  const std::vector<int>& bcaps;
  int I_max;
  long double z;

  long double a1(int l) const {
    if (variant == 0) return l / 2.0L + p.alpha / 2.0L + lam / 2.0L;
    return -static_cast<long double>(caps[l]);
  }
  long double b1(int l) const {
    if (variant == 2) return -static_cast<long double>(bcaps[l]);
    return l / 2.0L + p.beta / 2.0L + lam / 2.0L;
  }
  int cap(int l) const { return variant == 0 ? I_max : caps[l]; }
  long double Gamma(int k) const {
    const long double a = p.a, d = p.delta, g = p.gamma;
    if (variant == 0) return (p.alpha + p.beta - d + k + lam + a * (d + g - 1 + k + lam)) / (2 * (1 + a));
    if (variant == 1) return (-2.0L * caps[k] + p.beta - d + a * (d + g + lam + k - 1)) / (2 * (1 + a));
    return (-2.0L * caps[k] - 2.0L * bcaps[k] - k - d - lam + a * (d + g + k - 1 + lam)) / (2 * (1 + a));
  }
  long double Q() const { return p.q / (4.0L * (1 + p.a)); }

  long double level_ratio(int l, int i_prev, int i) const {
    const long double d1 = l / 2.0L + 1 + lam / 2.0L, d2 = l / 2.0L + 0.5L + p.gamma / 2.0L + lam / 2.0L;
    return poch(a1(l), i) / poch(a1(l), i_prev) * poch(b1(l), i) / poch(b1(l), i_prev) /
           (poch(d1, i) / poch(d1, i_prev) * poch(d2, i) / poch(d2, i_prev));
  }
  long double weight(int k, int i) const {
    return ((i + k / 2.0L + lam / 2.0L) * (i + Gamma(k)) + Q()) /
           ((i + k / 2.0L + 0.5L + lam / 2.0L) * (i + k / 2.0L + p.gamma / 2.0L + lam / 2.0L));
  }

  long double rec(int l, int i_prev, long double acc) const {
    long double s = 0.0L;
    for (int i = i_prev; i <= cap(l); ++i) {
      long double term = acc * (l == 0 ? level_ratio(0, 0, i) : level_ratio(l, i_prev, i));
      if (l == m)
        s += term * std::pow(z, i);
      else
        s += rec(l + 1, i, term * weight(l, i));
    }
    return s;
  }
};

}  // namespace

long double nested_sum_bruteforce(const heunkit::HeunParams& p, double lambda, int m, int variant,
                                  const std::vector<int>& caps, const std::vector<int>& bcaps, int I_max, double z) {
  Enum e{p, lambda, m, variant, caps, bcaps, I_max, z};
  return e.rec(0, 0, 1.0L);
}

double region_point(double a, double frac, bool positive_only) {
  const double R = frac * std::min(1.0, std::fabs(a));
  for (int tries = 0; tries < 1000; ++tries) {
    const double x = positive_only ? uniform(0.02 * R, R) : uniform(-R, R);
    if (std::fabs(x) < 1e-3) continue;
    if (heunkit::classify_region(a, x).contains_x) return x;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double transform_inverse(const std::string& id, double a, double xi) {
  if (id == "delta_flip" || id == "gamma_delta_flip") return xi;
  if (id == "reflect" || id == "reflect_delta_flip") return 1 - xi;
  if (id == "invert") return 1 / xi;
  if (id == "mobius_beta" || id == "mobius_beta_delta_flip") return a * xi / (xi - (1 - a));
  if (id == "invert_shift") return 1 / (1 - xi);
  if (id == "mobius_alpha") return a * (xi - 1) / (xi - a);
  throw std::invalid_argument("no inverse for " + id);
}

heunkit::HeunParams base_transform_params(double a) {
  return heunkit::make_params(a, uniform(-1, 1), uniform(-1, 1), uniform(-1.5, 1.5), uniform(0.3, 0.9),
                              uniform(0.2, 0.8));
}

namespace {

std::optional<heunkit::HeunParams> try_linear_instance(const heunkit::LocalTransform& t, heunkit::HeunParams p) {
  using heunkit::map_params;
  auto alpha_of = [&](double al) {
    heunkit::HeunParams c = p;
    c.alpha = al;
    return map_params(t, c).alpha;
  };
  const double f0 = alpha_of(0.0), slope = alpha_of(1.0) - f0;
  p.alpha = (-1.0 - f0) / slope;
  // c_2 = 0 for alpha' = -1 reduces to q'^2 + K q' - a' gamma' alpha' beta' = 0.
  const heunkit::HeunParams m = map_params(t, p);
  const double K = 1 + m.alpha + m.beta - m.delta + m.a * (m.delta + m.gamma);
  const double c = -m.a * m.gamma * m.alpha * m.beta;
  if (K * K - 4 * c < 0) return std::nullopt;
  const double target = (-K + std::sqrt(K * K - 4 * c)) / 2;
  auto q_of = [&](double q) {
    heunkit::HeunParams v = p;
    v.q = q;
    return map_params(t, v).q;
  };
  const double g0 = q_of(0.0), gs = q_of(1.0) - g0;
  p.q = (target - g0) / gs;
  return p;
}

}  // namespace

heunkit::HeunParams linear_instance(const heunkit::LocalTransform& t, double a) {
  for (;;)
    if (auto p = try_linear_instance(t, base_transform_params(a))) return *p;
}

std::vector<double> transform_samples(const heunkit::LocalTransform& t, const heunkit::HeunParams& p, int count) {
  const heunkit::HeunParams m = heunkit::map_params(t, p);
  std::vector<double> xs;
  for (int tries = 0; tries < 4000 && static_cast<int>(xs.size()) < count; ++tries) {
    const double xi = uniform(-0.4, 0.4) * std::min(1.0, std::fabs(m.a));
    if (std::fabs(xi) < 0.02) continue;
    const double x = transform_inverse(t.id, p.a, xi);
    if (!std::isfinite(x) || std::fabs(x) < 0.05 || std::fabs(x - 1) < 0.05 || std::fabs(x - p.a) < 0.05) continue;
    if (!heunkit::classify_region(m.a, xi).contains_x) continue;
    try {
      if (!std::isfinite(heunkit::prefactor_jet(t, p, x).v)) continue;
    } catch (const heunkit::Error&) {
      continue;
    }
    xs.push_back(x);
  }
  return xs;
}

double printed_asymptotic(const std::string& id, heunkit::AsymptoticBranch branch, double a, double x) {
  using B = heunkit::AsymptoticBranch;
  if (id == "delta_flip" || id == "gamma_delta_flip") {
    if (branch == B::Infinite) return 1 / (1 - (-x * x / a + (1 + a) * x / a));
    if (branch == B::NearMinusOne) return 1 / (1 + x * x / a);
    return 1 / (1 - (1 + a) * x / a);
  }
  if (id == "reflect" || id == "reflect_delta_flip") {
    if (branch == B::Infinite) return 1 / (1 - (-1 / (1 - a) * (1 - x) * (1 - x) + (2 - a) / (1 - a) * (1 - x)));
    if (branch == B::NearMinusOne) return (2 - x) / (1 + (1 - x) * (1 - x) / (1 - a));
    return 1 / (1 - (2 - a) / (1 - a) * (1 - x));
  }
  if (id == "invert") {
    if (branch == B::Infinite) return 1 / (1 - (-a / (x * x) + (1 + a) / x));
    if (branch == B::NearMinusOne) return (1 + 1 / x) / (1 + a / (x * x));
    return 1 / (1 - (1 + a) / x);
  }
  if (id == "mobius_beta" || id == "mobius_beta_delta_flip") {
    const double d = x - a;
    if (branch == B::Infinite) return 1 / (1 - (-(1 - a) * x * x / (d * d) + (2 - a) * x / d));
    if (branch == B::NearMinusOne) return (1 + (1 - a) * x / d) / (1 + (1 - a) * x * x / (d * d));
    return 1 / (1 - (2 - a) * x / d);
  }
  if (id == "invert_shift") {
    const double s = (x - 1) / x;
    if (branch == B::Infinite) return 1 / (1 - (a / (1 - a) * s * s + (1 - 2 * a) / (1 - a) * s));
    if (branch == B::NearMinusOne) return (1 + s) / (1 - a / (1 - a) * s * s);
    return 1 / (1 - (2 * a - 1) / (a - 1) * s);
  }
  if (id == "mobius_alpha") {
    const double s = (x - 1) / (x - a);
    if (branch == B::Infinite) return 1 / (1 - (-a * s * s + (1 + a) * s));
    if (branch == B::NearMinusOne) return (1 + a * s) / (1 + a * s * s);
    return 1 / (1 - (1 + a) * s);
  }
  throw std::invalid_argument("no closed form for " + id);
}

}  // namespace testsupport
