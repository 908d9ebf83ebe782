#include "heunkit/series3trf.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "heunkit/errors.hpp"
#include "internal.hpp"

namespace heunkit {

using detail::snap_zero;

namespace {

constexpr double kDegenerateA = 1e-12;

void check_common(const HeunParams& p, const IndicialRoot& r) {
  if (std::fabs(1.0 + p.a) <= kDegenerateA)
    throw Error(ErrorCode::DegenerateA, "series3trf", "|1+a| <= 1e-12; use the a ~ -1 asymptotic branch");
  if (r.kind == RootKind::SecondKind && is_integer(r.lambda))
    throw Error(ErrorCode::DegenerateSecondKind, "series3trf", "1-gamma is an integer");
}

void check_monotone(const std::vector<int>& caps, const char* what) {
  for (std::size_t i = 0; i < caps.size(); ++i) {
    if (caps[i] < 0) throw Error(ErrorCode::CapsNotMonotone, "series3trf", std::string(what) + " caps must be >= 0");
    if (i > 0 && caps[i] < caps[i - 1])
      throw Error(ErrorCode::CapsNotMonotone, "series3trf", std::string(what) + " caps must be nondecreasing");
  }
}

void check_exponent(double value, int cap0, double lambda, const char* name) {
  const double expect = bterm_alpha(cap0, lambda);
  if (std::fabs(value - expect) > 1e-10 * std::max(1.0, std::fabs(expect)))
    throw Error(ErrorCode::InconsistentParameterization, "series3trf",
                std::string(name) + " = " + std::to_string(value) + " but -2*cap0 - lambda = " + std::to_string(expect));
}

long double nonzero(long double v, long double scale, const char* what) {
  if (snap_zero(v, scale) == 0.0L) throw Error(ErrorCode::SingularDenominator, "series3trf", what);
  return v;
}

}  // namespace

double bterm_alpha(int cap0, double lambda) { return -2.0 * cap0 - lambda; }

TrfModel make_trf_model(const HeunParams& p, const IndicialRoot& r, const SubSeriesSpec& spec) {
  check_common(p, r);
  const long double lam = r.lambda, a = p.a, g = p.gamma, d = p.delta;
  const int M = spec.m;
  if (M < 0) throw std::invalid_argument("series3trf: m must be >= 0");

  TrfModel model;
  model.variant = spec.variant;
  model.lambda = r.lambda;
  model.Q = static_cast<long double>(p.q) / (4.0L * (1.0L + a));

  if (spec.variant == TrfVariant::InfiniteSeries) {
    if (spec.I_max < 1) throw std::invalid_argument("series3trf: I_max must be >= 1");
  } else {
    if (static_cast<int>(spec.index_caps.size()) < M + 1)
      throw std::invalid_argument("series3trf: need caps alpha_0..alpha_m");
    check_monotone(spec.index_caps, "alpha");
    check_exponent(p.alpha, spec.index_caps[0], r.lambda, "alpha");
    if (spec.variant == TrfVariant::PolyBTerm_B) {
      if (static_cast<int>(spec.beta_caps.size()) < M + 1)
        throw std::invalid_argument("series3trf: need caps beta_0..beta_m");
      check_monotone(spec.beta_caps, "beta");
      check_exponent(p.beta, spec.beta_caps[0], r.lambda, "beta");
      for (int i = 0; i <= M; ++i)
        if (spec.index_caps[i] > spec.beta_caps[i])
          throw Error(ErrorCode::InconsistentParameterization, "series3trf", "requires alpha_i <= beta_i");
    }
  }

  model.levels.resize(M + 1);
  for (int l = 0; l <= M; ++l) {
    TrfLevel& L = model.levels[l];
    const long double half = 0.5L * (l + lam);
    L.d1 = 1.0L + half;
    L.d2 = 0.5L + 0.5L * g + half;
    L.s = half;
    L.e = 0.5L * (l + g + lam);
    const long double aterm = a * (d + g - 1.0L + l + lam);
    switch (spec.variant) {
      case TrfVariant::InfiniteSeries:
        L.p1 = half + 0.5L * p.alpha;
        L.p2 = half + 0.5L * p.beta;
        L.Gamma = (p.alpha + p.beta - d + l + lam + aterm) / (2.0L * (1.0L + a));
        L.cap = spec.I_max;
        break;
      case TrfVariant::PolyBTerm_S: {
        const long double al = spec.index_caps[l];
        L.p1 = -al;
        L.p2 = half + 0.5L * p.beta;
        L.Gamma = (-2.0L * al + p.beta - d + aterm) / (2.0L * (1.0L + a));
        L.cap = spec.index_caps[l];
        break;
      }
      case TrfVariant::PolyBTerm_B: {
        const long double al = spec.index_caps[l], bl = spec.beta_caps[l];
        L.p1 = -al;
        L.p2 = -bl;
        L.Gamma = (-2.0L * al - 2.0L * bl - l - d - lam + aterm) / (2.0L * (1.0L + a));
        L.cap = spec.index_caps[l];
        break;
      }
    }
  }
  const TrfLevel& L0 = model.levels[0];
  model.f0_a = static_cast<double>(L0.p1);
  model.f0_b = static_cast<double>(L0.p2);
  model.f0_c = static_cast<double>(std::fabs(L0.d1 - 1.0L) < 1e-15L ? L0.d2 : L0.d1);
  return model;
}

TrfWeights trf_weights(const TrfModel& model, int k) {
  return {static_cast<double>(model.levels.at(k).Gamma), static_cast<double>(model.Q)};
}

long double trf_b_ratio(const TrfLevel& L, long j) {
  const long double f1 = snap_zero(j + L.p1, j + std::fabs(L.p1));
  const long double f2 = snap_zero(j + L.p2, j + std::fabs(L.p2));
  if (f1 == 0.0L || f2 == 0.0L) return 0.0L;
  const long double den = nonzero(j + L.d1, j + std::fabs(L.d1), "B-step denominator vanishes") *
                          nonzero(j + L.d2, j + std::fabs(L.d2), "B-step denominator vanishes");
  return f1 * f2 / den;
}

long double trf_a_numerator(const TrfLevel& L, long double Q, long double i) { return (i + L.s) * (i + L.Gamma) + Q; }

long double trf_a_weight(const TrfLevel& L, long double Q, long i) {
  const long double den = nonzero(i + L.s + 0.5L, i + std::fabs(L.s) + 0.5L, "A-step denominator vanishes") *
                          nonzero(i + L.e, i + std::fabs(L.e), "A-step denominator vanishes");
  return trf_a_numerator(L, Q, i) / den;
}

std::vector<std::vector<long double>> sub_series_coeffs(const TrfModel& model) {
  const int M = static_cast<int>(model.levels.size()) - 1;
  std::vector<std::vector<long double>> D(M + 1);
  for (int l = 0; l <= M; ++l) {
    const TrfLevel& L = model.levels[l];
    D[l].assign(L.cap + 1, 0.0L);
    for (int j = 0; j <= L.cap; ++j) {
      long double v = 0.0L;
      if (l == 0) {
        v = j == 0 ? 1.0L : 0.0L;
      } else if (j < static_cast<int>(D[l - 1].size())) {
        v = D[l - 1][j] * trf_a_weight(model.levels[l - 1], model.Q, j);
      }
      if (j > 0) v += D[l][j - 1] * trf_b_ratio(L, j - 1);
      D[l][j] = v;
    }
  }
  return D;
}

std::pair<double, double> zeta_eta(const HeunParams& p, double x) {
  return {-x * x / p.a, (1.0 + p.a) * x / p.a};
}

namespace {

void check_x(double x, double lambda) {
  if (x <= 0.0 && !is_integer(lambda))
    throw Error(ErrorCode::NegativeBase, "series3trf", "x <= 0 with non-integer lambda");
  if (x == 0.0 && lambda < 0.0) throw Error(ErrorCode::SingularPoint, "series3trf", "x = 0 with negative lambda");
}

long double xpow(double x, double lambda) {
  if (lambda == 0.0) return 1.0L;
  if (is_integer(lambda)) return std::pow(static_cast<long double>(x), std::round(lambda));
  return std::pow(static_cast<long double>(x), static_cast<long double>(lambda));
}

long double block_value(const std::vector<long double>& Dm, long double z) {
  long double acc = 0.0L;
  for (std::size_t j = Dm.size(); j-- > 0;) acc = acc * z + Dm[j];
  return acc;
}

TrfResult evaluate(const TrfModel& model, const HeunParams& p, Normalization c0, double x, double tol) {
  check_x(x, model.lambda);
  const auto D = sub_series_coeffs(model);
  const auto [z, eta] = zeta_eta(p, x);
  const long double pref = c0.c0 * xpow(x, model.lambda);
  TrfResult out;
  long double acc = 0.0L, etam = 1.0L;
  for (std::size_t m = 0; m < D.size(); ++m) {
    const long double ym = pref * etam * block_value(D[m], z);
    out.partials.push_back(static_cast<double>(ym));
    acc += ym;
    etam *= eta;
  }
  out.value = static_cast<double>(acc);
  const std::size_t n = out.partials.size();
  const double bound = tol * std::fabs(out.value);
  out.converged = n >= 2 && std::fabs(out.partials[n - 1]) <= bound && std::fabs(out.partials[n - 2]) <= bound;
  return out;
}

}  // namespace

TrfResult build_3trf_infinite(const HeunParams& p, const IndicialRoot& r, Normalization c0, int M, int I_max, double x) {
  SubSeriesSpec spec;
  spec.m = M;
  spec.I_max = I_max;
  spec.variant = TrfVariant::InfiniteSeries;
  return evaluate(make_trf_model(p, r, spec), p, c0, x, 1e-14);
}

TrfResult build_3trf_adaptive(const HeunParams& p, const IndicialRoot& r, Normalization c0, double x, double tol,
                              int M_max, int I_max) {
  SubSeriesSpec spec;
  spec.m = M_max;
  spec.I_max = I_max;
  const TrfModel model = make_trf_model(p, r, spec);
  TrfResult full = evaluate(model, p, c0, x, tol);
  // Trim trailing blocks that no longer move the sum.
  long double acc = 0.0L;
  TrfResult out;
  for (std::size_t m = 0; m < full.partials.size(); ++m) {
    acc += full.partials[m];
    out.partials.push_back(full.partials[m]);
    const double bound = tol * std::fabs(static_cast<double>(acc));
    if (m >= 1 && std::fabs(full.partials[m]) <= bound && std::fabs(full.partials[m - 1]) <= bound) {
      out.converged = true;
      break;
    }
  }
  out.value = static_cast<double>(acc);
  return out;
}

TrfResult build_3trf_poly_Bterm(const HeunParams& p, const IndicialRoot& r, Normalization c0,
                                const std::vector<int>& caps, double x, TrfVariant variant,
                                const std::vector<int>& beta_caps) {
  if (variant == TrfVariant::InfiniteSeries)
    throw std::invalid_argument("series3trf: build_3trf_poly_Bterm needs a polynomial variant");
  if (caps.empty()) throw std::invalid_argument("series3trf: empty caps");
  SubSeriesSpec spec;
  spec.m = static_cast<int>(caps.size()) - 1;
  spec.index_caps = caps;
  spec.beta_caps = beta_caps;
  spec.variant = variant;
  return evaluate(make_trf_model(p, r, spec), p, c0, x, 1e-14);
}

long double coefficient_of_order(const TrfModel& model, const HeunParams& p, Normalization c0, int k) {
  const auto D = sub_series_coeffs(model);
  const long double A = (1.0L + p.a) / p.a, B = -1.0L / p.a;
  long double sum = 0.0L;
  for (int m = k % 2; m <= k && m < static_cast<int>(D.size()); m += 2) {
    const int j = (k - m) / 2;
    if (j >= static_cast<int>(D[m].size())) continue;
    sum += D[m][j] * std::pow(A, m) * std::pow(B, j);
  }
  return c0.c0 * sum;
}

double coefficient_of_order(const HeunParams& p, const IndicialRoot& r, Normalization c0, int k, int M, int I_max) {
  if (k < 0 || M < k || 2 * I_max < k)
    throw std::invalid_argument("series3trf: need M >= k and I_max >= ceil(k/2)");
  SubSeriesSpec spec;
  spec.m = M;
  spec.I_max = I_max;
  return static_cast<double>(coefficient_of_order(make_trf_model(p, r, spec), p, c0, k));
}

double trf_sub_term(const TrfModel& model, const HeunParams& p, Normalization c0, int m, double x) {
  check_x(x, model.lambda);
  const auto D = sub_series_coeffs(model);
  const auto [z, eta] = zeta_eta(p, x);
  return static_cast<double>(c0.c0 * xpow(x, model.lambda) * std::pow(static_cast<long double>(eta), m) *
                             block_value(D.at(m), z));
}

}  // namespace heunkit
