#include "heunkit/integralform.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "heunkit/errors.hpp"
#include "heunkit/hyper2f1.hpp"
#include "heunkit/quadrature.hpp"

namespace heunkit {

namespace {

void require_exponent(double e, const char* what) {
  if (!(e > -1.0))
    throw Error(ErrorCode::DivergentIntegral, "integralform",
                std::string(what) + " exponent " + std::to_string(e) + " <= -1");
}

}  // namespace

double beta_function(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) throw Error(ErrorCode::DivergentIntegral, "integralform", "Beta arguments must be > 0");
  if (x + y < 150.0) return std::tgamma(x) * std::tgamma(y) / std::tgamma(x + y);
  return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

double beta_quadrature(double x, double y, int order) {
  require_exponent(x - 1.0, "t");
  require_exponent(y - 1.0, "1-t");
  const QuadRule r = weighted_rule01(order, x - 1.0);
  long double s = 0.0L;
  for (std::size_t k = 0; k < r.nodes.size(); ++k) s += r.weights[k] * std::pow(1.0L - r.nodes[k], y - 1.0);
  return static_cast<double>(s);
}

BetaCheck beta_kernel_identity_check(int i_prev, int l, int j, const HeunParams& p, const IndicialRoot& r,
                                     const KernelEvalConfig& cfg) {
  const double lam = r.lambda;
  const double c1 = i_prev + 0.5 * l + 0.5 * lam;
  const double c2 = i_prev + 0.5 * l - 0.5 + 0.5 * p.gamma + 0.5 * lam;
  BetaCheck out;
  out.lhs_t = beta_quadrature(c1, j + 1.0, cfg.quad_order_t);
  out.rhs_t = beta_function(c1, j + 1.0);
  out.lhs_u = beta_quadrature(c2, j + 1.0, cfg.quad_order_u);
  out.rhs_u = beta_function(c2, j + 1.0);
  return out;
}

namespace {

template <class T>
T weighted_sum(T w, const OperatorWeights& ow, const SeriesParams2F1& f, double tol) {
  const int tdeg = terminating_degree(f.a, f.b);
  if (tdeg < 0 && !(std::abs(w) < 1.0))
    throw Error(ErrorCode::NoConvergence, "integralform", "|w| >= 1 for a non-terminating series");
  const double s = ow.s();
  long double e = 1.0L;
  T wk = 1.0, sum = 0.0;
  int small = 0;
  for (int k = 0; k < 100000; ++k) {
    const T term = T(static_cast<double>(((k + s) * (k + ow.Omega) + ow.Q) * e)) * wk;
    sum += term;
    if (tdeg >= 0 && k >= tdeg) return sum;
    small = std::abs(term) <= tol * std::abs(sum) ? small + 1 : 0;
    if (small >= 3) return sum;
    e *= static_cast<long double>(f.a + k) * (f.b + k) / ((static_cast<long double>(f.c) + k) * (k + 1));
    wk *= w;
  }
  throw Error(ErrorCode::NoConvergence, "integralform", "operator-weighted series did not converge");
}

}  // namespace

double operator_weighted_2f1(double w, const OperatorWeights& weights, const SeriesParams2F1& f, double tol) {
  return weighted_sum<double>(w, weights, f, tol);
}

cplx operator_weighted_2f1(cplx w, const OperatorWeights& weights, const SeriesParams2F1& f, double tol) {
  return weighted_sum<cplx>(w, weights, f, tol);
}

cplx Laurent::coeff(int k) const {
  const int idx = k - lo;
  return idx >= 0 && idx < static_cast<int>(c.size()) ? c[idx] : cplx(0.0);
}

Laurent laurent_mul(const Laurent& x, const Laurent& y, int hi) {
  Laurent out;
  out.lo = x.lo + y.lo;
  const int top = std::min(hi, x.lo + static_cast<int>(x.c.size()) - 1 + y.lo + static_cast<int>(y.c.size()) - 1);
  out.c.assign(std::max(0, top - out.lo + 1), cplx(0.0));
  for (std::size_t i = 0; i < x.c.size(); ++i)
    for (std::size_t j = 0; j < y.c.size(); ++j) {
      const int k = x.lo + static_cast<int>(i) + y.lo + static_cast<int>(j);
      if (k > hi) break;
      out.c[k - out.lo] += x.c[i] * y.c[j];
    }
  return out;
}

namespace {

// (1/v)(1 - 1/v)^N as a Laurent polynomial in v.
Laurent inverse_binomial(int N) {
  Laurent L;
  L.lo = -N - 1;
  L.c.assign(N + 1, cplx(0.0));
  double binom = 1.0;
  for (int k = 0; k <= N; ++k) {
    // coefficient of v^{-k-1}
    L.c[N - k] = (k % 2 ? -binom : binom);
    binom = binom * (N - k) / (k + 1);
  }
  return L;
}

// Taylor coefficients of (1 - c v)^{-b} up to v^K.
std::vector<cplx> binomial_series(double b, cplx c, int K) {
  std::vector<cplx> out(K + 1);
  cplx t = 1.0;
  for (int k = 0; k <= K; ++k) {
    out[k] = t;
    t *= cplx((b + k) / (k + 1.0)) * c;
  }
  return out;
}

std::vector<cplx> taylor_mul(const std::vector<cplx>& x, const std::vector<cplx>& y, int K) {
  std::vector<cplx> out(K + 1, cplx(0.0));
  for (int i = 0; i <= K && i < static_cast<int>(x.size()); ++i)
    for (int j = 0; i + j <= K && j < static_cast<int>(y.size()); ++j) out[i + j] += x[i] * y[j];
  return out;
}

cplx residue_of_taylor(int N, const std::vector<cplx>& g) {
  Laurent G;
  G.lo = 0;
  G.c = g;
  return laurent_mul(inverse_binomial(N), G, -1).coeff(-1);
}

}  // namespace

cplx contour_residue(int N, double b, cplx Z, int laurent_cap) {
  if (N < 0) throw Error(ErrorCode::NonIntegerCap, "integralform", "residue needs a nonnegative integer power");
  const int K = std::min(N, laurent_cap);
  return residue_of_taylor(N, binomial_series(b, Z, K));
}

double kernel_pochhammer_sum(const TrfModel& model, int l, int i_prev, double z) {
  const TrfLevel& L = model.levels.at(l);
  const long double c1 = L.d1 - 1.0L + i_prev, c2 = L.d2 - 1.0L + i_prev;
  const long double n1 = pochhammer_ext(L.p1, i_prev), n2 = pochhammer_ext(L.p2, i_prev);
  const long double m1 = pochhammer_ext(L.d1, i_prev), m2 = pochhammer_ext(L.d2, i_prev);
  long double sum = 0.0L;
  for (int i = i_prev; i <= L.cap; ++i) {
    const long double ratio = (pochhammer_ext(L.p1, i) / n1) * (pochhammer_ext(L.p2, i) / n2) /
                              ((pochhammer_ext(L.d1, i) / m1) * (pochhammer_ext(L.d2, i) / m2));
    sum += ratio * std::pow(static_cast<long double>(z), i);
  }
  return static_cast<double>(sum / (c1 * c2));
}

namespace {

bool is_poly(const TrfModel& m) { return m.variant != TrfVariant::InfiniteSeries; }

// Inner factor of the level-l kernel at Z = W(1-t)(1-u) for index i_prev.
cplx kernel_inner(const TrfModel& model, const TrfLevel& L, int i_prev, cplx Z, const KernelEvalConfig& cfg) {
  if (is_poly(model)) return contour_residue(L.cap - i_prev, static_cast<double>(L.p2) + i_prev, Z, cfg.laurent_cap);
  return gauss_2f1_complex(static_cast<double>(L.p1) + i_prev, static_cast<double>(L.p2) + i_prev, 1.0, Z, cfg.tol);
}

}  // namespace

double kernel_integral(const TrfModel& model, int l, int i_prev, double z, const KernelEvalConfig& cfg) {
  if (l < 1) throw std::invalid_argument("integralform: kernels start at level 1");
  const TrfLevel& L = model.levels.at(l);
  const double et = static_cast<double>(L.d1) - 2.0 + i_prev;
  const double eu = static_cast<double>(L.d2) - 2.0 + i_prev;
  require_exponent(et, "t");
  require_exponent(eu, "u");
  const QuadRule rt = weighted_rule01(cfg.quad_order_t, et);
  const QuadRule ru = weighted_rule01(cfg.quad_order_u, eu);
  cplx sum = 0.0;
  for (std::size_t a = 0; a < rt.nodes.size(); ++a)
    for (std::size_t b = 0; b < ru.nodes.size(); ++b) {
      const cplx Z = z * (1.0 - rt.nodes[a]) * (1.0 - ru.nodes[b]);
      sum += rt.weights[a] * ru.weights[b] * kernel_inner(model, L, i_prev, Z, cfg);
    }
  return (sum * std::pow(z, i_prev)).real();
}

WChain w_chain(cplx z, const std::vector<std::array<cplx, 3>>& tuv) {
  WChain out;
  cplx w = z;
  for (const auto& node : tuv) {
    const cplx t = node[0], u = node[1], v = node[2];
    w = v / (v - 1.0) * (w * t * u) / (1.0 - w * v * (1.0 - t) * (1.0 - u));
    out.level_values.push_back(w);
  }
  return out;
}

namespace {

struct NodeGrid {
  QuadRule t, u;
};

NodeGrid level_grid(const TrfLevel& L, const KernelEvalConfig& cfg) {
  const double et = static_cast<double>(L.d1) - 2.0;
  const double eu = static_cast<double>(L.d2) - 2.0;
  require_exponent(et, "t");
  require_exponent(eu, "u");
  return {weighted_rule01(cfg.quad_order_t, et), weighted_rule01(cfg.quad_order_u, eu)};
}

// H_l(W) for a polynomial model: the level-l Beta integrals of the v residue of
// (1/v)(1-1/v)^cap (1 - c v)^{-p2} Phi(w(v)), w(v) = v/(v-1) * W t u / (1 - c v), c = W(1-t)(1-u).
cplx poly_level_value(const TrfLevel& L, const NodeGrid& g, const std::vector<cplx>& phi, cplx W) {
  const int N = L.cap;
  cplx sum = 0.0;
  for (std::size_t a = 0; a < g.t.nodes.size(); ++a)
    for (std::size_t b = 0; b < g.u.nodes.size(); ++b) {
      const double t = g.t.nodes[a], u = g.u.nodes[b];
      const cplx c = W * (1.0 - t) * (1.0 - u);
      const cplx A = W * t * u;
      // w(v) = -A * (v + v^2 + ...) * (1 + c v + c^2 v^2 + ...)
      std::vector<cplx> geo(N + 1), vv(N + 1, cplx(0.0));
      cplx ck = 1.0;
      for (int k = 0; k <= N; ++k, ck *= c) geo[k] = ck;
      for (int k = 1; k <= N; ++k) vv[k] = -A;
      const std::vector<cplx> w = taylor_mul(vv, geo, N);
      // Phi(w(v)) by Horner on truncated series
      std::vector<cplx> ph(N + 1, cplx(0.0));
      for (std::size_t i = phi.size(); i-- > 0;) {
        ph = taylor_mul(ph, w, N);
        ph[0] += phi[i];
      }
      const std::vector<cplx> gser = taylor_mul(binomial_series(static_cast<double>(L.p2), c, N), ph, N);
      sum += g.t.weights[a] * g.u.weights[b] * residue_of_taylor(N, gser);
    }
  return sum;
}

// W-coefficients 0..K of H_l for the infinite model. With A = W t u and Z = W (1-t)(1-u),
//   phi_i A^i 2F1(p1+i, p2+i; 1; Z) = sum_k phi_i e_{i,k} (t u)^i ((1-t)(1-u))^k W^{i+k},
// so each coefficient is a sum of products of one-dimensional t and u moments.
std::vector<cplx> infinite_level_coeffs(const TrfLevel& L, const NodeGrid& g, const std::vector<cplx>& phi, int K) {
  auto moments = [K](const QuadRule& q) {
    // m[i][k] = sum_a w_a t_a^i (1-t_a)^k, for i + k <= K
    std::vector<std::vector<double>> m(K + 1, std::vector<double>(K + 1, 0.0));
    for (std::size_t a = 0; a < q.nodes.size(); ++a) {
      const double t = q.nodes[a], s = 1.0 - t;
      double ti = q.weights[a];
      for (int i = 0; i <= K; ++i, ti *= t) {
        double v = ti;
        for (int k = 0; i + k <= K; ++k, v *= s) m[i][k] += v;
      }
    }
    return m;
  };
  const auto mt = moments(g.t), mu = moments(g.u);
  std::vector<cplx> out(K + 1, cplx(0.0));
  for (int i = 0; i <= K && i < static_cast<int>(phi.size()); ++i) {
    if (phi[i] == cplx(0.0)) continue;
    const std::vector<double> e =
        gauss_2f1_terms(static_cast<double>(L.p1) + i, static_cast<double>(L.p2) + i, 1.0, K - i);
    for (int k = 0; i + k <= K; ++k) out[i + k] += phi[i] * e[k] * mt[i][k] * mu[i][k];
  }
  return out;
}

// Taylor coefficients 0..K of an analytic function sampled on |W| = r.
template <class F>
std::vector<cplx> dft_coefficients(F&& fn, int K, int S, double r) {
  std::vector<cplx> vals(S);
  for (int s = 0; s < S; ++s) vals[s] = fn(std::polar(r, 2.0 * std::numbers::pi * s / S));
  std::vector<cplx> out(K + 1);
  for (int k = 0; k <= K; ++k) {
    cplx acc = 0.0;
    for (int s = 0; s < S; ++s) acc += vals[s] * std::polar(1.0, -2.0 * std::numbers::pi * k * s / S);
    out[k] = acc / (static_cast<double>(S) * std::pow(r, k));
  }
  return out;
}

// Applies the level-k A-step numerator to coefficients h_i.
std::vector<cplx> apply_operator(const TrfModel& model, int k, const std::vector<cplx>& h) {
  std::vector<cplx> out(h.size());
  const TrfLevel& L = model.levels[k];
  for (std::size_t i = 0; i < h.size(); ++i)
    out[i] = h[i] * static_cast<double>(trf_a_numerator(L, model.Q, static_cast<long double>(i)));
  return out;
}

std::vector<cplx> level0_coefficients(const TrfModel& model, int K) {
  const std::vector<double> e = gauss_2f1_terms(model.f0_a, model.f0_b, model.f0_c, K);
  return std::vector<cplx>(e.begin(), e.end());
}

double assemble(const HeunParams& p, const IndicialRoot& r, Normalization c0, int n, double x, cplx Hn) {
  const auto [z, eta] = zeta_eta(p, x);
  (void)z;
  double pref = c0.c0 * std::pow(eta, n);
  if (r.lambda != 0.0) {
    if (x <= 0.0) throw Error(ErrorCode::NegativeBase, "integralform", "x <= 0 with non-integer lambda");
    pref *= std::pow(x, r.lambda);
  }
  return pref * Hn.real();
}

}  // namespace

double eval_subintegral_poly(const HeunParams& p, const IndicialRoot& r, Normalization c0, int n,
                             const std::vector<double>& caps, double x, const KernelEvalConfig& cfg,
                             TrfVariant variant, const std::vector<double>& beta_caps) {
  if (n < 0 || n > 3) throw Error(ErrorCode::UnsupportedDepth, "integralform", "polynomial depth must be 0..3");
  if (variant == TrfVariant::InfiniteSeries)
    throw std::invalid_argument("integralform: eval_subintegral_poly needs a polynomial variant");
  auto to_int = [](const std::vector<double>& v) {
    std::vector<int> out;
    for (double c : v) {
      if (!(c >= 0.0) || !is_integer(c))
        throw Error(ErrorCode::NonIntegerCap, "integralform", "cap " + std::to_string(c) + " is not a nonnegative integer");
      out.push_back(static_cast<int>(std::lround(c)));
    }
    return out;
  };
  SubSeriesSpec spec;
  spec.m = n;
  spec.variant = variant;
  spec.index_caps = to_int(caps);
  if (variant == TrfVariant::PolyBTerm_B) spec.beta_caps = to_int(beta_caps);
  const TrfModel model = make_trf_model(p, r, spec);
  const double z = zeta_eta(p, x).first;

  std::vector<cplx> h = level0_coefficients(model, model.levels[0].cap);
  if (n == 0) {
    cplx H0 = 0.0;
    for (std::size_t i = h.size(); i-- > 0;) H0 = H0 * z + h[i];
    return assemble(p, r, c0, n, x, H0);
  }
  for (int l = 1; l <= n; ++l) {
    const TrfLevel& L = model.levels[l];
    const NodeGrid grid = level_grid(L, cfg);
    const std::vector<cplx> phi = apply_operator(model, l - 1, h);
    auto H = [&](cplx W) { return poly_level_value(L, grid, phi, W); };
    if (l == n) return assemble(p, r, c0, n, x, H(cplx(z)));
    h = dft_coefficients(H, L.cap, std::max(L.cap + 1, 8), cfg.dft_radius);
  }
  return 0.0;
}

double eval_subintegral_infinite_structural(const HeunParams& p, const IndicialRoot& r, Normalization c0, int n,
                                            double x, int I_max, const KernelEvalConfig& cfg) {
  if (n < 0 || n > 2) throw Error(ErrorCode::UnsupportedDepth, "integralform", "infinite-series depth must be 0..2");
  SubSeriesSpec spec;
  spec.m = n;
  spec.I_max = I_max;
  const TrfModel model = make_trf_model(p, r, spec);
  const double z = zeta_eta(p, x).first;
  if (n == 0) return assemble(p, r, c0, n, x, cplx(gauss_2f1(model.f0_a, model.f0_b, model.f0_c, z, cfg.tol)));

  std::vector<cplx> h = level0_coefficients(model, I_max);
  for (int l = 1; l <= n; ++l) {
    const TrfLevel& L = model.levels[l];
    h = infinite_level_coeffs(L, level_grid(L, cfg), apply_operator(model, l - 1, h), I_max);
  }
  cplx Hn = 0.0;
  for (std::size_t i = h.size(); i-- > 0;) Hn = Hn * z + h[i];
  return assemble(p, r, c0, n, x, Hn);
}

}  // namespace heunkit
