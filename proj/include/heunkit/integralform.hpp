#pragma once

#include <array>
#include <complex>
#include <vector>

#include "heunkit/params.hpp"
#include "heunkit/series3trf.hpp"

namespace heunkit {

using cplx = std::complex<double>;

struct KernelEvalConfig {
  int quad_order_t = 32;
  int quad_order_u = 32;
  int laurent_cap = 64;      // highest Taylor order kept in the v expansions
  double tol = 1e-15;
  double dft_radius = 0.6;   // radius of the W circle for coefficient extraction (polynomial case)
};

// Beta integrals B(c, j+1) over t and u that turn the denominators into integrals.
struct BetaCheck {
  double lhs_t = 0, rhs_t = 0;  // B(i_prev + l/2 + lambda/2, j+1)
  double lhs_u = 0, rhs_u = 0;  // B(i_prev + l/2 - 1/2 + gamma/2 + lambda/2, j+1)
};

double beta_quadrature(double x, double y, int order = 32);
double beta_function(double x, double y);

// Errors: DivergentIntegral when an exponent is <= -1.
BetaCheck beta_kernel_identity_check(int i_prev, int l, int j, const HeunParams& p, const IndicialRoot& r,
                                     const KernelEvalConfig& cfg = {});

// Operator (w^{-s} (w d/dw) w^{s} (w d/dw + Omega) + Q) applied term-wise, s = (level + lambda)/2.
struct OperatorWeights {
  double lambda = 0.0;
  double Omega = 0.0;
  double Q = 0.0;
  int level = 0;
  double s() const { return 0.5 * (level + lambda); }
};

struct SeriesParams2F1 {
  double a = 0, b = 0, c = 1;
};

// sum_k [(k+s)(k+Omega)+Q] e_k w^k for e_k the 2F1 Taylor coefficients. Errors: NoConvergence.
double operator_weighted_2f1(double w, const OperatorWeights& weights, const SeriesParams2F1& f, double tol = 1e-15);
cplx operator_weighted_2f1(cplx w, const OperatorWeights& weights, const SeriesParams2F1& f, double tol = 1e-15);

// Truncated Laurent series sum_{k=lo}^{lo+c.size()-1} c_k v^k.
struct Laurent {
  int lo = 0;
  std::vector<cplx> c;
  cplx coeff(int k) const;
};
Laurent laurent_mul(const Laurent& x, const Laurent& y, int hi);

// Coefficient of v^{-1} in (1/v) (1 - 1/v)^N (1 - Z v)^{-b}, N >= 0 an integer.
cplx contour_residue(int N, double b, cplx Z, int laurent_cap = 64);

// Level-l kernels between consecutive nested indices, for l >= 1:
//   sum_{i >= i_prev}^{cap_l} [level-l ratio from i_prev to i] z^i / (c1 c2)
// (the alpha-capped form for PolyBTerm_S, the alpha/beta-capped form for
// PolyBTerm_B, the I_max-truncated infinite form otherwise).
double kernel_pochhammer_sum(const TrfModel& model, int l, int i_prev, double z);
// Same kernel from the t,u Beta integrals with the residue in v (polynomial)
// or the Gauss series (infinite) as the inner factor.
double kernel_integral(const TrfModel& model, int l, int i_prev, double z, const KernelEvalConfig& cfg = {});

// w_{i,j} chain for one node tuple. tuv lists (t_i, u_i, v_i) from level n down to 1;
// returns w_{n,n}, w_{n-1,n}, ..., w_{1,n}.
struct WChain {
  std::vector<cplx> level_values;
};
WChain w_chain(cplx z, const std::vector<std::array<cplx, 3>>& tuv);

// Polynomial (B-terminated) sub-term y_n, n <= 3, via Beta quadrature and the v residue.
// Errors: UnsupportedDepth, NonIntegerCap, DivergentIntegral and the series3trf errors.
double eval_subintegral_poly(const HeunParams& p, const IndicialRoot& r, Normalization c0, int n,
                             const std::vector<double>& caps, double x, const KernelEvalConfig& cfg = {},
                             TrfVariant variant = TrfVariant::PolyBTerm_S,
                             const std::vector<double>& beta_caps = {});

// Infinite-series sub-term y_n, n <= 2, with the Gauss-series kernel in place of the contour,
// expanded term-wise so that every nested index stays below I_max as in the series form.
double eval_subintegral_infinite_structural(const HeunParams& p, const IndicialRoot& r, Normalization c0, int n,
                                            double x, int I_max, const KernelEvalConfig& cfg = {});

}  // namespace heunkit
