#include "heunkit/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "heunkit/errors.hpp"
#include "heunkit/params.hpp"

namespace heunkit {

namespace {

// Golub-Welsch on the Jacobi matrix of P_k^{(al,be)}, weight (1-x)^al (1+x)^be on [-1,1].
QuadRule golub_welsch(int n, double al, double be) {
  if (n < 1) throw std::invalid_argument("quadrature: order must be >= 1");
  if (!(al > -1.0) || !(be > -1.0))
    throw Error(ErrorCode::DivergentIntegral, "integralform", "Jacobi exponents must exceed -1");
  const double ab = al + be;
  Eigen::VectorXd diag(n), sub(n > 1 ? n - 1 : 1);
  diag(0) = (be - al) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double t = 2.0 * k + ab;
    diag(k) = (be * be - al * al) / (t * (t + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double t = 2.0 * k + ab;
    double b2;
    if (k == 1)
      b2 = 4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    else
      b2 = 4.0 * k * (k + al) * (k + be) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0));
    sub(k - 1) = std::sqrt(b2);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::ComputeEigenvectors);
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(al + 1.0) + std::lgamma(be + 1.0) -
                              std::lgamma(ab + 2.0));
  QuadRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    const double v0 = es.eigenvectors()(0, k);
    r.nodes[k] = es.eigenvalues()(k);
    r.weights[k] = mu0 * v0 * v0;
  }
  return r;
}

QuadRule to_unit(const QuadRule& r, double al, double be) {
  // t = (1+x)/2; (1-x)^al (1+x)^be dx = 2^{al+be+1} (1-t)^al t^be dt
  QuadRule out = r;
  const double scale = std::pow(2.0, -(al + be + 1.0));
  for (std::size_t k = 0; k < r.nodes.size(); ++k) {
    out.nodes[k] = 0.5 * (1.0 + r.nodes[k]);
    out.weights[k] = r.weights[k] * scale;
  }
  return out;
}

std::mutex cache_mutex;
std::map<std::tuple<int, double, double>, QuadRule> cache;

const QuadRule& cached_jacobi(int n, double e, double f) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto key = std::make_tuple(n, e, f);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, to_unit(golub_welsch(n, f, e), f, e)).first;
  return it->second;
}

}  // namespace

QuadRule gauss_legendre01(int n) { return cached_jacobi(n, 0.0, 0.0); }

QuadRule gauss_jacobi01(int n, double e, double f) { return cached_jacobi(n, e, f); }

QuadRule weighted_rule01(int n, double e) {
  if (!(e > -1.0)) throw Error(ErrorCode::DivergentIntegral, "integralform", "weight exponent <= -1");
  if (e >= 0.0 && is_integer(e)) {
    QuadRule r = gauss_legendre01(n);
    const int k = static_cast<int>(std::lround(e));
    for (std::size_t i = 0; i < r.nodes.size(); ++i) r.weights[i] *= std::pow(r.nodes[i], k);
    return r;
  }
  return gauss_jacobi01(n, e);
}

}  // namespace heunkit
